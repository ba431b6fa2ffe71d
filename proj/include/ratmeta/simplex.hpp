#pragma once

#include "ratmeta/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Feasibility answer for {A x = b, x >= 0}. Exactly one of point/farkas is
/// set: a feasible point, or y with yᵀA <= 0 and yᵀb > 0 (Farkas witness).
struct EqFeasibility {
  bool feasible = false;
  QVec point;
  QVec farkas;
};

/// Phase-1 simplex with Bland's rule, exact rational arithmetic throughout.
inline EqFeasibility solve_equality_feasibility(std::vector<QVec> a, QVec b) {
  size_t m = a.size();
  size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("simplex: ragged matrix");
  if (b.size() != m) throw std::invalid_argument("simplex: rhs size");

  if (m == 0) return {true, QVec(n, Rat(0)), {}};

  std::vector<int> row_sign(m, 1);
  for (size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      row_sign[i] = -1;
      b[i] = -b[i];
      for (auto& x : a[i]) x = -x;
    }

  // tableau: n structural + m artificial columns, then rhs
  size_t total = n + m;
  std::vector<QVec> t(m, QVec(total + 1, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][total] = b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  // reduced-cost row for  min Σ artificials  (cost row = c − Σ basis rows)
  QVec cost(total + 1, Rat(0));
  for (size_t j = n; j < total; ++j) cost[j] = 1;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= total; ++j) cost[j] -= t[i][j];

  for (;;) {
    size_t enter = total;
    for (size_t j = 0; j < total; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == total) break;
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      Rat cur = t[i][total] / t[i][enter];
      Rat best = t[leave][total] / t[leave][enter];
      if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) throw std::logic_error("simplex: phase-1 unbounded");
    Rat piv = t[leave][enter];
    for (size_t j = 0; j <= total; ++j) t[leave][j] /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (size_t j = 0; j <= total; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Rat objective = -cost[total];
  EqFeasibility r;
  if (objective == 0) {
    r.feasible = true;
    r.point.assign(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
      if (basis[i] < n) r.point[basis[i]] = t[i][total];
  } else {
    // simplex multipliers, read off the artificial columns: y_i = 1 − cost[n+i]
    r.feasible = false;
    r.farkas.assign(m, Rat(0));
    for (size_t i = 0; i < m; ++i) r.farkas[i] = (Rat(1) - cost[n + i]) * row_sign[i];
  }
  return r;
}

/// lp_positive_meet answer. Feasible: coefficients over the generators whose
/// combination is strictly positive (strict) or nonnegative nonzero. Infeasible:
/// farkas y >= 0, y != 0, orthogonal to every generator (strictly positive y in
/// the non-strict case, which is what makes the certificate sound).
struct PositiveMeet {
  bool feasible = false;
  QVec coefficients;
  QVec farkas;
};

namespace detail {

inline void verify_positive_meet(const std::vector<QVec>& gens, size_t k, bool strict,
                                 const PositiveMeet& r) {
  if (r.feasible) {
    QVec x(k, Rat(0));
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = 0; j < k; ++j) x[j] += r.coefficients[i] * gens[i][j];
    if (strict) {
      for (const auto& v : x)
        if (v <= 0) throw std::logic_error("lp_positive_meet: bad feasible certificate");
    } else {
      bool nonzero = false;
      for (const auto& v : x) {
        if (v < 0) throw std::logic_error("lp_positive_meet: bad feasible certificate");
        if (v > 0) nonzero = true;
      }
      if (!nonzero) throw std::logic_error("lp_positive_meet: zero combination");
    }
  } else {
    bool nonzero = false;
    for (const auto& v : r.farkas) {
      if (v < 0) throw std::logic_error("lp_positive_meet: negative farkas entry");
      if (!strict && v == 0) throw std::logic_error("lp_positive_meet: non-strict farkas not positive");
      if (v != 0) nonzero = true;
    }
    if (!nonzero) throw std::logic_error("lp_positive_meet: zero farkas");
    for (const auto& g : gens)
      if (dot(r.farkas, g) != 0) throw std::logic_error("lp_positive_meet: farkas not orthogonal");
  }
}

}  // namespace detail

/// Decides whether span_R(generators) meets R_{>0}^K (strict) or
/// R_{>=0}^K \ {0} (non-strict), with a verified certificate either way.
/// Stiemke's alternative backs both directions.
inline PositiveMeet lp_positive_meet(const std::vector<QVec>& gens, size_t k, bool strict = true) {
  if (k < 1) throw std::invalid_argument("lp_positive_meet: K >= 1 required");
  for (const auto& g : gens)
    if (g.size() != k) throw std::invalid_argument("lp_positive_meet: generator length");

  size_t mgen = gens.size();
  PositiveMeet r;
  if (mgen == 0) {
    r.feasible = false;
    r.farkas.assign(k, Rat(1));
    detail::verify_positive_meet(gens, k, strict, r);
    return r;
  }

  // primal: columns are λ⁺ (m), λ⁻ (m), surplus s (k)
  auto primal_rows = [&](bool with_sum_row) {
    std::vector<QVec> rows;
    QVec rhs;
    for (size_t j = 0; j < k; ++j) {
      QVec row(2 * mgen + k, Rat(0));
      for (size_t i = 0; i < mgen; ++i) {
        row[i] = gens[i][j];
        row[mgen + i] = -gens[i][j];
      }
      row[2 * mgen + j] = -1;
      rows.push_back(std::move(row));
      rhs.push_back(strict ? Rat(1) : Rat(0));
    }
    if (with_sum_row) {
      QVec row(2 * mgen + k, Rat(0));
      for (size_t i = 0; i < mgen; ++i)
        for (size_t j = 0; j < k; ++j) {
          row[i] += gens[i][j];
          row[mgen + i] -= gens[i][j];
        }
      rows.push_back(std::move(row));
      rhs.push_back(Rat(1));
    }
    return std::pair{rows, rhs};
  };

  auto [rows, rhs] = primal_rows(!strict);
  auto primal = solve_equality_feasibility(rows, rhs);
  if (primal.feasible) {
    r.feasible = true;
    r.coefficients.assign(mgen, Rat(0));
    for (size_t i = 0; i < mgen; ++i)
      r.coefficients[i] = primal.point[i] - primal.point[mgen + i];
    detail::verify_positive_meet(gens, k, strict, r);
    return r;
  }

  // dual side: y >= 0 (or y >= 1), Gᵀ y = 0, normalized
  std::vector<QVec> drows;
  QVec drhs;
  for (size_t i = 0; i < mgen; ++i) {
    QVec row(k, Rat(0));
    for (size_t j = 0; j < k; ++j) row[j] = gens[i][j];
    drows.push_back(std::move(row));
    drhs.push_back(Rat(0));
  }
  if (strict) {
    QVec row(k, Rat(1));
    drows.push_back(std::move(row));
    drhs.push_back(Rat(1));
    auto dual = solve_equality_feasibility(drows, drhs);
    if (!dual.feasible) throw std::logic_error("lp_positive_meet: both alternatives infeasible");
    r.farkas = dual.point;
  } else {
    // y = 1 + u, u >= 0:  Gᵀ u = −Gᵀ·1
    for (size_t i = 0; i < mgen; ++i) {
      Rat s = 0;
      for (size_t j = 0; j < k; ++j) s += gens[i][j];
      drhs[i] = -s;
    }
    auto dual = solve_equality_feasibility(drows, drhs);
    if (!dual.feasible) throw std::logic_error("lp_positive_meet: both alternatives infeasible");
    r.farkas.assign(k, Rat(0));
    for (size_t j = 0; j < k; ++j) r.farkas[j] = Rat(1) + dual.point[j];
  }
  r.feasible = false;
  auto prim = primitive_integer(r.farkas);
  for (size_t j = 0; j < k; ++j) r.farkas[j] = Rat(prim[j]);
  detail::verify_positive_meet(gens, k, strict, r);
  return r;
}

}  // namespace ratmeta
