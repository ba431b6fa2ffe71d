#pragma once

#include "ratmeta/matrix.hpp"
#include "ratmeta/polytope.hpp"
#include "ratmeta/rational.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Canonical representative of an open ray v·R_{>0}: coprime integer entries,
/// orientation preserved. Rays and their negatives are distinct directions.
struct Direction {
  std::vector<Int> v;

  bool operator==(const Direction& o) const { return v == o.v; }
  bool operator<(const Direction& o) const { return v < o.v; }
};

inline Direction make_direction(std::vector<Int> v) {
  Int g = 0;
  bool nonzero = false;
  for (const auto& x : v) {
    g = boost::multiprecision::gcd(g, x);
    if (x != 0) nonzero = true;
  }
  if (!nonzero) throw std::invalid_argument("Direction: zero vector");
  if (g > 1)
    for (auto& x : v) x /= g;
  return Direction{std::move(v)};
}

inline Rat direction_dot(const Direction& d, const std::vector<Int>& a) {
  if (d.v.size() != a.size()) throw std::invalid_argument("direction_dot: length mismatch");
  Int acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += d.v[i] * a[i];
  return Rat(acc);
}

namespace detail {

/// Normal of a line/hyperplane, deduplicated up to sign: coprime entries with
/// the last nonzero entry positive.
inline std::vector<Int> canonical_normal(std::vector<Int> v) {
  Int g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (*it == 0) continue;
    if (*it < 0)
      for (auto& x : v) x = -x;
    break;
  }
  return v;
}

inline std::vector<Int> to_int_vec(const QVec& q) { return primitive_integer(q); }

// 2D helpers on integer vectors
inline Int cross2(const std::vector<Int>& a, const std::vector<Int>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

inline int angle_half(const std::vector<Int>& a) {
  if (a[1] > 0 || (a[1] == 0 && a[0] > 0)) return 0;  // [0, pi)
  return 1;
}

inline bool angle_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  int ha = angle_half(a), hb = angle_half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

/// Sorted rays of a central arrangement in the plane -> one representative per
/// open sector plus the rays themselves.
inline std::vector<std::vector<Int>> plane_cells(std::vector<std::vector<Int>> rays) {
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  if (rays.empty()) return {{Int(1), Int(0)}};
  if (rays.size() == 1) throw std::logic_error("plane_cells: single ray arrangement");
  std::sort(rays.begin(), rays.end(), angle_less);
  std::vector<std::vector<Int>> cells = rays;
  for (size_t i = 0; i < rays.size(); ++i) {
    const auto& r1 = rays[i];
    const auto& r2 = rays[(i + 1) % rays.size()];
    Int cr = cross2(r1, r2);
    std::vector<Int> rep;
    if (cr > 0) {
      rep = {r1[0] + r2[0], r1[1] + r2[1]};
    } else {
      // sector spanning half a turn or more: quarter-turn into it
      rep = {-r1[1], r1[0]};
    }
    Int g = boost::multiprecision::gcd(rep[0], rep[1]);
    if (g > 1) {
      rep[0] /= g;
      rep[1] /= g;
    }
    cells.push_back(std::move(rep));
  }
  return cells;
}

/// Boundary rays contributed by one polytope's normal fan in the plane.
inline void fan_rays_2d(const Polytope& p, std::vector<std::vector<Int>>& rays) {
  if (p.vertices.size() < 2) return;
  // segment: argmax flips across the orthogonal line
  std::vector<QVec> diffs;
  for (size_t i = 1; i < p.vertices.size(); ++i)
    diffs.push_back({p.vertices[i][0] - p.vertices[0][0], p.vertices[i][1] - p.vertices[0][1]});
  if (q_rank(diffs) == 1) {
    auto u = to_int_vec(diffs[0]);
    rays.push_back(canonical_normal({-u[1], u[0]}));
    auto neg = rays.back();
    neg[0] = -neg[0];
    neg[1] = -neg[1];
    rays.push_back(std::move(neg));
    return;
  }
  // full-dimensional: edge outer normals
  auto hf = convex_hull_faces(p.vertices);
  for (const auto& f : hf.strict_faces)
    if (f.vertex_indices.size() >= 2) rays.push_back(to_int_vec(f.direction));
}

}  // namespace detail

/// One representative direction per cell (of every dimension) of the common
/// refinement of the normal fans of the given polytopes with the central
/// hyperplane arrangement {v : v · a = 0}. M_v-type argmax sets and
/// orthogonality predicates against the inputs are constant on each cell.
/// Supports n <= 3.
inline std::vector<Direction> direction_cells(const std::vector<Polytope>& polys,
                                              const std::vector<std::vector<Int>>& normals,
                                              size_t n) {
  if (n < 1) throw std::invalid_argument("direction_cells: n >= 1 required");
  if (n > 3) throw unsupported_error("direction_cells: n > 3 not supported");
  for (const auto& p : polys)
    if (p.dim != n) throw std::invalid_argument("direction_cells: polytope dimension");
  for (const auto& a : normals)
    if (a.size() != n) throw std::invalid_argument("direction_cells: normal length");

  std::set<Direction> out;
  if (n == 1) {
    out.insert(make_direction({Int(1)}));
    out.insert(make_direction({Int(-1)}));
    return {out.begin(), out.end()};
  }

  if (n == 2) {
    std::vector<std::vector<Int>> rays;
    for (const auto& p : polys) detail::fan_rays_2d(p, rays);
    for (const auto& a : normals) {
      if (a[0] == 0 && a[1] == 0) continue;
      std::vector<Int> perp{-a[1], a[0]};
      rays.push_back(detail::canonical_normal(perp));
      auto neg = rays.back();
      neg[0] = -neg[0];
      neg[1] = -neg[1];
      rays.push_back(std::move(neg));
    }
    for (auto& r : rays) r = make_direction(std::move(r)).v;
    for (auto& c : detail::plane_cells(std::move(rays))) out.insert(make_direction(std::move(c)));
    return {out.begin(), out.end()};
  }

  // n == 3: refine by the full central plane arrangement spanned by all
  // vertex differences and the given normals. This refines the fan common
  // refinement, so every true cell still gets a representative.
  std::set<std::vector<Int>> planes;
  for (const auto& p : polys)
    for (size_t i = 0; i < p.vertices.size(); ++i)
      for (size_t j = i + 1; j < p.vertices.size(); ++j) {
        QVec d(3);
        for (size_t c = 0; c < 3; ++c) d[c] = p.vertices[i][c] - p.vertices[j][c];
        planes.insert(detail::canonical_normal(detail::to_int_vec(d)));
      }
  for (const auto& a : normals) {
    bool nonzero = false;
    for (const auto& x : a) nonzero |= (x != 0);
    if (nonzero) planes.insert(detail::canonical_normal(a));
  }
  std::vector<std::vector<Int>> pl(planes.begin(), planes.end());
  if (pl.empty()) return {make_direction({Int(1), Int(0), Int(0)})};

  auto cross3 = [](const std::vector<Int>& a, const std::vector<Int>& b) {
    return std::vector<Int>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                            a[0] * b[1] - a[1] * b[0]};
  };

  // 1-cells: pairwise plane intersections
  for (size_t i = 0; i < pl.size(); ++i)
    for (size_t j = i + 1; j < pl.size(); ++j) {
      auto c = cross3(pl[i], pl[j]);
      if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
      out.insert(make_direction(c));
      for (auto& x : c) x = -x;
      out.insert(make_direction(c));
    }

  // 2-cells: sectors within each plane, cut by the other planes
  for (size_t i = 0; i < pl.size(); ++i) {
    IntMatrix nm(1, 3);
    for (size_t c = 0; c < 3; ++c) nm(0, c) = pl[i][c];
    IntMatrix kb = integer_kernel(nm);
    if (kb.rows() != 2) throw std::logic_error("direction_cells: plane basis");
    std::vector<Int> u{kb(0, 0), kb(0, 1), kb(0, 2)}, w{kb(1, 0), kb(1, 1), kb(1, 2)};
    std::vector<std::vector<Int>> inplane;
    for (size_t j = 0; j < pl.size(); ++j) {
      if (j == i) continue;
      auto c = cross3(pl[i], pl[j]);
      if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
      // c = alpha u + beta w, exactly
      std::vector<QVec> rows(3, QVec(2));
      QVec rhs(3);
      for (size_t r = 0; r < 3; ++r) {
        rows[r][0] = Rat(u[r]);
        rows[r][1] = Rat(w[r]);
        rhs[r] = Rat(c[r]);
      }
      auto ab = q_solve(rows, rhs);
      if (!ab) throw std::logic_error("direction_cells: in-plane coordinates");
      auto iv = primitive_integer(*ab);
      inplane.push_back({iv[0], iv[1]});
      inplane.push_back({-iv[0], -iv[1]});
    }
    if (inplane.empty()) {
      out.insert(make_direction(u));
      continue;
    }
    for (auto& r : inplane) r = make_direction(std::move(r)).v;
    std::sort(inplane.begin(), inplane.end());
    inplane.erase(std::unique(inplane.begin(), inplane.end()), inplane.end());
    std::sort(inplane.begin(), inplane.end(), detail::angle_less);
    for (size_t k = 0; k < inplane.size(); ++k) {
      const auto& r1 = inplane[k];
      const auto& r2 = inplane[(k + 1) % inplane.size()];
      Int cr = detail::cross2(r1, r2);
      std::vector<Int> rep2;
      if (cr > 0)
        rep2 = {r1[0] + r2[0], r1[1] + r2[1]};
      else
        rep2 = {-r1[1], r1[0]};
      std::vector<Int> v(3);
      for (size_t c = 0; c < 3; ++c) v[c] = rep2[0] * u[c] + rep2[1] * w[c];
      out.insert(make_direction(v));
    }
  }

  // 3-cells: regions of the arrangement are dual to the vertices of the
  // zonotope sum of the segments [-m, m]; an interior normal at a vertex is
  // the sum of the outer normals of its incident facets.
  Polytope zono;
  {
    std::vector<QVec> seg;
    for (int s : {-1, 1}) {
      QVec v(3);
      for (size_t c = 0; c < 3; ++c) v[c] = Rat(pl[0][c] * s);
      seg.push_back(v);
    }
    zono = convex_hull_faces(seg).hull;
    for (size_t i = 1; i < pl.size(); ++i) {
      std::vector<QVec> seg2;
      for (int s : {-1, 1}) {
        QVec v(3);
        for (size_t c = 0; c < 3; ++c) v[c] = Rat(pl[i][c] * s);
        seg2.push_back(v);
      }
      zono = minkowski_sum(zono, convex_hull_faces(seg2).hull);
    }
  }
  for (const auto& z : zono.vertices) {
    QVec acc(3, Rat(0));
    for (const auto& h : zono.halfspaces)
      if (dot(h.normal, z) == h.offset) {
        auto nrm = primitive_integer(h.normal);
        for (size_t c = 0; c < 3; ++c) acc[c] += Rat(nrm[c]);
      }
    if (all_zero(acc)) throw std::logic_error("direction_cells: region representative vanished");
    out.insert(make_direction(primitive_integer(acc)));
  }

  return {out.begin(), out.end()};
}

}  // namespace ratmeta
