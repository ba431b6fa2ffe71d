#pragma once

#include "ratmeta/qlinalg.hpp"
#include "ratmeta/rational.hpp"
#include "ratmeta/simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Closed halfspace {x : normal · x <= offset}.
struct Halfspace {
  QVec normal;
  Rat offset;
};

/// A face as a subset of hull vertices plus one rational outer direction that
/// is maximized exactly on the face.
struct Face {
  std::vector<size_t> vertex_indices;
  QVec direction;
};

/// V- and H-representation of a polytope. The halfspace list contains the
/// proper facet inequalities plus equality pairs pinning the affine hull, so
/// it cuts out the polytope exactly even in degenerate dimension.
struct Polytope {
  size_t dim = 0;  // ambient dimension
  std::vector<QVec> vertices;
  std::vector<Halfspace> halfspaces;
};

namespace detail {

inline bool in_convex_hull_of(const QVec& p, const std::vector<QVec>& pts) {
  if (pts.empty()) return false;
  size_t d = p.size();
  std::vector<QVec> rows(d + 1, QVec(pts.size(), Rat(0)));
  QVec rhs(d + 1, Rat(0));
  for (size_t j = 0; j < pts.size(); ++j) {
    for (size_t i = 0; i < d; ++i) rows[i][j] = pts[j][i];
    rows[d][j] = 1;
  }
  for (size_t i = 0; i < d; ++i) rhs[i] = p[i];
  rhs[d] = 1;
  return solve_equality_feasibility(rows, rhs).feasible;
}

inline std::vector<QVec> extreme_points(std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<QVec> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<QVec> others;
    others.reserve(pts.size() - 1);
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!in_convex_hull_of(pts[i], others)) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace detail

struct HullFaces {
  Polytope hull;
  std::vector<Face> strict_faces;  // all dimensions, facets down to vertices
};

/// Brute-force exact hull with all strict faces. Intended for desk-scale
/// inputs (tens of points, dimension <= 5).
inline HullFaces convex_hull_faces(const std::vector<QVec>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull_faces: no points");
  size_t d = points[0].size();
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("convex_hull_faces: mixed dimensions");

  HullFaces out;
  out.hull.dim = d;
  out.hull.vertices = detail::extreme_points(points);
  auto& verts = out.hull.vertices;
  size_t nv = verts.size();

  // affine hull basis: rows spanning span{p_i - p_0}
  std::vector<QVec> diffs;
  for (size_t i = 1; i < nv; ++i) {
    QVec v(d);
    for (size_t j = 0; j < d; ++j) v[j] = verts[i][j] - verts[0][j];
    diffs.push_back(std::move(v));
  }
  std::vector<QVec> basis = diffs;
  q_row_reduce(basis);
  size_t adim = basis.size();

  // equality pairs pinning the affine hull
  std::vector<QVec> basis_t(d, QVec(adim, Rat(0)));  // columns = basis vectors
  for (size_t i = 0; i < adim; ++i)
    for (size_t j = 0; j < d; ++j) basis_t[j][i] = basis[i][j];
  {
    std::vector<QVec> rows(adim, QVec(d, Rat(0)));
    for (size_t i = 0; i < adim; ++i) rows[i] = basis[i];
    for (const auto& nrm : q_nullspace(rows, d)) {
      Rat off = dot(nrm, verts[0]);
      out.hull.halfspaces.push_back({nrm, off});
      QVec neg(d);
      for (size_t j = 0; j < d; ++j) neg[j] = -nrm[j];
      out.hull.halfspaces.push_back({neg, -off});
    }
  }
  if (adim == 0) return out;  // a point has no strict face

  // coordinates within the affine hull
  std::vector<QVec> coords(nv);
  for (size_t i = 0; i < nv; ++i) {
    QVec rhs(d);
    for (size_t j = 0; j < d; ++j) rhs[j] = verts[i][j] - verts[0][j];
    auto x = q_solve(basis_t, rhs);
    if (!x) throw std::logic_error("convex_hull_faces: point outside affine hull");
    coords[i] = *x;
  }

  // facets: every adim-subset spanning a hyperplane whose side contains all points
  std::set<std::vector<size_t>> facet_sets;
  std::map<std::vector<size_t>, QVec> facet_normals;  // normals in coordinates
  std::vector<bool> sel(nv, false);
  std::fill(sel.begin(), sel.begin() + adim, true);
  std::vector<size_t> subset;
  do {
    subset.clear();
    for (size_t i = 0; i < nv; ++i)
      if (sel[i]) subset.push_back(i);
    if (adim == 1) {
      // hyperplane = the point itself
      QVec nrm{Rat(1)};
      int lo = 0, hi = 0;
      for (size_t i = 0; i < nv; ++i) {
        Rat diff = coords[i][0] - coords[subset[0]][0];
        if (diff > 0) hi = 1;
        if (diff < 0) lo = 1;
      }
      if (lo && hi) continue;
      if (hi) nrm[0] = -1;
      std::vector<size_t> tight;
      for (size_t i = 0; i < nv; ++i)
        if (coords[i][0] == coords[subset[0]][0]) tight.push_back(i);
      if (facet_sets.insert(tight).second) facet_normals[tight] = nrm;
      continue;
    }
    std::vector<QVec> rows;
    for (size_t i = 1; i < adim; ++i) {
      QVec v(adim);
      for (size_t j = 0; j < adim; ++j) v[j] = coords[subset[i]][j] - coords[subset[0]][j];
      rows.push_back(std::move(v));
    }
    auto ns = q_nullspace(rows, adim);
    if (ns.size() != 1) continue;  // not affinely independent
    QVec nrm = ns[0];
    Rat off = dot(nrm, coords[subset[0]]);
    int lo = 0, hi = 0;
    for (size_t i = 0; i < nv; ++i) {
      Rat v = dot(nrm, coords[i]) - off;
      if (v > 0) hi = 1;
      if (v < 0) lo = 1;
      if (lo && hi) break;
    }
    if (lo && hi) continue;
    if (hi)
      for (auto& x : nrm) x = -x;
    off = dot(nrm, coords[subset[0]]);
    std::vector<size_t> tight;
    for (size_t i = 0; i < nv; ++i)
      if (dot(nrm, coords[i]) == off) tight.push_back(i);
    if (facet_sets.insert(tight).second) facet_normals[tight] = nrm;
  } while (std::prev_permutation(sel.begin(), sel.end()));

  // close the facet tight-sets under intersection: that is the face lattice
  std::set<std::vector<size_t>> faces(facet_sets);
  for (;;) {
    std::set<std::vector<size_t>> fresh;
    for (const auto& a : faces)
      for (const auto& b : facet_sets) {
        std::vector<size_t> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        if (!inter.empty() && !faces.count(inter)) fresh.insert(inter);
      }
    if (fresh.empty()) break;
    faces.insert(fresh.begin(), fresh.end());
  }

  // lift a coordinate functional w to an ambient functional u: basisᵀ u = w
  auto lift = [&](const QVec& w) {
    auto u = q_solve(basis, w);
    if (!u) throw std::logic_error("convex_hull_faces: lift failed");
    return *u;
  };

  for (const auto& [tight, nrm] : facet_normals) {
    QVec u = lift(nrm);
    out.hull.halfspaces.push_back({u, dot(u, verts[tight[0]])});
  }

  for (const auto& fc : faces) {
    QVec w(adim, Rat(0));
    for (const auto& [tight, nrm] : facet_normals) {
      if (std::includes(tight.begin(), tight.end(), fc.begin(), fc.end()))
        for (size_t j = 0; j < adim; ++j) w[j] += nrm[j];
    }
    QVec u = lift(w);
    Face f;
    f.vertex_indices = fc;
    f.direction = u;
    // exactness check: the direction must pick out the face, no more, no less
    Rat mx = dot(u, verts[fc[0]]);
    for (size_t i = 0; i < nv; ++i) {
      Rat v = dot(u, verts[i]);
      bool member = std::binary_search(fc.begin(), fc.end(), i);
      if (member ? v != mx : v >= mx)
        throw std::logic_error("convex_hull_faces: face direction not extremal");
    }
    out.strict_faces.push_back(std::move(f));
  }
  std::sort(out.strict_faces.begin(), out.strict_faces.end(),
            [](const Face& a, const Face& b) { return a.vertex_indices < b.vertex_indices; });
  return out;
}

inline HullFaces convex_hull_faces_int(const std::vector<std::vector<Int>>& points) {
  std::vector<QVec> q;
  q.reserve(points.size());
  for (const auto& p : points) {
    QVec v(p.size());
    for (size_t i = 0; i < p.size(); ++i) v[i] = Rat(p[i]);
    q.push_back(std::move(v));
  }
  return convex_hull_faces(q);
}

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.dim != q.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<QVec> sums;
  sums.reserve(p.vertices.size() * q.vertices.size());
  for (const auto& a : p.vertices)
    for (const auto& b : q.vertices) {
      QVec s(p.dim);
      for (size_t i = 0; i < p.dim; ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  return convex_hull_faces(sums).hull;
}

inline Polytope scale_polytope(const Polytope& p, const Int& n) {
  std::vector<QVec> pts;
  pts.reserve(p.vertices.size());
  for (const auto& v : p.vertices) {
    QVec s(p.dim);
    for (size_t i = 0; i < p.dim; ++i) s[i] = v[i] * Rat(n);
    pts.push_back(std::move(s));
  }
  return convex_hull_faces(pts).hull;
}

inline bool polytope_contains(const Polytope& p, const QVec& x) {
  for (const auto& h : p.halfspaces)
    if (dot(h.normal, x) > h.offset) return false;
  return true;
}

/// All integer points of the polytope, lexicographically sorted.
inline std::vector<std::vector<Int>> lattice_points(const Polytope& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  size_t d = p.dim;
  std::vector<Int> lo(d), hi(d);
  for (size_t j = 0; j < d; ++j) {
    bool first = true;
    for (const auto& v : p.vertices) {
      // floor / ceil of the rational coordinate
      Int fl = numerator(v[j]) / denominator(v[j]);
      if (Rat(fl) > v[j]) fl -= 1;
      Int ce = fl;
      if (Rat(ce) < v[j]) ce += 1;
      if (first || fl < lo[j]) lo[j] = fl;
      if (first || ce > hi[j]) hi[j] = ce;
      first = false;
    }
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(d);
  std::function<void(size_t)> rec = [&](size_t j) {
    if (j == d) {
      QVec x(d);
      for (size_t i = 0; i < d; ++i) x[i] = Rat(cur[i]);
      if (polytope_contains(p, x)) out.push_back(cur);
      return;
    }
    for (Int v = lo[j]; v <= hi[j]; ++v) {
      cur[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace ratmeta
