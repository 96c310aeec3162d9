#pragma once
// Brute-force reference computations used only by the tests.  These count
// critical points of the boundary squared-distance function by direct means
// that share no code with the library implementation: an exact piecewise
// walk around polygon boundaries in the plane, and a piecewise-linear
// lower-link census of the radial distance field on a fixed fine sphere
// mesh in three dimensions.

#include <polynorm/geometry.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using polynorm::Mat;
using polynorm::Polytope;
using polynorm::Vec;

// ---------------------------------------------------------------------------
// Plane: exact count of boundary distance extrema for a convex polygon.

// Vertices of a 2-polytope in counterclockwise order around the centroid.
inline std::vector<Vec> polygon_cycle(const Polytope& P) {
  std::vector<Vec> vs;
  for (int i = 0; i < P.num_vertices(); ++i) vs.push_back(P.vertex(i));
  Vec c = Vec::Zero(2);
  for (const Vec& v : vs) c += v;
  c /= static_cast<double>(vs.size());
  std::sort(vs.begin(), vs.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return vs;
}

struct PolygonCount {
  int count = 0;      // extrema of the boundary distance = critical points
  bool clean = true;  // false when a foot or vertex slope is too close to a tie
};

// Walks the boundary cycle once.  On each edge the squared distance is an
// exact parabola: an interior foot is a local minimum.  At each vertex the
// one-sided slopes decide a local maximum.  (For a point inside a convex
// polygon a vertex can never be a local minimum: the two edge directions
// span an angle < pi, so the slopes cannot both point away.)
inline PolygonCount polygon_critical_count(const Polytope& P, const Vec& y,
                                           double band = 1e-7) {
  std::vector<Vec> cyc = polygon_cycle(P);
  const int m = static_cast<int>(cyc.size());
  PolygonCount out;
  for (int i = 0; i < m; ++i) {
    const Vec& a = cyc[i];
    const Vec& b = cyc[(i + 1) % m];
    Vec e = b - a;
    double t = e.dot(y - a) / e.squaredNorm();
    if (t > band && t < 1.0 - band) ++out.count;            // edge minimum
    else if (t > -band && t < 1.0 + band) out.clean = false;  // foot at a vertex

    const Vec& p = cyc[(i + m - 1) % m];
    double slope_in = (a - p).dot(a - y);   // SQD slope arriving at a
    double slope_out = (b - a).dot(a - y);  // SQD slope leaving a
    if (std::abs(slope_in) < band * (a - p).norm() ||
        std::abs(slope_out) < band * (b - a).norm())
      out.clean = false;
    if (slope_in > 0 && slope_out < 0) ++out.count;  // vertex maximum
  }
  return out;
}

// ---------------------------------------------------------------------------
// Space: lower-link census of the radial distance field on a sphere mesh.

struct SphereMesh {
  std::vector<Vec> verts;                  // unit vectors
  std::vector<std::array<int, 3>> tris;    // triangle indices
  std::vector<std::vector<int>> rings;     // per vertex: neighbors in cyclic order
};

namespace detail {

inline int midpoint(std::map<std::pair<int, int>, int>& cache, std::vector<Vec>& vs,
                    int a, int b) {
  auto key = std::minmax(a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Vec m = (vs[a] + vs[b]).normalized();
  vs.push_back(m);
  int id = static_cast<int>(vs.size()) - 1;
  cache[key] = id;
  return id;
}

}  // namespace detail

// Icosahedron subdivided `level` times, then rotated by a fixed generic
// rotation so mesh symmetries never align with test polytopes.
inline SphereMesh icosphere(int level) {
  SphereMesh mesh;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double raw[12][3] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (const auto& r : raw) {
    Vec v(3);
    v << r[0], r[1], r[2];
    mesh.verts.push_back(v.normalized());
  }
  mesh.tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.tris.size() * 4);
    for (const auto& t : mesh.tris) {
      int ab = detail::midpoint(cache, mesh.verts, t[0], t[1]);
      int bc = detail::midpoint(cache, mesh.verts, t[1], t[2]);
      int ca = detail::midpoint(cache, mesh.verts, t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.tris = std::move(next);
  }

  // Fixed generic rotation (three Euler-like factors with irrational angles).
  Mat R = Mat::Identity(3, 3);
  const double angs[3] = {0.3741592653, 0.7182818284, 1.1415926535};
  for (int axis = 0; axis < 3; ++axis) {
    Mat A = Mat::Identity(3, 3);
    int i = (axis + 1) % 3, j = (axis + 2) % 3;
    A(i, i) = std::cos(angs[axis]);
    A(i, j) = -std::sin(angs[axis]);
    A(j, i) = std::sin(angs[axis]);
    A(j, j) = std::cos(angs[axis]);
    R = A * R;
  }
  for (Vec& v : mesh.verts) v = R * v;

  // Cyclic neighbor rings from the triangle fan around each vertex.
  std::vector<std::map<int, int>> succ(mesh.verts.size());
  for (const auto& t : mesh.tris) {
    succ[t[0]][t[1]] = t[2];
    succ[t[1]][t[2]] = t[0];
    succ[t[2]][t[0]] = t[1];
  }
  mesh.rings.resize(mesh.verts.size());
  for (size_t v = 0; v < mesh.verts.size(); ++v) {
    const auto& nx = succ[v];
    int start = nx.begin()->first;
    int cur = start;
    do {
      mesh.rings[v].push_back(cur);
      cur = nx.at(cur);
    } while (cur != start && mesh.rings[v].size() <= nx.size());
  }
  return mesh;
}

inline const SphereMesh& shared_icosphere(int level = 5) {
  static const SphereMesh mesh = icosphere(level);
  return mesh;
}

struct MeshCount {
  int minima = 0;
  int maxima = 0;
  int saddles = 0;   // from the sphere's Euler relation: minima + maxima - 2
  int count = 0;
  bool clean = true; // false when a feature's persistence is ambiguous
};

namespace detail {

// Deaths of the 0-dimensional sublevel-set persistence of a vertex field on
// the mesh graph (elder rule).  The component born at the global minimum
// never dies and is reported as infinite.
inline std::vector<double> sublevel_persistence(const SphereMesh& mesh,
                                                const std::vector<double>& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g[a] < g[b] || (g[a] == g[b] && a < b);
  });
  std::vector<int> parent(n, -1);  // -1 = not yet entered the filtration
  std::vector<int> birth(n, -1);   // root -> vertex where its component began
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<int> birth_pos(n, -1);
  std::vector<double> pers;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    parent[v] = v;
    birth[v] = v;
    birth_pos[v] = i;
    for (int u : mesh.rings[v]) {
      if (parent[u] == -1) continue;
      int ru = find(u), rv = find(v);
      if (ru == rv) continue;
      int young = birth_pos[ru] < birth_pos[rv] ? rv : ru;
      int older = birth_pos[ru] < birth_pos[rv] ? ru : rv;
      pers.push_back(g[v] - g[birth[young]]);
      parent[young] = older;  // birth data stays with the surviving root
    }
  }
  // Components alive at the end (one per connected component of the mesh).
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (!seen[r]) {
      seen[r] = 1;
      pers.push_back(std::numeric_limits<double>::infinity());
    }
  }
  return pers;
}

struct PersistenceSplit {
  int real = 0;
  bool clean = true;
};

// Features well above `hi` are real; features below `lo` are mesh-resolution
// noise (the piecewise-linear interpolation creates tiny spurious pairs along
// polytope ridges).  Anything in between makes the sample ambiguous.
inline PersistenceSplit split_persistence(const std::vector<double>& pers,
                                          double lo, double hi) {
  PersistenceSplit s;
  for (double p : pers) {
    if (p >= hi) ++s.real;
    else if (p > lo) s.clean = false;
  }
  return s;
}

}  // namespace detail

// Counts critical points of the boundary distance from y by evaluating the
// exact radial distance r(u) of the polytope boundary at every mesh vertex
// and persistence-filtering the resulting field: sublevel persistence of r
// counts the minima, of -r the maxima, and the Euler relation on the sphere
// fixes the (simple) saddle count as minima + maxima - 2.  Features whose
// persistence is comparable to the mesh resolution mark the sample unclean.
inline MeshCount mesh_critical_count(const Polytope& P, const Vec& y,
                                     const SphereMesh& mesh) {
  const size_t n = mesh.verts.size();
  std::vector<double> g(n), neg(n);
  for (size_t i = 0; i < n; ++i) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& H : P.facets) {
      double denom = H.normal.dot(mesh.verts[i]);
      if (denom > 1e-14) r = std::min(r, (H.offset - H.normal.dot(y)) / denom);
    }
    g[i] = r;
    neg[i] = -r;
  }
  double gmin = *std::min_element(g.begin(), g.end());
  double gmax = *std::max_element(g.begin(), g.end());
  double range = gmax - gmin;

  // Gray zone calibrated for the level-5 icosphere (edge length ~ 0.035):
  // ridge artifacts sit below ~2% of the field range, genuine features of
  // generic instances sit far above 8%.
  const double lo = 0.02 * range;
  const double hi = 0.08 * range;

  auto mins = detail::split_persistence(detail::sublevel_persistence(mesh, g), lo, hi);
  auto maxs = detail::split_persistence(detail::sublevel_persistence(mesh, neg), lo, hi);

  MeshCount out;
  out.minima = mins.real;
  out.maxima = maxs.real;
  out.saddles = out.minima + out.maxima - 2;
  out.count = out.minima + out.saddles + out.maxima;
  out.clean = mins.clean && maxs.clean;
  return out;
}

// ---------------------------------------------------------------------------
// Space: exact enumeration of boundary distance criticals from the raw
// halfspace data alone (no face lattice, no mesh).

struct RegionCount {
  int minima = 0;
  int saddles = 0;
  int maxima = 0;
  int count = 0;
  bool clean = true;     // false when any test falls inside the safety band
  bool euler_ok = true;  // minima - saddles + maxima == 2
};

// Brute-force plane-pair / plane-triple walk for three dimensions.  A facet
// carries a minimum of the boundary distance when the perpendicular foot of
// y is strictly feasible for every other constraint; an edge (the feasible
// part of a plane-pair line) carries a saddle when the foot of y on the line
// is strictly feasible; a feasible plane-triple point is a vertex, and it is
// a maximum when the squared distance decreases along all three incident
// edge directions.  For an interior y the transverse behaviour at facet and
// edge feet is forced by convexity, so feet need no slope tests.
inline RegionCount region_critical_count(const Polytope& P, const Vec& y,
                                         double band = 1e-7) {
  const int m = P.num_facets();
  RegionCount out;
  std::vector<Vec> a(m);
  std::vector<double> b(m), d(m);
  for (int i = 0; i < m; ++i) {
    a[i] = P.facets[i].normal;  // unit normals
    b[i] = P.facets[i].offset;
    d[i] = b[i] - a[i].dot(y);  // plane distances, positive for interior y
  }

  auto strictly_feasible = [&](const Vec& x, int s1, int s2, int s3) {
    for (int j = 0; j < m; ++j) {
      if (j == s1 || j == s2 || j == s3) continue;
      double s = b[j] - a[j].dot(x);
      if (std::abs(s) < band) out.clean = false;
      if (s < band) return false;
    }
    return true;
  };
  auto cross3 = [](const Vec& u, const Vec& v) {
    Vec w(3);
    w << u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0];
    return w;
  };

  for (int i = 0; i < m; ++i) {
    Vec foot = y + d[i] * a[i];
    if (strictly_feasible(foot, i, -1, -1)) ++out.minima;
  }

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double c = a[i].dot(a[j]);
      double det = 1.0 - c * c;
      if (det < 1e-12) continue;  // parallel planes meet in no line
      double ti = (d[i] - c * d[j]) / det;
      double tj = (d[j] - c * d[i]) / det;
      // The foot only carries a saddle when its offset from y lies in the
      // wedge spanned by the two outward normals; with a negative
      // coefficient the boundary still has a descent direction there.
      if (std::abs(ti) < band || std::abs(tj) < band) out.clean = false;
      if (ti < band || tj < band) continue;
      Vec foot = y + ti * a[i] + tj * a[j];
      if (strictly_feasible(foot, i, j, -1)) ++out.saddles;
    }

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d A;
        A.row(0) = a[i].transpose();
        A.row(1) = a[j].transpose();
        A.row(2) = a[k].transpose();
        if (std::abs(A.determinant()) < 1e-10) continue;
        Eigen::Vector3d rhs(b[i], b[j], b[k]);
        Vec z = A.partialPivLu().solve(rhs);
        if (!strictly_feasible(z, i, j, k)) continue;
        const int ids[3] = {i, j, k};
        bool is_max = true;
        for (int e = 0; e < 3 && is_max; ++e) {
          Vec t = cross3(a[ids[(e + 1) % 3]], a[ids[(e + 2) % 3]]);
          double tn = t.norm();
          if (tn < 1e-12) { out.clean = false; is_max = false; break; }
          t /= tn;
          double side = a[ids[e]].dot(t);
          if (std::abs(side) < 1e-10) { out.clean = false; is_max = false; break; }
          if (side > 0) t = -t;  // orient along the edge, away from plane e
          double slope = t.dot(z - y);
          if (std::abs(slope) < band) out.clean = false;
          if (slope > 0) is_max = false;
        }
        if (is_max) ++out.maxima;
      }

  out.count = out.minima + out.saddles + out.maxima;
  out.euler_ok = (out.minima - out.saddles + out.maxima) == 2;
  return out;
}

}  // namespace oracle
