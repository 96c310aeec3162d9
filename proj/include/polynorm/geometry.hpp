#pragma once
// Convex polytopes in R^n (n >= 2) at desk scale: brute-force hull from a
// vertex list, full proper-face lattice for simple polytopes, affine-hull
// projections, relative-interior tests, face cones and a genericity check.

#include "polynorm/core.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <map>
#include <optional>

namespace polynorm {

struct Halfspace {
  Vec normal;      // unit outward normal
  double offset;   // <normal, x> <= offset
};

struct Face {
  int id = -1;
  int dim = 0;
  std::vector<int> facet_ids;      // facets containing the face (sorted)
  std::vector<int> vertex_ids;     // vertices of the face (sorted)
  Vec centroid;                    // relint point (vertex centroid)
  Mat tangent;                     // n x dim orthonormal basis of directions
  Mat normalsp;                    // n x (n-dim) orthonormal complement
  std::vector<int> out_vertex_ids; // vertices not on the face
  std::vector<int> out_facet_ids;  // facets not containing the face
};

struct Polytope {
  int n = 0;
  Mat verts;                                 // V x n, normalized coordinates
  std::vector<Halfspace> facets;
  std::vector<std::vector<int>> vertex_facets;  // per vertex, sorted facet ids
  std::vector<Face> faces;                      // proper faces, id = index
  std::vector<std::vector<int>> faces_by_dim;   // dim -> face ids
  std::vector<int> facet_face_id;               // facet index -> face id
  Vec input_center;                             // input frame: x = c + R*x'
  double input_scale = 1.0;

  int num_vertices() const { return static_cast<int>(verts.rows()); }
  int num_facets() const { return static_cast<int>(facets.size()); }
  Vec vertex(int i) const { return verts.row(i).transpose(); }

  Vec to_internal(const Vec& x) const {
    require(x.size() == n, Errc::invalid_input, "point dimension mismatch");
    return (x - input_center) / input_scale;
  }
  Vec to_input(const Vec& x) const {
    require(x.size() == n, Errc::invalid_input, "point dimension mismatch");
    return input_center + input_scale * x;
  }

  // Distance (in constraint units) from x to the nearest facet hyperplane,
  // positive inside.
  double interior_margin(const Vec& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& h : facets) m = std::min(m, h.offset - h.normal.dot(x));
    return m;
  }
  bool contains(const Vec& x, double slack = 0.0) const {
    return interior_margin(x) >= -slack;
  }

  const Face& facet_face(int facet_idx) const { return faces[facet_face_id[facet_idx]]; }

  // Euler-type alternating-sum check over proper faces: for the boundary
  // sphere the sum of (-1)^dim * #faces(dim) over 0..n-1 equals 1+(-1)^(n-1).
  bool euler_ok() const {
    long s = 0;
    for (int d = 0; d < n; ++d) {
      long c = static_cast<long>(faces_by_dim[d].size());
      s += (d % 2 == 0) ? c : -c;
    }
    return s == 1 + ((n - 1) % 2 == 0 ? 1 : -1);
  }
};

namespace detail {

inline std::vector<int> complement_ids(int total, const std::vector<int>& in) {
  std::vector<int> out;
  out.reserve(total - in.size());
  size_t j = 0;
  for (int i = 0; i < total; ++i) {
    if (j < in.size() && in[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

// Build the face lattice, bases and per-face caches of a polytope whose
// vertices, facets and incidence are already known and verified simple.
inline void build_lattice(Polytope& P, double tol) {
  const int n = P.n;
  const int V = P.num_vertices();

  std::map<std::vector<int>, std::vector<int>> face_map;  // facet set -> verts
  for (int v = 0; v < V; ++v) {
    const auto& fs = P.vertex_facets[v];
    const int k = static_cast<int>(fs.size());
    for (int size = 1; size <= k; ++size) {
      for_each_subset(k, size, [&](const std::vector<int>& pick) {
        std::vector<int> key(size);
        for (int i = 0; i < size; ++i) key[i] = fs[pick[i]];
        face_map[key].push_back(v);
      });
    }
  }

  // Deduplicate: distinct vertex subsets can induce the same facet set; the
  // map already merges them.  Sort faces by (dim desc handled below, key).
  P.faces.clear();
  P.faces_by_dim.assign(n, {});
  std::vector<std::pair<std::vector<int>, std::vector<int>>> items(
      face_map.begin(), face_map.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });

  P.facet_face_id.assign(P.num_facets(), -1);
  for (auto& [key, vlist] : items) {
    Face f;
    f.id = static_cast<int>(P.faces.size());
    f.dim = n - static_cast<int>(key.size());
    f.facet_ids = key;
    std::sort(vlist.begin(), vlist.end());
    vlist.erase(std::unique(vlist.begin(), vlist.end()), vlist.end());
    f.vertex_ids = vlist;

    Mat pts(f.vertex_ids.size(), n);
    for (size_t i = 0; i < f.vertex_ids.size(); ++i)
      pts.row(i) = P.verts.row(f.vertex_ids[i]);
    AffineBasis ab = affine_basis(pts, tol * 100);
    require(ab.rank == f.dim, Errc::degenerate_input,
            "face span rank mismatch (expected dim " + std::to_string(f.dim) +
                ", got " + std::to_string(ab.rank) + ")");
    f.centroid = ab.point;
    f.tangent = ab.tangent;
    f.normalsp = ab.normal;
    f.out_vertex_ids = complement_ids(V, f.vertex_ids);
    f.out_facet_ids = complement_ids(P.num_facets(), f.facet_ids);
    if (f.dim == n - 1) P.facet_face_id[key[0]] = f.id;
    P.faces_by_dim[f.dim].push_back(f.id);
    P.faces.push_back(std::move(f));
  }

  for (int h = 0; h < P.num_facets(); ++h)
    require(P.facet_face_id[h] >= 0, Errc::degenerate_input,
            "facet " + std::to_string(h) + " carries no vertices");
}

// Shared final assembly once vertices (any frame) + facet hyperplanes are
// known: normalize, compute incidence, verify simplicity, build the lattice.
inline Polytope assemble_polytope(const Mat& verts_in,
                                  std::vector<Halfspace> facets,
                                  double tol) {
  const int n = static_cast<int>(verts_in.cols());
  const int V = static_cast<int>(verts_in.rows());
  require(V >= n + 1, Errc::degenerate_input, "fewer than n+1 vertices");

  Polytope P;
  P.n = n;
  P.input_center = verts_in.colwise().mean().transpose();
  double R = 0.0;
  for (int i = 0; i < V; ++i)
    R = std::max(R, (verts_in.row(i).transpose() - P.input_center).norm());
  require(R > tol, Errc::degenerate_input, "zero circumradius");
  P.input_scale = R;

  P.verts.resize(V, n);
  for (int i = 0; i < V; ++i)
    P.verts.row(i) = ((verts_in.row(i).transpose() - P.input_center) / R).transpose();

  P.facets = std::move(facets);
  for (auto& h : P.facets) {
    h.offset = (h.offset - h.normal.dot(P.input_center)) / R;
    double nn = h.normal.norm();
    require(nn > tol, Errc::degenerate_input, "zero facet normal");
    h.offset /= nn;
    h.normal /= nn;
  }
  // Canonical facet order: lexicographic by normal then offset.
  std::sort(P.facets.begin(), P.facets.end(), [](const Halfspace& a, const Halfspace& b) {
    for (int i = 0; i < a.normal.size(); ++i) {
      if (a.normal[i] != b.normal[i]) return a.normal[i] < b.normal[i];
    }
    return a.offset < b.offset;
  });

  const double band = std::max(tol, 1e-12) * 100;  // membership band
  P.vertex_facets.assign(V, {});
  for (int v = 0; v < V; ++v) {
    for (int h = 0; h < P.num_facets(); ++h) {
      double r = P.facets[h].offset - P.facets[h].normal.dot(P.verts.row(v).transpose());
      require(r > -band, Errc::degenerate_input,
              "vertex outside a facet halfspace (residual " + std::to_string(r) + ")");
      if (std::abs(r) <= band) P.vertex_facets[v].push_back(h);
    }
    const int deg = static_cast<int>(P.vertex_facets[v].size());
    require(deg >= n, Errc::degenerate_input,
            "vertex on fewer than n facets (got " + std::to_string(deg) + ")");
    require(deg == n, Errc::not_simple,
            "vertex on " + std::to_string(deg) + " > n facets; polytope not simple");
  }

  build_lattice(P, tol);
  require(P.euler_ok(), Errc::degenerate_input, "face lattice fails the Euler check");
  return P;
}

}  // namespace detail

// Convex hull + face lattice from a point list (rows of `points`).  Points
// interior to the hull, or on the boundary but not extreme, are dropped.
// Throws degenerate_input when the points do not span R^n, not_simple when
// some hull vertex lies on more than n facets.
inline Polytope build_polytope(const Mat& points, double tol = 1e-9) {
  const int n = static_cast<int>(points.cols());
  int m = static_cast<int>(points.rows());
  require(n >= 2, Errc::degenerate_input, "ambient dimension must be >= 2");
  require(m >= n + 1, Errc::degenerate_input, "need at least n+1 points");
  for (int i = 0; i < m; ++i)
    require(points.row(i).allFinite(), Errc::invalid_input, "non-finite coordinate");

  // Deduplicate (scale-aware: tolerance relative to spread).
  double spread = 0.0;
  Vec mean = points.colwise().mean().transpose();
  for (int i = 0; i < m; ++i)
    spread = std::max(spread, (points.row(i).transpose() - mean).norm());
  require(spread > tol, Errc::degenerate_input, "all points coincide");
  const double dup_band = spread * 1e-12;
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) {
    bool dup = false;
    for (int j : keep)
      if ((points.row(i) - points.row(j)).norm() <= dup_band) { dup = true; break; }
    if (!dup) keep.push_back(i);
  }
  Mat pts(keep.size(), n);
  for (size_t i = 0; i < keep.size(); ++i) pts.row(i) = points.row(keep[i]);
  m = static_cast<int>(pts.rows());
  require(m >= n + 1, Errc::degenerate_input, "need at least n+1 distinct points");

  AffineBasis ab = affine_basis(pts, spread * 1e-9);
  require(ab.rank == n, Errc::degenerate_input,
          "points span only " + std::to_string(ab.rank) + " of " + std::to_string(n) +
              " dimensions");

  require(binomial(m, n) <= 5e6, Errc::invalid_input,
          "too many points for brute-force hull at this dimension");

  // Pass 1: candidate supporting hyperplanes through n-point subsets.
  std::vector<Halfspace> planes;
  const double side_band = spread * 1e-9;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    Mat A(n - 1, n);
    for (int i = 1; i < n; ++i) A.row(i - 1) = pts.row(idx[i]) - pts.row(idx[0]);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    if (n >= 2 && svd.singularValues().size() == n - 1 &&
        svd.singularValues()(n - 2) <= spread * 1e-9)
      return;  // affinely dependent subset
    Vec normal = svd.matrixV().col(n - 1);
    double b = normal.dot(pts.row(idx[0]).transpose());
    // Supporting test over all points.
    int above = 0, below = 0;
    for (int i = 0; i < m; ++i) {
      double r = normal.dot(pts.row(i).transpose()) - b;
      if (r > side_band) ++above;
      else if (r < -side_band) ++below;
      if (above && below) return;
    }
    if (above) { normal = -normal; b = -b; }
    // Deduplicate against found planes.
    for (const auto& h : planes)
      if (h.normal.dot(normal) > 1.0 - 1e-9 && std::abs(h.offset - b) <= side_band * 10)
        return;
    planes.push_back({normal, b});
  });
  require(!planes.empty(), Errc::degenerate_input, "no supporting hyperplanes found");

  // Pass 2: refit each plane on its full incident point set (robust for
  // non-simplicial facets), then re-deduplicate.
  std::vector<Halfspace> refit;
  for (const auto& h : planes) {
    std::vector<int> on;
    for (int i = 0; i < m; ++i)
      if (std::abs(h.normal.dot(pts.row(i).transpose()) - h.offset) <= side_band * 10)
        on.push_back(i);
    if (static_cast<int>(on.size()) < n) continue;
    Mat sub(on.size(), n);
    for (size_t i = 0; i < on.size(); ++i) sub.row(i) = pts.row(on[i]);
    AffineBasis fb = affine_basis(sub, spread * 1e-9);
    if (fb.rank != n - 1) continue;
    Vec normal = fb.normal.col(0);
    double b = normal.dot(fb.point);
    double lo = 0, hi = 0;
    for (int i = 0; i < m; ++i) {
      double r = normal.dot(pts.row(i).transpose()) - b;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi > side_band * 10 && lo < -side_band * 10) continue;  // not supporting
    if (hi > side_band * 10) { normal = -normal; b = -b; }
    bool dup = false;
    for (const auto& g : refit)
      if (g.normal.dot(normal) > 1.0 - 1e-9 && std::abs(g.offset - b) <= side_band * 10) {
        dup = true;
        break;
      }
    if (!dup) refit.push_back({normal, b});
  }
  require(static_cast<int>(refit.size()) >= n + 1, Errc::degenerate_input,
          "hull has fewer than n+1 facets");

  // Hull vertices: points on >= n facets (points on more than n trigger the
  // simplicity error inside assemble_polytope).
  std::vector<int> vidx;
  for (int i = 0; i < m; ++i) {
    int deg = 0;
    for (const auto& h : refit)
      if (std::abs(h.normal.dot(pts.row(i).transpose()) - h.offset) <= side_band * 100)
        ++deg;
    if (deg >= n) vidx.push_back(i);
  }
  require(static_cast<int>(vidx.size()) >= n + 1, Errc::degenerate_input,
          "hull has fewer than n+1 vertices");
  Mat hull(vidx.size(), n);
  for (size_t i = 0; i < vidx.size(); ++i) hull.row(i) = pts.row(vidx[i]);

  return detail::assemble_polytope(hull, std::move(refit), tol);
}

// Convenience overload: points given as a list of column vectors.
inline Polytope build_polytope(int n, const std::vector<Vec>& points, double tol = 1e-9) {
  require(n >= 2, Errc::invalid_input, "ambient dimension must be >= 2");
  Mat pts(points.size(), n);
  for (size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == n, Errc::invalid_input, "point dimension mismatch");
    pts.row(i) = points[i].transpose();
  }
  return build_polytope(pts, tol);
}

// Direct construction when facet hyperplanes are known and trusted (e.g. the
// random generator, or JSON input carrying facets).  Vertices are verified
// against the halfspaces during assembly.
inline Polytope build_polytope_hrep(const Mat& verts, std::vector<Halfspace> facets,
                                    double tol = 1e-9) {
  return detail::assemble_polytope(verts, std::move(facets), tol);
}

// Halfspaces-only construction: enumerate candidate vertices as intersections
// of n facet hyperplanes and keep the feasible ones.  Rejects unbounded
// regions up front (bounded iff the outward normals positively span, i.e. do
// not fit in a closed half-sphere).  Redundant halfspaces — those whose
// contact with the intersection is empty or lower-dimensional — are dropped;
// intersections involving them are not vertices, so enumeration repeats on
// the surviving set until every hyperplane meets the body in a full facet.
inline Polytope build_polytope_hrep(int n, std::vector<Halfspace> halfspaces,
                                    double tol = 1e-9) {
  require(n >= 2, Errc::invalid_input, "ambient dimension must be >= 2");
  for (auto& h : halfspaces) {
    require(h.normal.size() == n, Errc::invalid_input, "halfspace dimension mismatch");
    require(h.normal.allFinite() && std::isfinite(h.offset), Errc::invalid_input,
            "non-finite halfspace");
    const double len = h.normal.norm();
    require(len > 1e-12, Errc::degenerate_input, "zero facet normal");
    h.normal /= len;
    h.offset /= len;
  }
  // Deduplicate coincident hyperplanes so the subset walk sees each once.
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces) {
    bool dup = false;
    for (const auto& g : hs)
      if (g.normal.dot(h.normal) > 1.0 - 1e-12 &&
          std::abs(g.offset - h.offset) <= 1e-9 * std::max(1.0, std::abs(g.offset))) {
        dup = true;
        break;
      }
    if (!dup) hs.push_back(h);
  }
  require(static_cast<int>(hs.size()) >= n + 1, Errc::degenerate_input,
          "need at least n+1 distinct halfspaces");
  require(binomial(static_cast<int>(hs.size()), n) <= 5e6, Errc::invalid_input,
          "too many halfspaces for brute-force vertex enumeration");

  {
    Mat normals(hs.size(), n);
    for (size_t i = 0; i < hs.size(); ++i) normals.row(i) = hs[i].normal.transpose();
    require(hemisphere_check(normals).margin < 0.0, Errc::degenerate_input,
            "facet normals fit in a half-sphere: the region is unbounded");
  }

  double off_scale = 1.0;
  for (const auto& h : hs) off_scale = std::max(off_scale, std::abs(h.offset));
  const double band = 1e-6 * off_scale;

  std::vector<Vec> cand;
  for (;;) {
    const int m = static_cast<int>(hs.size());
    require(m >= n + 1, Errc::degenerate_input,
            "fewer than n+1 irredundant halfspaces remain");
    require(binomial(m, n) <= 5e6, Errc::invalid_input,
            "too many halfspaces for brute-force vertex enumeration");

    cand.clear();
    std::vector<std::vector<int>> on(m);  // halfspace -> incident candidates
    for_each_subset(m, n, [&](const std::vector<int>& idx) {
      Mat A(n, n);
      Vec b(n);
      for (int i = 0; i < n; ++i) {
        A.row(i) = hs[idx[i]].normal.transpose();
        b[i] = hs[idx[i]].offset;
      }
      Eigen::FullPivLU<Mat> lu(A);
      lu.setThreshold(1e-9);
      if (lu.rank() < n) return;
      Vec x = lu.solve(b);
      if (!x.allFinite()) return;
      for (const auto& h : hs)
        if (h.normal.dot(x) > h.offset + band) return;
      for (size_t c = 0; c < cand.size(); ++c)
        if ((cand[c] - x).norm() <= band) {
          for (int i : idx) on[i].push_back(static_cast<int>(c));
          return;
        }
      cand.push_back(std::move(x));
      for (int i : idx) on[i].push_back(static_cast<int>(cand.size()) - 1);
    });
    require(static_cast<int>(cand.size()) >= n + 1, Errc::degenerate_input,
            "halfspace intersection has fewer than n+1 vertices");

    // Facet test: the vertices on a genuine facet span an (n-1)-flat.
    std::vector<Halfspace> keep;
    for (int i = 0; i < m; ++i) {
      std::sort(on[i].begin(), on[i].end());
      on[i].erase(std::unique(on[i].begin(), on[i].end()), on[i].end());
      if (static_cast<int>(on[i].size()) < n) continue;
      Mat pts(on[i].size(), n);
      for (size_t r = 0; r < on[i].size(); ++r) pts.row(r) = cand[on[i][r]].transpose();
      if (affine_basis(pts, band).rank == n - 1) keep.push_back(hs[i]);
    }
    if (static_cast<int>(keep.size()) == m) break;
    hs = std::move(keep);
  }

  Mat hull(cand.size(), n);
  for (size_t i = 0; i < cand.size(); ++i) hull.row(i) = cand[i].transpose();
  return detail::assemble_polytope(hull, std::move(hs), tol);
}

// ---------------------------------------------------------------------------
// Projections and relative interiors.

inline Vec project_to_affine_hull(const Polytope& P, int face_id, const Vec& y) {
  const Face& f = P.faces.at(face_id);
  return project_affine(y, f.centroid, f.tangent);
}

// z must lie on aff(F) (within tol), else not_in_affine_hull is thrown.
// For dim-0 faces the test is coincidence with the vertex within `margin`.
// Otherwise: strict satisfaction (by `margin`) of every facet constraint not
// containing F.  Returns the achieved margin through *out_margin if given.
inline bool in_relative_interior(const Polytope& P, int face_id, const Vec& z,
                                 double margin = 1e-9, double tol = 1e-9,
                                 double* out_margin = nullptr) {
  const Face& f = P.faces.at(face_id);
  double res = (f.normalsp.cols() > 0)
                   ? (f.normalsp.transpose() * (z - f.centroid)).cwiseAbs().maxCoeff()
                   : 0.0;
  if (f.dim == 0) res = 0.0;  // handled by coincidence below
  require(res <= std::max(tol, 1e-12) * 100, Errc::not_in_affine_hull,
          "point is off the face's affine hull (residual " + std::to_string(res) + ")");
  if (f.dim == 0) {
    double d = (z - P.vertex(f.vertex_ids[0])).norm();
    if (out_margin) *out_margin = margin - d;
    return d <= margin;
  }
  double m = std::numeric_limits<double>::infinity();
  for (int h : f.out_facet_ids)
    m = std::min(m, P.facets[h].offset - P.facets[h].normal.dot(z));
  if (out_margin) *out_margin = m;
  return m >= margin;
}

// ---------------------------------------------------------------------------
// Cones of faces.

struct Cone {
  int face_id = -1;
  int n = 0;  // ambient dimension
  int k = 0;  // codimension of the apex face
  Vec base;                       // z0 in relint F
  Mat lineality;                  // n x dim(F) orthonormal
  Mat normalsp;                   // n x k orthonormal complement
  std::vector<Halfspace> walls;   // k halfspaces, re-offset through base
  std::vector<int> wall_facets;   // facet indices of P
  std::vector<int> filter;        // face ids G with F <= G (sorted by dim asc)
  std::vector<Vec> ray_dirs;      // unit directions of dim(F)+1 filter faces
  std::vector<int> ray_faces;     // their face ids

  bool contains(const Vec& y, double slack = 0.0) const {
    for (const auto& w : walls)
      if (w.normal.dot(y) - w.offset > slack) return false;
    return true;
  }
  double interior_margin(const Vec& y) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& w : walls) m = std::min(m, w.offset - w.normal.dot(y));
    return m;
  }
};

// The cone of face F: intersection of the halfspaces of the facets containing
// F, with offsets re-anchored through a relint point of F (they already pass
// through aff F; re-anchoring only removes floating-point drift).
inline Cone cone_of_face(const Polytope& P, int face_id) {
  const Face& f = P.faces.at(face_id);
  require(f.dim < P.n, Errc::precondition, "cone of the whole polytope is undefined");
  Cone C;
  C.face_id = face_id;
  C.n = P.n;
  C.k = P.n - f.dim;
  C.base = f.centroid;
  C.lineality = f.tangent;
  C.normalsp = f.normalsp;
  for (int h : f.facet_ids) {
    Halfspace w = P.facets[h];
    w.offset = w.normal.dot(C.base);
    C.walls.push_back(w);
    C.wall_facets.push_back(h);
  }
  // Filter: faces G whose facet set is contained in F's facet set are
  // exactly the faces containing F (simple polytope lattice).
  for (const auto& g : P.faces) {
    if (g.dim < f.dim) continue;
    if (std::includes(f.facet_ids.begin(), f.facet_ids.end(), g.facet_ids.begin(),
                      g.facet_ids.end()))
      C.filter.push_back(g.id);
  }
  std::sort(C.filter.begin(), C.filter.end(), [&](int a, int b) {
    if (P.faces[a].dim != P.faces[b].dim) return P.faces[a].dim < P.faces[b].dim;
    return a < b;
  });
  for (int gid : C.filter) {
    const Face& g = P.faces[gid];
    if (g.dim != f.dim + 1) continue;
    Vec d = g.centroid - C.base;
    d -= C.lineality * (C.lineality.transpose() * d);
    C.ray_dirs.push_back(unit(d));
    C.ray_faces.push_back(gid);
  }
  if (f.dim == P.n - 1) {
    // The only face above a facet is the polytope itself, which the proper
    // face list omits: the single transverse direction is the inward normal.
    C.ray_dirs.push_back(-P.facets[f.facet_ids[0]].normal);
    C.ray_faces.push_back(-1);
  }
  require(static_cast<int>(C.ray_dirs.size()) == C.k, Errc::degenerate_input,
          "cone ray count != codimension (lattice not simple?)");
  return C;
}

// ---------------------------------------------------------------------------
// Genericity: no two face affine hulls parallel or orthogonal beyond what is
// forced by containment, shared subfaces, or ambient dimension counts.

struct GenericityViolation {
  int face_a = -1;
  int face_b = -1;
  std::string kind;  // "parallel" | "orthogonal"
  double residual = 0.0;
};

struct GenericityReport {
  bool passed = true;
  std::vector<GenericityViolation> violations;
};

// When subset_pairs is true, all vertex-pair segment directions are also
// tested pairwise (size-2 subset bound); faces of the lattice are always
// tested.
inline GenericityReport check_genericity(const Polytope& P, double tol = 1e-6,
                                         bool subset_pairs = false) {
  GenericityReport rep;
  const int F = static_cast<int>(P.faces.size());
  for (int a = 0; a < F; ++a) {
    const Face& fa = P.faces[a];
    if (fa.dim == 0) continue;
    for (int b = a + 1; b < F; ++b) {
      const Face& fb = P.faces[b];
      if (fb.dim == 0) continue;
      const Mat& U = fa.dim <= fb.dim ? fa.tangent : fb.tangent;
      const Mat& W = fa.dim <= fb.dim ? fb.tangent : fa.tangent;
      const int sa = static_cast<int>(U.cols());
      const int sb = static_cast<int>(W.cols());
      // Forced coincidences.
      std::vector<int> shared;
      std::set_intersection(fa.vertex_ids.begin(), fa.vertex_ids.end(),
                            fb.vertex_ids.begin(), fb.vertex_ids.end(),
                            std::back_inserter(shared));
      int shared_dim = 0;
      if (shared.size() >= 2) {
        Mat sp(shared.size(), P.n);
        for (size_t i = 0; i < shared.size(); ++i) sp.row(i) = P.verts.row(shared[i]);
        shared_dim = affine_basis(sp, 1e-7).rank;
      }
      bool contained =
          std::includes(fa.vertex_ids.begin(), fa.vertex_ids.end(),
                        fb.vertex_ids.begin(), fb.vertex_ids.end()) ||
          std::includes(fb.vertex_ids.begin(), fb.vertex_ids.end(),
                        fa.vertex_ids.begin(), fa.vertex_ids.end());
      // Both tangent spaces live inside the intersection of the facets the two
      // faces have in common, a subspace of dimension n - |common| (facet
      // normals through any shared vertex are independent on a simple
      // polytope).  Within it, dimension counting forces
      // sa + sb - (n - |common|) shared directions.
      std::vector<int> common_facets;
      std::set_intersection(fa.facet_ids.begin(), fa.facet_ids.end(),
                            fb.facet_ids.begin(), fb.facet_ids.end(),
                            std::back_inserter(common_facets));
      const int ambient = P.n - static_cast<int>(common_facets.size());
      int forced_ones = std::max({0, sa + sb - ambient, shared_dim});
      if (contained) forced_ones = sa;

      Eigen::JacobiSVD<Mat> svd(U.transpose() * W);
      const Vec sv = svd.singularValues();
      int ones = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > 1.0 - tol) ++ones;
      if (ones > forced_ones) {
        rep.violations.push_back({fa.id, fb.id, "parallel", 1.0 - sv[forced_ones]});
      }
      if (!contained && sv.size() > 0 && sv[sv.size() - 1] < tol) {
        rep.violations.push_back({fa.id, fb.id, "orthogonal", sv[sv.size() - 1]});
      }
    }
  }
  if (subset_pairs) {
    // Pairwise vertex-difference directions: parallel / orthogonal segments.
    const int V = P.num_vertices();
    std::vector<Vec> dirs;
    std::vector<std::pair<int, int>> who;
    for (int i = 0; i < V; ++i)
      for (int j = i + 1; j < V; ++j) {
        dirs.push_back(unit(Vec(P.verts.row(j) - P.verts.row(i)).eval()));
        who.push_back({i, j});
      }
    for (size_t a = 0; a < dirs.size(); ++a)
      for (size_t b = a + 1; b < dirs.size(); ++b) {
        if (who[a].first == who[b].first || who[a].first == who[b].second ||
            who[a].second == who[b].first || who[a].second == who[b].second) {
          // Segments sharing an endpoint are never forced-parallel unless
          // collinear through a common vertex, which the face test catches.
          continue;
        }
        double c = std::abs(dirs[a].dot(dirs[b]));
        if (c > 1.0 - tol)
          rep.violations.push_back({-1, -1, "parallel", 1.0 - c});
        else if (c < tol)
          rep.violations.push_back({-1, -1, "orthogonal", c});
      }
  }
  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace polynorm
