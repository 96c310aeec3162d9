#pragma once
// Critical points of the squared-distance function |x - y|^2 restricted to
// the boundary of a convex polytope, viewed from an interior point y: one
// candidate per proper face (the orthogonal projection of y onto the face's
// affine hull), kept when the projection lands in the relative interior and
// the segment from the base to y makes angles <= pi/2 with every direction
// into the polytope.  Count parities, index tallies, active regions and
// 1-parameter scans build on this.

#include "polynorm/geometry.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace polynorm {

struct NormalRecord {
  int face_id = -1;
  int dim = 0;         // dim of the face
  int index = 0;       // Morse index: n - 1 - dim
  Vec base;            // critical point z on the boundary
  double sqdist = 0;   // |y - z|^2
  double slack = 0;    // min over out-vertices v of <y - z, v - z>
  double relint_margin = 0;  // margin of z inside relint(face)
  bool marginal = false;     // |slack| or relint margin inside the tol band
};

struct NormalsReport {
  Vec point;                          // y (internal coordinates)
  std::vector<NormalRecord> records;  // sorted by sqdist, includes marginal
  int count = 0;                      // solid (non-marginal) records
  int marginal_count = 0;
};

namespace detail {

// Record for one face, or nullopt when clearly non-critical.  `margin_band`
// is the marginality half-width; candidates failing a condition by more than
// the band are dropped, ones inside the band are kept and flagged.
inline std::optional<NormalRecord> face_record(const Polytope& P, const Face& f,
                                               const Vec& y, double band) {
  NormalRecord r;
  r.face_id = f.id;
  r.dim = f.dim;
  r.index = P.n - 1 - f.dim;

  Vec z = project_affine(y, f.centroid, f.tangent);

  // Relative interior of the face, with margin.  Vertices (dim 0) have no
  // cutting constraints: the projection is the vertex itself.
  double relm = std::numeric_limits<double>::infinity();
  if (f.dim == 0) {
    z = P.vertex(f.vertex_ids[0]);
  } else {
    for (int h : f.out_facet_ids) {
      relm = std::min(relm, P.facets[h].offset - P.facets[h].normal.dot(z));
      if (relm < -band) return std::nullopt;
    }
  }

  // Criticality: <y - z, v - z> >= 0 for all vertices v of P.  Vertices on
  // the face itself contribute an identical zero (y - z is orthogonal to the
  // face's directions), so the informative minimum runs over the rest.
  Vec w = y - z;
  double slack = std::numeric_limits<double>::infinity();
  for (int vi : f.out_vertex_ids) {
    slack = std::min(slack, w.dot(P.vertex(vi) - z));
    if (slack < -band) return std::nullopt;
  }

  r.base = z;
  r.sqdist = w.squaredNorm();
  r.slack = slack;
  r.relint_margin = relm;
  r.marginal = (f.dim > 0 && relm < band) || std::abs(slack) < band;
  return r;
}

}  // namespace detail

// All normals emanating from interior point y, one record per critical face.
// Throws point_not_interior when y is not strictly inside P.
inline NormalsReport normals_from_point(const Polytope& P, const Vec& y,
                                        double tol = 1e-9) {
  require(y.size() == P.n, Errc::invalid_input, "point dimension mismatch");
  require(P.interior_margin(y) > tol, Errc::point_not_interior,
          "point is not strictly interior");
  NormalsReport rep;
  rep.point = y;
  for (const Face& f : P.faces) {
    auto r = detail::face_record(P, f, y, tol);
    if (r) rep.records.push_back(std::move(*r));
  }
  std::sort(rep.records.begin(), rep.records.end(),
            [](const NormalRecord& a, const NormalRecord& b) {
              if (a.sqdist != b.sqdist) return a.sqdist < b.sqdist;
              return a.face_id < b.face_id;
            });
  for (const auto& r : rep.records)
    r.marginal ? ++rep.marginal_count : ++rep.count;
  return rep;
}

// Fast counting path for searches and grids: solid count only, with a flag
// when any marginal candidate was seen.  No allocation per call beyond two
// scratch vectors.
struct CountResult {
  int count = 0;
  bool marginal = false;
  bool interior = true;
};

inline CountResult count_normals(const Polytope& P, const Vec& y, double tol = 1e-9) {
  require(y.size() == P.n, Errc::invalid_input, "point dimension mismatch");
  CountResult out;
  if (P.interior_margin(y) <= tol) {
    out.interior = false;
    return out;
  }
  thread_local Vec z, w;
  for (const Face& f : P.faces) {
    if (f.dim == 0) {
      z = P.vertex(f.vertex_ids[0]);
    } else {
      z = project_affine(y, f.centroid, f.tangent);
    }
    bool ok = true, marg = false;
    if (f.dim > 0) {
      for (int h : f.out_facet_ids) {
        double m = P.facets[h].offset - P.facets[h].normal.dot(z);
        if (m < -tol) { ok = false; break; }
        if (m < tol) marg = true;
      }
      if (!ok) continue;
    }
    w = y - z;
    double slack = std::numeric_limits<double>::infinity();
    for (int vi : f.out_vertex_ids) {
      slack = std::min(slack, w.dot(P.vertex(vi) - z));
      if (slack < -tol) { ok = false; break; }
    }
    if (!ok) continue;
    if (std::abs(slack) < tol) marg = true;
    if (marg) out.marginal = true;
    else ++out.count;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morse tally.

struct MorseTally {
  std::vector<int> by_index;  // length n
  int total = 0;
  bool even_total = false;
  bool extrema_placement_ok = false;  // maxima at vertices, minima at facets
  bool alternating_sum_ok = false;    // sum (-1)^m = 1 + (-1)^(n-1)
};

// Tallies records by Morse index and checks the structural invariants.
// Throws marginal_records when any record is flagged; callers are expected
// to perturb the viewpoint and retry.
inline MorseTally morse_tally(const Polytope& P, const NormalsReport& rep) {
  require(rep.marginal_count == 0, Errc::marginal_records,
          "marginal records present; perturb the viewpoint");
  MorseTally t;
  t.by_index.assign(P.n, 0);
  t.extrema_placement_ok = true;
  for (const auto& r : rep.records) {
    require(r.index >= 0 && r.index < P.n, Errc::consistency_alarm, "index range");
    ++t.by_index[r.index];
    ++t.total;
    if (r.index == P.n - 1 && r.dim != 0) t.extrema_placement_ok = false;
    if (r.index == 0 && r.dim != P.n - 1) t.extrema_placement_ok = false;
  }
  t.even_total = (t.total % 2 == 0);
  long alt = 0;
  for (int m = 0; m < P.n; ++m) alt += (m % 2 == 0) ? t.by_index[m] : -t.by_index[m];
  t.alternating_sum_ok = (alt == 1 + ((P.n - 1) % 2 == 0 ? 1 : -1));
  return t;
}

// ---------------------------------------------------------------------------
// Active regions: the set of interior viewpoints whose record set contains a
// given face.  Intersection of the "slab" (relint conditions pulled back
// through the projection, linear in y) and the "wedge" (criticality against
// out-vertices, also linear in y because <y - z, v - z> = <w, v - z0> where
// w is the normal component of y - z0).

struct ActiveRegion {
  int face_id = -1;
  // Linear conditions <c, y> <= d (slab) and <c, y> >= d stored uniformly as
  // <c, y> - d >= 0 after sign normalization.
  std::vector<Vec> normals;
  std::vector<double> offsets;

  // Margin of y against all defining conditions (>= 0 inside).
  double margin(const Vec& y) const {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < normals.size(); ++i)
      m = std::min(m, normals[i].dot(y) - offsets[i]);
    return m;
  }
  bool contains(const Vec& y, double slack = 0.0) const { return margin(y) >= -slack; }
};

inline ActiveRegion active_region(const Polytope& P, int face_id) {
  const Face& f = P.faces.at(face_id);
  ActiveRegion ar;
  ar.face_id = face_id;
  const Vec& z0 = f.centroid;
  // Slab: for each facet H not containing F, the projected point
  // z(y) = z0 + U U^T (y - z0) must satisfy <n_H, z> <= b_H strictly.
  for (int h : f.out_facet_ids) {
    const Halfspace& H = P.facets[h];
    Vec c;
    if (f.tangent.cols() > 0)
      c = f.tangent * (f.tangent.transpose() * H.normal);
    else
      c = Vec::Zero(P.n);
    // <n_H, z(y)> = <n_H, z0> + <c, y - z0> <= b_H  ->  <-c, y> >= <n_H,z0> - b_H - <c,z0>
    double d = H.offset - H.normal.dot(z0) + c.dot(z0);
    ar.normals.push_back(-c);
    ar.offsets.push_back(-d);
  }
  // Wedge: <v - z0, w> >= 0 with w = (I - U U^T)(y - z0), linear in y.
  for (int vi : f.out_vertex_ids) {
    Vec dv = P.vertex(vi) - z0;
    Vec c = dv;
    if (f.tangent.cols() > 0) c -= f.tangent * (f.tangent.transpose() * dv);
    ar.normals.push_back(c);
    ar.offsets.push_back(c.dot(z0));
  }
  return ar;
}

// ---------------------------------------------------------------------------
// Scans along a segment of interior viewpoints.

struct ScanSample {
  double t = 0;
  int count = 0;
};

struct ScanCrossing {
  double t_lo = 0, t_hi = 0;
  int count_before = 0, count_after = 0;
  bool resolved = false;  // |delta| == 2 after refinement
};

struct SegmentScan {
  Vec a, b;
  std::vector<ScanSample> samples;
  std::vector<ScanCrossing> crossings;
  bool all_resolved = true;
  int unresolved = 0;
};

namespace detail {

// Counts at a scan parameter.  Bisection can land samples inside the marginal
// band of a crossing; the count is still well defined there, so first retry
// the same point with a tighter band, then fall back to geometrically growing
// nudges toward the segment midpoint (deterministic and symmetric under scan
// reversal).
inline int scan_count_at(const Polytope& P, const Vec& a, const Vec& b, double t,
                         double tol, int max_nudge = 5) {
  for (int k = 0; k <= max_nudge; ++k) {
    double tt = t + (0.5 - t) * (k * k * k * k * 3e-11);
    Vec y = a + tt * (b - a);
    for (double band = tol; band >= 1e-14; band /= 100.0) {
      CountResult c = count_normals(P, y, band);
      require(c.interior, Errc::point_not_interior, "scan sample is not interior");
      if (!c.marginal) return c.count;
    }
  }
  fail(Errc::non_generic_sample, "scan sample stayed marginal after nudging");
}

}  // namespace detail

// Samples the normal count along y(t) = a + t (b - a), t in [0, 1], then
// refines every count change by bisection until each crossing interval
// carries a change of exactly +-2 (or max_depth is exhausted, which marks
// the crossing unresolved: a multi-sheet event).
inline SegmentScan scan_segment(const Polytope& P, const Vec& a, const Vec& b,
                                int steps = 64, int max_depth = 40,
                                double tol = 1e-9) {
  require(steps >= 1, Errc::invalid_input, "steps must be positive");
  require(a.size() == P.n && b.size() == P.n, Errc::invalid_input,
          "segment endpoint dimension mismatch");
  SegmentScan scan;
  scan.a = a;
  scan.b = b;
  scan.samples.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) / steps;
    scan.samples.push_back({t, detail::scan_count_at(P, a, b, t, tol)});
  }

  std::function<void(double, int, double, int, int)> refine =
      [&](double t0, int c0, double t1, int c1, int depth) {
        if (c0 == c1) return;
        if (std::abs(c1 - c0) == 2 && (t1 - t0) < 1e-7) {
          scan.crossings.push_back({t0, t1, c0, c1, true});
          return;
        }
        if (depth >= max_depth) {
          scan.crossings.push_back({t0, t1, c0, c1, std::abs(c1 - c0) == 2});
          return;
        }
        double tm = 0.5 * (t0 + t1);
        int cm = detail::scan_count_at(P, a, b, tm, tol);
        refine(t0, c0, tm, cm, depth + 1);
        refine(tm, cm, t1, c1, depth + 1);
      };
  for (size_t i = 0; i + 1 < scan.samples.size(); ++i)
    refine(scan.samples[i].t, scan.samples[i].count, scan.samples[i + 1].t,
           scan.samples[i + 1].count, 0);

  std::sort(scan.crossings.begin(), scan.crossings.end(),
            [](const ScanCrossing& x, const ScanCrossing& y) { return x.t_lo < y.t_lo; });
  for (const auto& c : scan.crossings)
    if (!c.resolved) ++scan.unresolved;
  scan.all_resolved = (scan.unresolved == 0);
  return scan;
}

}  // namespace polynorm
