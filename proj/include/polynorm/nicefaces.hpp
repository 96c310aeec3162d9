#pragma once
// Critical points of the squared-distance function on the boundary of a
// face's cone, certification that a face is "nice" (its cone admits a point
// with at least 2k+1 criticals, k the codimension), and the propagation
// check that every facet of a nice face is nice.

#include "polynorm/normals.hpp"
#include "polynorm/spherical.hpp"

#include <algorithm>
#include <optional>

namespace polynorm {

struct ConeRecord {
  int face_id = -1;  // face of P labelling the cone stratum (apex = the face itself)
  int dim = 0;
  int index = 0;  // n - 1 - dim
  Vec base;
  double sqdist = 0;
  double slack = 0;
  double relint_margin = 0;
  bool marginal = false;
};

struct ConeCriticalReport {
  int face_id = -1;
  Vec point;
  std::vector<ConeRecord> records;
  int count = 0;  // solid records
  int marginal_count = 0;
};

// Criticals of |x - y|^2 on the boundary of the cone C of a face F.  The
// strata of the cone are labelled by the faces G of P containing F; the
// affine hull of the stratum for G equals the affine hull of G.  A stratum
// is critical when the projection of y lands inside it (against the walls
// cut by the facets of F that do not contain G) and the residual y - z makes
// angles <= pi/2 with every ray direction of C that leaves the stratum (ray
// directions inside the stratum's hull contribute identically zero, and the
// apex point with the lineality directions always do).
inline ConeCriticalReport cone_sqd_critical_points(const Polytope& P, const Cone& C,
                                                   const Vec& y, double tol = 1e-9) {
  require(C.interior_margin(y) > tol, Errc::point_not_in_cone,
          "point is not strictly inside the cone");
  ConeCriticalReport rep;
  rep.face_id = C.face_id;
  rep.point = y;

  const auto& Ff = P.faces[C.face_id].facet_ids;
  for (int gid : C.filter) {
    const Face& g = P.faces[gid];
    ConeRecord r;
    r.face_id = gid;
    r.dim = g.dim;
    r.index = P.n - 1 - g.dim;

    Vec z = project_affine(y, g.centroid, g.tangent);

    // Walls: facets of F that do not contain G, re-anchored through the base.
    double relm = std::numeric_limits<double>::infinity();
    bool reject = false;
    for (int h : Ff) {
      if (std::find(g.facet_ids.begin(), g.facet_ids.end(), h) != g.facet_ids.end())
        continue;
      const Halfspace& H = P.facets[h];
      double m = H.normal.dot(C.base) - H.normal.dot(z);
      relm = std::min(relm, m);
      if (m < -tol) { reject = true; break; }
    }
    if (reject) continue;

    Vec w = y - z;
    double slack = std::numeric_limits<double>::infinity();
    for (size_t ri = 0; ri < C.ray_dirs.size(); ++ri) {
      // Rays whose face lies in G span directions inside aff(G): skip them.
      const auto& rf = P.faces[C.ray_faces[ri]].facet_ids;
      bool in_g = std::includes(rf.begin(), rf.end(), g.facet_ids.begin(),
                                g.facet_ids.end());
      if (in_g && gid != C.face_id) continue;
      slack = std::min(slack, w.dot(C.ray_dirs[ri]));
      if (slack < -tol) { reject = true; break; }
    }
    if (reject) continue;

    r.base = z;
    r.sqdist = w.squaredNorm();
    r.slack = slack;
    r.relint_margin = relm;
    r.marginal = std::abs(slack) < tol ||
                 (relm < tol && relm != std::numeric_limits<double>::infinity());
    rep.records.push_back(std::move(r));
  }

  std::sort(rep.records.begin(), rep.records.end(),
            [](const ConeRecord& a, const ConeRecord& b) {
              if (a.sqdist != b.sqdist) return a.sqdist < b.sqdist;
              return a.face_id < b.face_id;
            });
  for (const auto& r : rep.records)
    r.marginal ? ++rep.marginal_count : ++rep.count;
  return rep;
}

inline ConeCriticalReport cone_sqd_critical_points(const Polytope& P, int face_id,
                                                   const Vec& y, double tol = 1e-9) {
  return cone_sqd_critical_points(P, cone_of_face(P, face_id), y, tol);
}

// ---------------------------------------------------------------------------
// Nice-face certification.

struct NiceCertificate {
  int face_id = -1;
  int k = 0;       // codimension
  int target = 0;  // 2k + 1
  bool found = false;
  Vec witness;     // valid when found (or best point seen otherwise)
  int count = 0;   // criticals at the witness (best seen)
  ConeCriticalReport report;
  int probes_used = 0;
  bool via_link_witness = false;  // constructed from a nice spherical link
};

struct CertifySettings {
  int probes = 20000;   // random probe budget
  int climb_depth = 50; // hill-climbing steps per restart
  double tol = 1e-9;
  double classify_tol = 1e-6;
};

namespace detail {

// Evaluates a probe, counting solid records only; marginal-heavy probes are
// nudged once before giving up on them.
inline int cone_count(const Polytope& P, const Cone& C, const Vec& y, double tol,
                      ConeCriticalReport* keep = nullptr) {
  ConeCriticalReport rep = cone_sqd_critical_points(P, C, y, tol);
  if (rep.marginal_count > 0) {
    Vec y2 = y * (1.0 + 3e-9) + Vec::Constant(y.size(), 1e-9);
    if (C.interior_margin(y2) > tol) {
      ConeCriticalReport rep2 = cone_sqd_critical_points(P, C, y2, tol);
      if (rep2.marginal_count == 0) rep = std::move(rep2);
    }
  }
  if (keep) *keep = rep;
  return rep.marginal_count > 0 ? -1 : rep.count;
}

// Random interior point of the cone: base + positive ray mix + lineality jitter.
inline Vec cone_sample(const Polytope& P, const Cone& C, RngStream& rng,
                       double spread = 1.0) {
  Vec y = C.base;
  for (const Vec& d : C.ray_dirs) y += (0.05 + rng.uniform()) * spread * d;
  const Face& f = P.faces[C.face_id];
  for (int c = 0; c < f.tangent.cols(); ++c)
    y += rng.uniform(-0.5, 0.5) * spread * f.tangent.col(c);
  return y;
}

}  // namespace detail

// Searches the cone of face F for a point whose boundary squared-distance
// function has at least 2k+1 critical points.  For codimension 3 the search
// first classifies the spherical link: a nice link hands us the witness
// direction directly.  Falls back to seeded random probes with hill
// climbing.  Absence of a certificate is a result, not an error: the search
// is incomplete for k > 3.
inline NiceCertificate certify_nice(const Polytope& P, int face_id,
                                    const CertifySettings& st = {},
                                    uint64_t seed = 1) {
  const Face& f = P.faces.at(face_id);
  const int k = P.n - f.dim;
  require(k >= 3, Errc::precondition, "niceness needs codimension >= 3");
  Cone C = cone_of_face(P, face_id);

  NiceCertificate cert;
  cert.face_id = face_id;
  cert.k = k;
  cert.target = 2 * k + 1;

  auto consider = [&](const Vec& y) {
    if (C.interior_margin(y) <= st.tol) return false;
    ++cert.probes_used;
    ConeCriticalReport rep;
    int c = detail::cone_count(P, C, y, st.tol, &rep);
    if (c > cert.count) {
      cert.count = c;
      cert.witness = y;
      cert.report = std::move(rep);
    }
    return cert.count >= cert.target;
  };

  // Link-guided construction for codimension 3.
  if (k == 3) {
    SphericalSimplex link = spherical_link(P, face_id);
    TriangleClassification cls;
    bool classified = true;
    try {
      cls = classify_triangle(link.verts, st.classify_tol);
    } catch (const Error&) {
      classified = false;
    }
    if (classified && cls.verdict == TriangleVerdict::Nice) {
      Vec dir = f.normalsp * cls.witness;
      for (double r : {0.1, 0.05, 0.2, 0.02, 0.4}) {
        if (consider(C.base + r * dir)) {
          cert.found = true;
          cert.via_link_witness = true;
          return cert;
        }
      }
    }
  }

  RngStream rng(splitmix64(seed ^ 0x6e696365ull) ^ static_cast<uint64_t>(face_id));
  RngStream sampler = rng.child(1);
  RngStream climber = rng.child(2);

  int restarts = std::max(1, st.probes / std::max(1, st.climb_depth));
  for (int rs = 0; rs < restarts && cert.probes_used < st.probes; ++rs) {
    double spread = std::pow(2.0, sampler.uniform(-3.0, 2.0));
    Vec y = detail::cone_sample(P, C, sampler, spread);
    if (consider(y)) { cert.found = true; return cert; }
    // Hill climb from the incumbent: small moves, keep improvements.
    Vec cur = cert.count > 0 ? cert.witness : y;
    double sigma = 0.2 * std::max(1e-6, (cur - C.base).norm());
    for (int d = 0; d < st.climb_depth && cert.probes_used < st.probes; ++d) {
      Vec cand = cur + sigma * climber.gaussian_vec(P.n);
      if (C.interior_margin(cand) <= st.tol) { sigma *= 0.7; continue; }
      int before = cert.count;
      if (consider(cand)) { cert.found = true; return cert; }
      if (cert.count > before) {
        cur = cert.witness;
      } else {
        sigma *= 0.95;
      }
    }
  }
  cert.found = cert.count >= cert.target;
  return cert;
}

// ---------------------------------------------------------------------------
// Propagation: every facet of a nice face is nice, checked constructively by
// the traveling argument.  The witness is first translated parallel to F
// into the facet's cone, then walked toward the cutting hyperplane; the +-2
// bifurcations encountered on the way raise the count to 2(k+1)+1.

struct PropagationItem {
  int facet_face_id = -1;  // the facet F' of F
  bool achieved = false;
  NiceCertificate certificate;
};

struct PropagationReport {
  int face_id = -1;
  std::vector<PropagationItem> items;
  bool all_achieved = true;
};

inline PropagationReport check_propagation(const Polytope& P, const NiceCertificate& cert,
                                           const CertifySettings& st = {},
                                           uint64_t seed = 1) {
  require(cert.found, Errc::precondition, "propagation needs a valid certificate");
  const Face& f = P.faces.at(cert.face_id);
  PropagationReport rep;
  rep.face_id = cert.face_id;

  for (const Face& fp : P.faces) {
    if (fp.dim != f.dim - 1) continue;
    if (!std::includes(fp.facet_ids.begin(), fp.facet_ids.end(), f.facet_ids.begin(),
                       f.facet_ids.end()))
      continue;

    PropagationItem item;
    item.facet_face_id = fp.id;
    const int k2 = P.n - fp.dim;
    Cone C2 = cone_of_face(P, fp.id);

    // The one facet of P cutting F down to F'.
    int hid = -1;
    for (int h : fp.facet_ids)
      if (std::find(f.facet_ids.begin(), f.facet_ids.end(), h) == f.facet_ids.end())
        hid = h;
    require(hid >= 0, Errc::consistency_alarm, "facet lattice mismatch");
    const Halfspace& H = P.facets[hid];

    NiceCertificate c2;
    c2.face_id = fp.id;
    c2.k = k2;
    c2.target = 2 * k2 + 1;
    auto consider = [&](const Vec& y) {
      if (C2.interior_margin(y) <= st.tol) return false;
      ++c2.probes_used;
      ConeCriticalReport r;
      int c = detail::cone_count(P, C2, y, st.tol, &r);
      if (c > c2.count) {
        c2.count = c;
        c2.witness = y;
        c2.report = std::move(r);
      }
      return c2.count >= c2.target;
    };

    // Translate the witness parallel to F until it sits inside C(F'), then
    // travel toward the hyperplane of H, sampling densely near it.
    Vec u = f.tangent * (f.tangent.transpose() * H.normal);
    double nu = u.norm();
    bool done = false;
    if (nu > 1e-12) {
      u /= nu;  // parallel to F, increases <H.normal, y>
      double b = H.normal.dot(C2.base);
      double v0 = H.normal.dot(cert.witness);
      double rate = H.normal.dot(u);  // > 0 by construction
      // Start deep inside the halfspace (far from h), then approach it.
      double t_start = (b - 1.0 - v0) / rate;
      Vec y0 = cert.witness + t_start * u;
      double t_hit = (b - H.normal.dot(y0)) / rate;  // travel distance to h
      for (int j = 0; j <= 24 && !done; ++j) {
        double frac = 1.0 - std::pow(0.5, j);  // 0, 1/2, 3/4, ...
        done = consider(y0 + frac * t_hit * u);
      }
    }
    if (!done) {
      CertifySettings st2 = st;
      st2.probes = std::max(1000, st.probes / 4);
      NiceCertificate fallback =
          certify_nice(P, fp.id, st2, splitmix64(seed ^ 0x70726f70ull));
      if (fallback.count > c2.count) c2 = fallback;
    }
    c2.found = c2.count >= c2.target;
    item.achieved = c2.found;
    item.certificate = std::move(c2);
    if (!item.achieved) rep.all_achieved = false;
    rep.items.push_back(std::move(item));
  }
  return rep;
}

}  // namespace polynorm
