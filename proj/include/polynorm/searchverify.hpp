#pragma once
// Random generation of generic simple polytopes, canned example shapes, the
// search for interior points whose boundary squared-distance function has at
// least 2n+4 critical points, batch verification, and the census of
// skew/nice codimension-3 faces with its coloring cross-check.

#include "polynorm/coloring.hpp"
#include "polynorm/nicefaces.hpp"
#include "polynorm/normals.hpp"
#include "polynorm/spherical.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace polynorm {

// ---------------------------------------------------------------------------
// Generation.

struct GeneratorSpec {
  int n = 3;
  int m = 6;              // number of facets requested
  double genericity = 1e-6;
  // Attempts are microseconds each, and the bounded-polytope acceptance rate
  // drops near m = n+1 (about 1% at n=5, m=6), so the cap is generous; it
  // exists to bound the loop, not to be reached.
  int max_attempts = 10000;
};

// Samples m unit vectors u_i and forms { x : <u_i, x> <= 1 }; the
// intersection is bounded exactly when the u_i are not contained in a closed
// half-sphere, which is tested via the smallest enclosing spherical cap.
// Rebuilds until the polytope is simple and passes the genericity check.
inline Polytope random_simple_polytope(const GeneratorSpec& spec, uint64_t seed) {
  require(spec.n >= 2, Errc::invalid_input, "dimension must be at least 2");
  require(spec.m >= spec.n + 1, Errc::invalid_input,
          "need at least n+1 facets for boundedness");
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    RngStream rng =
        RngStream(splitmix64(seed ^ 0x67656e70ull)).child(static_cast<uint64_t>(attempt));
    Mat dirs(spec.m, spec.n);
    for (int i = 0; i < spec.m; ++i) dirs.row(i) = rng.unit_vec(spec.n).transpose();

    HemisphereCheck hc = hemisphere_check(dirs);
    if (hc.margin > -0.02) continue;  // (nearly) in a half-sphere: unbounded or thin

    std::vector<Halfspace> hs;
    hs.reserve(spec.m);
    for (int i = 0; i < spec.m; ++i) hs.push_back({dirs.row(i).transpose(), 1.0});
    Polytope P;
    try {
      P = build_polytope_hrep(spec.n, hs);
    } catch (const Error&) {
      continue;
    }
    GenericityReport gr = check_genericity(P, spec.genericity);
    if (!gr.passed) continue;
    return P;
  }
  fail(Errc::generation_failed, "no valid polytope within the attempt budget");
}

// ---------------------------------------------------------------------------
// Canned shapes.  Every shape is delivered through the standard construction
// pipeline so faces/cones behave identically to generated inputs.

inline Polytope canned_cube(int n) {
  std::vector<Vec> verts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    verts.push_back(v);
  }
  return build_polytope(n, verts);
}

inline Polytope canned_simplex(int n) {
  // Regular n-simplex: the n+1 standard basis points of R^{n+1} expressed in
  // an orthonormal basis of the sum-zero subspace.
  Mat E = Mat::Identity(n + 1, n + 1);
  Vec g = Vec::Constant(n + 1, 1.0 / (n + 1));
  Mat C = E.colwise() - g;
  Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeThinU);
  Mat U = svd.matrixU().leftCols(n);
  std::vector<Vec> verts;
  for (int i = 0; i < n + 1; ++i) verts.push_back(U.transpose() * C.col(i));
  return build_polytope(n, verts);
}

inline Polytope canned_triangle() {
  std::vector<Vec> verts;
  for (int i = 0; i < 3; ++i) {
    Vec v(2);
    double a = 2.0 * M_PI * i / 3.0 + M_PI / 2.0;
    v << std::cos(a), std::sin(a);
    verts.push_back(v);
  }
  return build_polytope(2, verts);
}

// A skinny tetrahedron whose interior points carry at most 10 critical
// points of the squared-distance function, with 10 attained.  The base is an
// obtuse triangle and the apex sits over a point outside it; that keeps every
// vertex cone regular from nearby interior points.  (Lifting the apex over a
// point inside the base instead always leaves a chamber under the apex that
// sees 12 or 14 critical points, no matter how flat the shape gets, so a
// fixture for the 10 bound has to avoid that family.)  The bound was checked
// two independent ways: counting along rays from every vertex of the
// active-region hyperplane arrangement, and an exhaustive infeasibility proof
// over all 11-subsets of the 14 active regions.  The bound holds for heights
// in at least [0.08, 0.40].
inline Polytope canned_thin_tetrahedron(double height = 0.32) {
  std::vector<Vec> verts(4, Vec(3));
  verts[0] << 0.0, 0.0, 0.0;
  verts[1] << 2.6, 0.0, 0.0;
  verts[2] << 3.3, 0.8, 0.0;
  verts[3] << 1.2, 0.4, height;
  return build_polytope(3, verts);
}

inline Polytope canned_polytope(const std::string& name) {
  if (name == "triangle") return canned_triangle();
  if (name == "square") return canned_cube(2);
  if (name == "cube3") return canned_cube(3);
  if (name == "cube4") return canned_cube(4);
  if (name == "simplex3") return canned_simplex(3);
  if (name == "simplex4") return canned_simplex(4);
  if (name == "simplex5") return canned_simplex(5);
  if (name == "tetrahedron") return canned_simplex(3);
  if (name == "thin_tetrahedron") return canned_thin_tetrahedron();
  fail(Errc::invalid_input, "unknown canned shape '" + name + "'");
}

// ---------------------------------------------------------------------------
// Search for points with many normals.

struct SearchSettings {
  int budget = 100000;       // total probe evaluations
  int target = 0;            // 0 = 2n+4
  double tol = 1e-9;
  int climb_depth = 50;
  uint64_t seed = 1;
};

struct StrategyStats {
  std::string name;
  int probes = 0;
  int best = 0;
};

struct SearchReport {
  int target = 0;
  int best_count = 0;
  Vec best_point;            // internal coordinates
  Vec best_point_input;      // input coordinates
  bool achieved = false;
  int probes_used = 0;
  int baseline_hit_probe = -1;  // first probe reaching 2n+2, -1 if never
  std::vector<StrategyStats> strategies;
};

namespace detail {

struct SearchCtx {
  const Polytope& P;
  SearchSettings st;
  SearchReport rep;
  int baseline = 0;
  int last = -1;  // solid count of the most recent probe, -1 if rejected
  StrategyStats* cur = nullptr;

  explicit SearchCtx(const Polytope& P_, const SearchSettings& s)
      : P(P_), st(s) {
    rep.target = s.target > 0 ? s.target : 2 * P_.n + 4;
    baseline = 2 * P_.n + 2;
  }

  bool exhausted() const { return rep.probes_used >= st.budget; }

  // Counts solid records at y; marginal points get nudged once.
  bool probe(const Vec& y_in) {
    last = -1;
    if (exhausted()) return rep.achieved;
    Vec y = y_in;
    if (P.interior_margin(y) <= st.tol) return false;
    ++rep.probes_used;
    if (cur) ++cur->probes;
    CountResult c = count_normals(P, y, st.tol);
    if (c.marginal > 0) {
      Vec y2 = y * (1.0 - 2.7e-9) + Vec::Constant(P.n, 1.3e-9);
      if (P.interior_margin(y2) > st.tol) {
        CountResult c2 = count_normals(P, y2, st.tol);
        if (c2.marginal == 0) { c = c2; y = y2; }
      }
      if (c.marginal > 0) return false;
    }
    last = c.count;
    if (c.count >= baseline && rep.baseline_hit_probe < 0)
      rep.baseline_hit_probe = rep.probes_used;
    if (c.count > rep.best_count) {
      rep.best_count = c.count;
      rep.best_point = y;
      if (rep.best_count >= rep.target) rep.achieved = true;
    }
    if (cur && c.count > cur->best) cur->best = c.count;
    return rep.achieved;
  }
};

// Strategy A: the centroid, a deep-interior point found by pushing the
// facet margins up, and a spread of rejection-sampled interior points.
inline bool strategy_deep(SearchCtx& cx, RngStream rng) {
  const Polytope& P = cx.P;
  Vec c = Vec::Zero(P.n);  // vertex centroid is the origin after normalization
  if (cx.probe(c)) return true;

  // Subgradient ascent on the interior margin (Chebyshev-like center).
  Vec y = c;
  double step = 0.2;
  for (int it = 0; it < 200 && !cx.exhausted(); ++it) {
    double m = P.interior_margin(y);
    Vec g = Vec::Zero(P.n);
    int na = 0;
    for (const Halfspace& H : P.facets) {
      if (H.offset - H.normal.dot(y) < m + 1e-9) { g -= H.normal; ++na; }
    }
    if (na == 0) break;
    g /= na;
    double gn = g.norm();
    if (gn < 1e-12) break;
    Vec cand = y + step * g / gn;
    if (P.interior_margin(cand) > m) y = cand;
    else step *= 0.7;
    if (step < 1e-9) break;
  }
  if (cx.probe(y)) return true;

  int samples = std::min(200, cx.st.budget / 10);
  for (int s = 0; s < samples && !cx.exhausted(); ++s) {
    Vec cand = rng.gaussian_vec(P.n) * 0.4;
    if (P.interior_margin(cand) <= 1e-6) continue;
    if (cx.probe(cand)) return true;
  }
  return false;
}

// Strategy C: constructive chain through a nice codimension-3 face: certify
// it, propagate the certificate down the face lattice to a vertex, then lift
// the vertex-cone witness into the interior and travel away from the vertex.
inline bool strategy_constructive(SearchCtx& cx, RngStream rng) {
  const Polytope& P = cx.P;
  if (P.n < 3) return false;

  std::vector<int> cand_faces;
  for (const Face& f : P.faces)
    if (f.dim == P.n - 3) cand_faces.push_back(f.id);
  if (cand_faces.empty()) return false;

  CertifySettings cs;
  cs.probes = std::max(500, cx.st.budget / 50);
  cs.climb_depth = cx.st.climb_depth;

  int tried = 0;
  for (int fid : cand_faces) {
    if (cx.exhausted() || tried >= 6) break;
    NiceCertificate cert;
    try {
      cert = certify_nice(P, fid, cs, rng.uniform_int(1, 1 << 30));
    } catch (const Error&) {
      continue;
    }
    if (!cert.found) continue;
    ++tried;

    // Walk the certificate down to a vertex of the face.
    NiceCertificate cur = cert;
    bool stuck = false;
    while (P.faces[cur.face_id].dim > 0 && !cx.exhausted()) {
      PropagationReport pr;
      try {
        pr = check_propagation(P, cur, cs, rng.uniform_int(1, 1 << 30));
      } catch (const Error&) {
        stuck = true;
        break;
      }
      const PropagationItem* nxt = nullptr;
      for (const auto& item : pr.items)
        if (item.achieved) { nxt = &item; break; }
      if (!nxt) { stuck = true; break; }
      cur = nxt->certificate;
    }
    if (stuck || P.faces[cur.face_id].dim != 0) continue;

    // Lift: slide the vertex-cone witness toward the vertex to bring it
    // inside P, then travel away from the vertex scanning for births.
    Vec v = P.faces[cur.face_id].centroid;
    Vec w = cur.witness;
    for (double s : {0.5, 0.25, 0.1, 0.05, 0.02, 0.008}) {
      Vec y0 = v + s * (w - v);
      if (P.interior_margin(y0) <= 1e-7) continue;
      if (cx.probe(y0)) return true;
      Vec dir = y0 - v;
      // Travel away from the vertex until exiting, sampling along the way.
      double lo = 1.0, hi = 1.0;
      while (hi < 1e3) {
        Vec yt = v + hi * dir;
        if (P.interior_margin(yt) <= 1e-7) break;
        hi *= 1.25;
      }
      for (int stp = 1; stp <= 40 && !cx.exhausted(); ++stp) {
        double t = lo + (hi - lo) * stp / 41.0;
        if (cx.probe(v + t * dir)) return true;
      }
    }
  }
  return false;
}

// Strategy B: points close to vertices and rays from near-vertex points
// through the interior.
inline bool strategy_vertex_proximal(SearchCtx& cx, RngStream rng) {
  const Polytope& P = cx.P;
  std::vector<int> order(P.num_vertices());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.uniform_int(0, static_cast<int>(i) - 1)]);

  for (int vi : order) {
    if (cx.exhausted()) break;
    Vec v = P.vertex(vi);
    for (double s : {0.02, 0.05, 0.1, 0.2}) {
      Vec y = (1.0 - s) * v;  // pull toward the vertex centroid (origin)
      if (P.interior_margin(y) <= 1e-8) continue;
      if (cx.probe(y)) return true;
    }
    // Ray from near the vertex through the origin and beyond.
    Vec start = 0.95 * v;
    if (P.interior_margin(start) <= 1e-8) continue;
    Vec dir = -v;
    double hi = 1.0;
    while (hi < 32.0) {
      if (P.interior_margin(start + hi * dir) <= 1e-8) break;
      hi *= 1.3;
    }
    for (int stp = 1; stp <= 24 && !cx.exhausted(); ++stp) {
      double t = hi * stp / 25.0;
      if (cx.probe(start + t * dir)) return true;
    }
  }
  return false;
}

// Strategy D: random restarts with Gaussian hill climbing on the count.
inline bool strategy_hill_climb(SearchCtx& cx, RngStream rng) {
  const Polytope& P = cx.P;
  while (!cx.exhausted()) {
    Vec y = rng.gaussian_vec(P.n) * 0.5;
    if (P.interior_margin(y) <= 1e-7) continue;
    if (cx.probe(y)) return true;
    int here = cx.last;
    double sigma = 0.05;
    for (int d = 0; d < cx.st.climb_depth && !cx.exhausted(); ++d) {
      Vec cand = y + sigma * rng.gaussian_vec(P.n);
      if (P.interior_margin(cand) <= 1e-7) { sigma *= 0.8; continue; }
      if (cx.probe(cand)) return true;
      if (cx.last > here) { y = cand; here = cx.last; sigma *= 1.1; }
      else sigma *= 0.9;
      if (sigma < 1e-7) break;
    }
  }
  return false;
}

}  // namespace detail

inline SearchReport max_normals_search(const Polytope& P, const SearchSettings& st = {}) {
  detail::SearchCtx cx(P, st);
  cx.rep.best_point = Vec::Zero(P.n);
  RngStream root(splitmix64(st.seed ^ 0x7365617263ull));

  struct Entry {
    const char* name;
    bool (*run)(detail::SearchCtx&, RngStream);
  };
  const Entry plan[] = {
      {"deep", detail::strategy_deep},
      {"constructive", detail::strategy_constructive},
      {"vertex_proximal", detail::strategy_vertex_proximal},
      {"hill_climb", detail::strategy_hill_climb},
  };
  uint64_t idx = 0;
  for (const Entry& e : plan) {
    cx.rep.strategies.push_back({e.name, 0, 0});
    cx.cur = &cx.rep.strategies.back();
    bool done = e.run(cx, root.child(++idx));
    cx.cur = nullptr;
    if (done || cx.exhausted()) break;
  }
  cx.rep.best_point_input = P.to_input(cx.rep.best_point);
  return cx.rep;
}

// ---------------------------------------------------------------------------
// Batch verification.

struct VerifyInstance {
  uint64_t seed = 0;
  int best = 0;
  int target = 0;
  bool achieved = false;
  bool baseline_fast = false;  // reached 2n+2 within the first 1000 probes
  int probes_used = 0;
  int budget_used = 0;
  Vec point_input;
};

struct VerifyReport {
  int n = 0;
  int m = 0;
  int count = 0;
  int achieved = 0;
  int baseline_fast = 0;
  bool all_achieved = false;
  std::vector<VerifyInstance> instances;
};

// One generated instance: build the polytope from its derived seed, search,
// retry once with a doubled budget on a miss, and re-evaluate the reported
// point from scratch as a soundness check.
inline VerifyInstance verify_instance(const GeneratorSpec& spec, uint64_t inst_seed,
                                      const SearchSettings& base) {
  Polytope P = random_simple_polytope(spec, inst_seed);

  SearchSettings st = base;
  st.seed = inst_seed ^ 0x5a5a5a5aull;
  SearchReport sr = max_normals_search(P, st);
  if (!sr.achieved) {
    SearchSettings st2 = st;
    st2.budget = st.budget * 2;
    st2.seed = st.seed ^ 0xd0d0d0d0ull;
    SearchReport sr2 = max_normals_search(P, st2);
    if (sr2.best_count > sr.best_count) sr = sr2;
  }

  VerifyInstance vi;
  vi.seed = inst_seed;
  vi.target = sr.target;
  vi.best = sr.best_count;
  vi.achieved = sr.achieved;
  vi.baseline_fast = sr.baseline_hit_probe >= 0 && sr.baseline_hit_probe <= 1000;
  vi.probes_used = sr.probes_used;
  vi.budget_used = sr.achieved ? base.budget : base.budget * 2;
  vi.point_input = sr.best_point_input;

  if (sr.best_count > 0) {
    // Independent recount at the reported point.
    Vec y = P.to_internal(vi.point_input);
    CountResult c = count_normals(P, y, base.tol);
    require(c.interior && c.marginal == 0 && c.count == sr.best_count,
            Errc::consistency_alarm, "reported point failed re-evaluation");
  }
  return vi;
}

inline uint64_t verify_instance_seed(uint64_t seed, int i) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ull * (i + 1));
}

// Generates `count` random polytopes and searches each for a 2n+4 point.
// Instances are independent, seeded from the batch seed by index, and the
// report order matches the index order, so the result does not depend on
// `jobs`.
inline VerifyReport verify_theorem(const GeneratorSpec& spec, int count, uint64_t seed,
                                   const SearchSettings& base = {}, int jobs = 1) {
  VerifyReport rep;
  rep.n = spec.n;
  rep.m = spec.m;
  rep.count = count;
  rep.instances.resize(count);

  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i)
      rep.instances[i] = verify_instance(spec, verify_instance_seed(seed, i), base);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr first_err;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= count) return;
          try {
            rep.instances[i] =
                verify_instance(spec, verify_instance_seed(seed, i), base);
          } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!first_err) first_err = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_err) std::rethrow_exception(first_err);
  }

  for (const VerifyInstance& vi : rep.instances) {
    if (vi.achieved) ++rep.achieved;
    if (vi.baseline_fast) ++rep.baseline_fast;
  }
  rep.all_achieved = rep.achieved == rep.count;
  return rep;
}

// ---------------------------------------------------------------------------
// Census of codimension-3 face links.

struct CensusEntry {
  int face_id = -1;
  TriangleVerdict verdict = TriangleVerdict::Degenerate;
  double margin = 0;
  bool consistent = true;  // skew labelling matches the global dihedral signs
};

struct SkewCensus {
  int n = 0;
  int nice = 0;
  int skew = 0;
  int degenerate = 0;
  std::vector<CensusEntry> entries;
  std::map<int, bool> acute_ridge;  // (n-2)-face id -> dihedral angle acute
  bool all_skew = false;
  bool coloring_checked = false;
  ColoringStatus coloring = ColoringStatus::Unknown;
  bool alarm = false;  // n > 4, all skew, yet structurally consistent
  std::string alarm_reason;
};

// Classifies the link triangle of every codimension-3 face.  The dihedral
// angle along a codimension-2 face G (acute iff the inward facet normals
// have negative dot product) must agree with the angles of every link
// triangle G participates in; for skew links, the triangle's obtuse vertex
// must be the unique obtuse ridge among the three.  If every link is skew,
// the acute/obtuse split of the ridges induces a valid red/blue coloring in
// dimensions above four, which is impossible — that combination raises the
// alarm flag.
inline SkewCensus skew_census(const Polytope& P, double classify_tol = 1e-6) {
  require(P.n >= 4, Errc::precondition, "census needs dimension >= 4");
  SkewCensus rep;
  rep.n = P.n;

  // Global acute/obtuse paint per ridge from the facet normals.
  std::map<int, int> ridge_item;
  for (const Face& f : P.faces) {
    if (f.dim != P.n - 2) continue;
    require(f.facet_ids.size() == 2, Errc::precondition, "simple polytope expected");
    double d = P.facets[f.facet_ids[0]].normal.dot(P.facets[f.facet_ids[1]].normal);
    rep.acute_ridge[f.id] = d < 0;
  }

  for (const Face& g : P.faces) {
    if (g.dim != P.n - 3) continue;
    CensusEntry e;
    e.face_id = g.id;
    SphericalSimplex link = spherical_link(P, g.id);
    TriangleClassification cls;
    try {
      cls = classify_triangle(link.verts, classify_tol);
      e.verdict = cls.verdict;
      e.margin = cls.margin;
    } catch (const Error&) {
      e.verdict = TriangleVerdict::Degenerate;
    }

    if (e.verdict == TriangleVerdict::Skew) {
      // The link's vertices are the ridges containing g; the triangle's
      // angle at a vertex is the dihedral angle along that ridge.
      int obtuse_count = 0;
      bool match = true;
      for (int i = 0; i < 3; ++i) {
        bool acute_here = rep.acute_ridge.at(link.origin_faces[i]);
        bool is_obtuse_vertex = (i == cls.obtuse);
        if (is_obtuse_vertex == acute_here) match = false;
        if (!acute_here) ++obtuse_count;
      }
      e.consistent = match && obtuse_count == 1;
      ++rep.skew;
    } else if (e.verdict == TriangleVerdict::Nice) {
      ++rep.nice;
    } else {
      ++rep.degenerate;
    }
    rep.entries.push_back(e);
  }

  rep.all_skew = rep.skew > 0 && rep.nice == 0 && rep.degenerate == 0;

  if (rep.all_skew) {
    bool consistent = true;
    for (const auto& e : rep.entries) consistent = consistent && e.consistent;
    // All-skew would paint every ridge by its dihedral angle with exactly
    // two acute and one obtuse around each codimension-3 face — a valid
    // coloring of the instance.
    ColoringInstance inst = instance_from_polytope(P);
    std::vector<Paint> paint(inst.items, Paint::Unset);
    for (int i = 0; i < inst.items; ++i)
      paint[i] = rep.acute_ridge.at(inst.item_face_ids[i]) ? Paint::Red : Paint::Blue;
    bool valid = validate_coloring(inst, paint);
    rep.coloring_checked = true;
    rep.coloring = valid ? ColoringStatus::Satisfiable : ColoringStatus::Unknown;
    if (P.n > 4 && consistent && valid) {
      rep.alarm = true;
      rep.alarm_reason =
          "every codimension-3 link is skew in dimension > 4, and the induced "
          "ridge coloring is valid; expected obstruction is absent";
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The dedicated pipeline for 4-dimensional all-skew spherical tetrahedra:
// acute-edge cycle, minmax center, and the eight-short-criticals check, run
// on the link of each vertex (a spherical tetrahedron in S^3).

struct TetraPipelineEntry {
  int vertex_face_id = -1;
  bool all_skew = false;
  bool attempted = false;
  EightShortReport eight;
};

struct TetraPipelineReport {
  std::vector<TetraPipelineEntry> entries;
  int all_skew_vertices = 0;
  int passed = 0;
};

inline TetraPipelineReport vertex_link_pipeline(const Polytope& P, double tol = 1e-6,
                                                uint64_t seed = 1) {
  require(P.n == 4, Errc::precondition, "vertex-link pipeline is 4-dimensional");
  TetraPipelineReport rep;
  for (const Face& v : P.faces) {
    if (v.dim != 0) continue;
    TetraPipelineEntry e;
    e.vertex_face_id = v.id;
    SphericalSimplex link = spherical_link(P, v.id);
    auto figures = classify_vertex_figures(link, tol);
    e.all_skew = std::all_of(figures.begin(), figures.end(), [](const auto& c) {
      return c.verdict == TriangleVerdict::Skew;
    });
    if (e.all_skew) {
      ++rep.all_skew_vertices;
      e.attempted = true;
      e.eight = verify_eight_short_criticals(link, tol, seed);
      if (e.eight.pass) ++rep.passed;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace polynorm
