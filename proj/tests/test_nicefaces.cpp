#include <catch2/catch_amalgamated.hpp>

#include <polynorm/nicefaces.hpp>
#include <polynorm/searchverify.hpp>

#include <map>
#include <set>

using namespace polynorm;

namespace {

Vec deep_cone_point(const Cone& C, double t = 0.5) {
  Vec y = C.base;
  for (const Vec& d : C.ray_dirs) y += t * d;
  return y;
}

}  // namespace

TEST_CASE("cube vertex cone: every interior point carries seven criticals") {
  Polytope P = canned_polytope("cube3");
  int vid = P.faces_by_dim[0].front();
  Cone C = cone_of_face(P, vid);
  RngStream rng(5);

  for (int trial = 0; trial < 25; ++trial) {
    Vec y = C.base;
    for (const Vec& d : C.ray_dirs) y += (0.05 + rng.uniform()) * d;
    ConeCriticalReport rep = cone_sqd_critical_points(P, C, y);
    REQUIRE(rep.marginal_count == 0);
    REQUIRE(rep.count == 7);

    // One record per stratum: the apex, three edges, three squares.
    std::map<int, int> by_dim;
    for (const auto& r : rep.records) {
      ++by_dim[r.dim];
      REQUIRE(r.slack > 0);
    }
    REQUIRE(by_dim[0] == 1);
    REQUIRE(by_dim[1] == 3);
    REQUIRE(by_dim[2] == 3);
  }
}

TEST_CASE("cone criticals are invariant under scaling from the apex") {
  Polytope P = canned_polytope("cube3");
  int vid = P.faces_by_dim[0].front();
  Cone C = cone_of_face(P, vid);
  Vec y0 = deep_cone_point(C, 0.37);
  ConeCriticalReport base = cone_sqd_critical_points(P, C, y0);
  for (double r : {0.1, 0.5, 2.0, 7.5}) {
    Vec y = C.base + r * (y0 - C.base);
    ConeCriticalReport rep = cone_sqd_critical_points(P, C, y);
    REQUIRE(rep.count == base.count);
    std::multiset<int> got, want;
    for (const auto& rec : rep.records) got.insert(rec.face_id);
    for (const auto& rec : base.records) want.insert(rec.face_id);
    REQUIRE(got == want);
  }
}

TEST_CASE("points outside the cone are rejected") {
  Polytope P = canned_polytope("cube3");
  int vid = P.faces_by_dim[0].front();
  Cone C = cone_of_face(P, vid);
  Vec y = C.base;
  for (const Vec& d : C.ray_dirs) y -= 0.2 * d;
  REQUIRE_THROWS_MATCHES(cone_sqd_critical_points(P, C, y), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code == Errc::point_not_in_cone;
                         }));
}

TEST_CASE("cone critical counts are odd on random generic polytopes") {
  RngStream rng(606);
  int evaluated = 0;
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    GeneratorSpec spec;
    spec.n = 3 + static_cast<int>(seed % 2);
    spec.m = spec.n + 3;
    Polytope P = random_simple_polytope(spec, seed);
    for (const Face& f : P.faces) {
      if (f.dim == P.n - 1) continue;  // facet cones are halfspaces
      Cone C = cone_of_face(P, f.id);
      for (int t = 0; t < 3; ++t) {
        Vec y = C.base;
        for (const Vec& d : C.ray_dirs) y += (0.1 + rng.uniform()) * d;
        for (int c = 0; c < f.tangent.cols(); ++c)
          y += rng.uniform(-0.4, 0.4) * f.tangent.col(c);
        if (C.interior_margin(y) < 1e-7) continue;
        ConeCriticalReport rep = cone_sqd_critical_points(P, C, y);
        if (rep.marginal_count > 0) continue;
        REQUIRE(rep.count % 2 == 1);
        ++evaluated;
      }
    }
  }
  REQUIRE(evaluated >= 150);
}

TEST_CASE("cube vertices certify nice with seven criticals") {
  Polytope P = canned_polytope("cube3");
  for (int vid : P.faces_by_dim[0]) {
    NiceCertificate cert = certify_nice(P, vid);
    REQUIRE(cert.found);
    REQUIRE(cert.k == 3);
    REQUIRE(cert.target == 7);
    REQUIRE(cert.count >= 7);
  }
}

TEST_CASE("perturbed cube vertices still certify nice") {
  RngStream rng(8);
  std::vector<Halfspace> hs;
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {-1.0, 1.0}) {
      Vec u = Vec::Zero(3);
      u[axis] = s;
      hs.push_back({u + 5e-3 * rng.gaussian_vec(3), 1.0});
    }
  Polytope P = build_polytope_hrep(3, hs);
  for (int vid : P.faces_by_dim[0]) {
    NiceCertificate cert = certify_nice(P, vid);
    REQUIRE(cert.found);
    REQUIRE(cert.count >= 7);

    // The certificate survives a tiny witness perturbation.
    Cone cone = cone_of_face(P, vid);
    Vec w = cert.witness + Vec::Constant(3, 1e-8);
    if (cone.interior_margin(w) > 1e-9) {
      ConeCriticalReport rep = cone_sqd_critical_points(P, cone, w);
      REQUIRE(rep.count + rep.marginal_count >= 7);
    }
  }
}

TEST_CASE("certification requires codimension at least three") {
  Polytope P = canned_polytope("cube3");
  int eid = P.faces_by_dim[1].front();
  REQUIRE_THROWS_MATCHES(certify_nice(P, eid), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code == Errc::precondition;
                         }));
}

TEST_CASE("cone records persist under translation along the face") {
  Polytope P = canned_polytope("cube4");
  int eid = P.faces_by_dim[1].front();  // an edge: codimension 3
  const Face& f = P.faces[eid];
  Cone C = cone_of_face(P, eid);
  Vec y0 = deep_cone_point(C, 0.4);
  ConeCriticalReport base = cone_sqd_critical_points(P, C, y0);
  REQUIRE(base.count >= 7);

  for (double t : {-0.25, 0.15, 0.3}) {
    Vec y = y0 + t * f.tangent.col(0);
    if (C.interior_margin(y) < 1e-9) continue;
    ConeCriticalReport rep = cone_sqd_critical_points(P, C, y);
    REQUIRE(rep.count == base.count);
    std::multiset<int> got, want;
    for (const auto& rec : rep.records) got.insert(rec.face_id);
    for (const auto& rec : base.records) want.insert(rec.face_id);
    REQUIRE(got == want);
  }
}

TEST_CASE("certificates propagate from a 4-cube edge to both endpoints") {
  Polytope P = canned_polytope("cube4");
  int eid = P.faces_by_dim[1].front();
  NiceCertificate cert = certify_nice(P, eid);
  REQUIRE(cert.found);
  REQUIRE(cert.count >= 7);

  PropagationReport pr = check_propagation(P, cert);
  REQUIRE(pr.items.size() == 2);  // two endpoint vertices
  REQUIRE(pr.all_achieved);
  for (const auto& item : pr.items) {
    REQUIRE(item.achieved);
    REQUIRE(item.certificate.k == 4);
    REQUIRE(item.certificate.count >= 9);
  }
}

TEST_CASE("propagation works on generic simple polytopes") {
  GeneratorSpec spec;
  spec.n = 4;
  spec.m = 7;
  Polytope P = random_simple_polytope(spec, 17);
  int certified = 0, propagated = 0;
  for (int fid : P.faces_by_dim[1]) {
    NiceCertificate cert = certify_nice(P, fid);
    if (!cert.found) continue;
    ++certified;
    PropagationReport pr = check_propagation(P, cert);
    if (pr.all_achieved) ++propagated;
    if (certified >= 3) break;
  }
  REQUIRE(certified >= 1);
  REQUIRE(propagated == certified);
}
