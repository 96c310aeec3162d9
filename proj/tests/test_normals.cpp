#include <catch2/catch_amalgamated.hpp>

#include <polynorm/normals.hpp>
#include <polynorm/searchverify.hpp>

#include <set>

#include "oracle.hpp"

using namespace polynorm;

namespace {

// Interior point sampler that rejects marginal configurations, checked at a
// widened band so oracle comparisons are well-separated.  Points are random
// vertex mixtures, so even thin shapes are covered, and the depth floor is
// relative to the centroid's own depth rather than a fixed constant.
Vec solid_interior_point(const Polytope& P, RngStream& rng, double band = 1e-5) {
  const int V = P.num_vertices();
  Vec c = Vec::Zero(P.n);
  for (int i = 0; i < V; ++i) c += P.vertex(i);
  c /= static_cast<double>(V);
  const double depth_floor = 0.25 * P.interior_margin(c);
  for (int tries = 0; tries < 2000; ++tries) {
    Vec y = Vec::Zero(P.n);
    double total = 0.0;
    for (int i = 0; i < V; ++i) {
      double w = -std::log(rng.uniform() + 1e-300);
      y += w * P.vertex(i);
      total += w;
    }
    y /= total;
    if (P.interior_margin(y) < depth_floor) continue;
    NormalsReport rep = normals_from_point(P, y, band);
    if (rep.marginal_count == 0) return y;
  }
  FAIL("could not sample a solid interior point");
  return Vec::Zero(P.n);
}

}  // namespace

TEST_CASE("cube center sees 26 normals with tally 6-12-8") {
  Polytope P = canned_polytope("cube3");
  Vec y = Vec::Zero(3);
  NormalsReport rep = normals_from_point(P, y);
  REQUIRE(rep.count == 26);
  REQUIRE(rep.marginal_count == 0);
  MorseTally t = morse_tally(P, rep);
  REQUIRE(t.by_index == std::vector<int>{6, 12, 8});
  REQUIRE(t.even_total);
  REQUIRE(t.alternating_sum_ok);  // 6 - 12 + 8 = 2
  REQUIRE(t.extrema_placement_ok);
}

TEST_CASE("cube center count matches the mesh oracle") {
  Polytope P = canned_polytope("cube3");
  Vec y = Vec::Zero(3);
  auto mc = oracle::mesh_critical_count(P, y, oracle::shared_icosphere());
  REQUIRE(mc.clean);
  REQUIRE(mc.count == 26);
  REQUIRE(mc.minima == 6);
  REQUIRE(mc.saddles == 12);
  REQUIRE(mc.maxima == 8);
}

TEST_CASE("equilateral triangle has six normals from every interior point") {
  Polytope P = canned_polytope("triangle");
  RngStream rng(11);
  for (int i = 0; i < 50; ++i) {
    Vec y = rng.gaussian_vec(2) * 0.3;
    if (P.interior_margin(y) < 1e-3) continue;
    CountResult c = count_normals(P, y, 1e-9);
    if (c.marginal > 0) continue;
    REQUIRE(c.count == 6);
  }
  NormalsReport rep = normals_from_point(P, Vec::Zero(2));
  MorseTally t = morse_tally(P, rep);
  REQUIRE(t.by_index == std::vector<int>{3, 3});
}

TEST_CASE("square has eight normals from every interior point") {
  Polytope P = canned_polytope("square");
  RngStream rng(12);
  int checked = 0;
  for (int i = 0; i < 80 && checked < 40; ++i) {
    Vec y = rng.gaussian_vec(2) * 0.3;
    if (P.interior_margin(y) < 1e-3) continue;
    CountResult c = count_normals(P, y, 1e-9);
    if (c.marginal > 0) continue;
    REQUIRE(c.count == 8);
    ++checked;
  }
  REQUIRE(checked >= 30);
}

TEST_CASE("point on the boundary is rejected") {
  Polytope P = canned_polytope("cube3");
  Vec y = P.vertex(0);
  REQUIRE_THROWS_MATCHES(normals_from_point(P, y), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code == Errc::point_not_interior;
                         }));
}

TEST_CASE("planar counts match the exact polygon walk oracle") {
  RngStream rng(2024);
  int trials = 0;
  for (uint64_t seed = 1; trials < 120 && seed < 60; ++seed) {
    GeneratorSpec spec;
    spec.n = 2;
    spec.m = 4 + static_cast<int>(seed % 5);
    Polytope P = random_simple_polytope(spec, seed);
    for (int rep = 0; rep < 4; ++rep) {
      Vec y = solid_interior_point(P, rng);
      auto walk = oracle::polygon_critical_count(P, y);
      if (!walk.clean) continue;
      CountResult c = count_normals(P, y, 1e-9);
      REQUIRE(c.marginal == 0);
      REQUIRE(c.count == walk.count);
      ++trials;
    }
  }
  REQUIRE(trials >= 100);
}

TEST_CASE("spatial counts match the exact plane-enumeration oracle") {
  RngStream rng(5150);
  int trials = 0;
  for (uint64_t seed = 1; trials < 40 && seed < 30; ++seed) {
    GeneratorSpec spec;
    spec.n = 3;
    spec.m = 5 + static_cast<int>(seed % 4);
    Polytope P = random_simple_polytope(spec, seed);
    for (int rep = 0; rep < 3; ++rep) {
      Vec y = solid_interior_point(P, rng);
      auto rc = oracle::region_critical_count(P, y);
      if (!rc.clean) continue;
      REQUIRE(rc.euler_ok);
      NormalsReport nr = normals_from_point(P, y, 1e-9);
      REQUIRE(nr.marginal_count == 0);
      REQUIRE(nr.count == rc.count);
      MorseTally t = morse_tally(P, nr);
      REQUIRE(t.by_index[0] == rc.minima);
      REQUIRE(t.by_index[1] == rc.saddles);
      REQUIRE(t.by_index[2] == rc.maxima);
      ++trials;
    }
  }
  REQUIRE(trials >= 30);
}

TEST_CASE("Morse structure holds on random generic polytopes") {
  RngStream rng(77);
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    GeneratorSpec spec;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.m = spec.n + 3;
    Polytope P = random_simple_polytope(spec, seed);
    for (int rep = 0; rep < 10; ++rep) {
      Vec y = solid_interior_point(P, rng);
      NormalsReport nr = normals_from_point(P, y, 1e-9);
      MorseTally t = morse_tally(P, nr);
      REQUIRE(t.even_total);
      REQUIRE(t.alternating_sum_ok);
      REQUIRE(t.extrema_placement_ok);
      REQUIRE(nr.count >= 2);  // at least one minimum and one maximum
    }
  }
}

TEST_CASE("active regions agree with direct normal detection") {
  RngStream rng(31);
  for (uint64_t seed : {3ull, 9ull}) {
    GeneratorSpec spec;
    spec.n = 3;
    spec.m = 6;
    Polytope P = random_simple_polytope(spec, seed);
    std::vector<ActiveRegion> regions;
    for (const Face& f : P.faces) regions.push_back(active_region(P, f.id));

    for (int rep = 0; rep < 100; ++rep) {
      Vec y = solid_interior_point(P, rng);
      NormalsReport nr = normals_from_point(P, y, 1e-9);
      std::set<int> present;
      for (const auto& r : nr.records)
        if (!r.marginal) present.insert(r.face_id);
      for (const auto& ar : regions) {
        bool inside = ar.margin(y) > 1e-7;
        bool outside = ar.margin(y) < -1e-7;
        if (inside) REQUIRE(present.count(ar.face_id) == 1);
        if (outside) REQUIRE(present.count(ar.face_id) == 0);
      }
    }
  }
}

TEST_CASE("segment scans refine every crossing to a plus-minus two step") {
  RngStream rng(404);
  GeneratorSpec spec;
  spec.n = 3;
  spec.m = 7;
  Polytope P = random_simple_polytope(spec, 5);
  int scans = 0;
  while (scans < 12) {
    Vec a = solid_interior_point(P, rng);
    Vec b = solid_interior_point(P, rng);
    if ((a - b).norm() < 0.2) continue;
    SegmentScan scan = scan_segment(P, a, b, 64, 40);
    REQUIRE(scan.all_resolved);
    for (const auto& c : scan.crossings) {
      REQUIRE(c.resolved);
      REQUIRE(std::abs(c.count_after - c.count_before) == 2);
    }
    // Endpoint counts agree with direct evaluation.
    REQUIRE(scan.samples.front().count == count_normals(P, a).count);
    REQUIRE(scan.samples.back().count == count_normals(P, b).count);

    // Scan reversal sees the same crossings mirrored.
    SegmentScan rev = scan_segment(P, b, a, 64, 40);
    REQUIRE(rev.crossings.size() == scan.crossings.size());
    for (size_t i = 0; i < rev.crossings.size(); ++i) {
      const auto& fwd = scan.crossings[scan.crossings.size() - 1 - i];
      const auto& bwd = rev.crossings[i];
      REQUIRE(bwd.t_lo == Catch::Approx(1.0 - fwd.t_hi).margin(1e-6));
      REQUIRE(bwd.count_before == fwd.count_after);
      REQUIRE(bwd.count_after == fwd.count_before);
    }
    ++scans;
  }
}
