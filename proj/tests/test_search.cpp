#include <catch2/catch_amalgamated.hpp>

#include <polynorm/io.hpp>
#include <polynorm/searchverify.hpp>

using namespace polynorm;

TEST_CASE("generator produces bounded simple generic polytopes") {
  for (int n : {2, 3, 4}) {
    GeneratorSpec spec;
    spec.n = n;
    spec.m = n + 4;
    Polytope P = random_simple_polytope(spec, 99 + n);
    REQUIRE(P.n == n);
    REQUIRE(P.num_facets() <= spec.m);  // facets inactive at the hull may drop
    REQUIRE(P.num_facets() >= n + 1);
    REQUIRE(P.euler_ok());
    REQUIRE(check_genericity(P, spec.genericity).passed);
    for (const auto& vf : P.vertex_facets) REQUIRE(static_cast<int>(vf.size()) == n);
  }
}

TEST_CASE("generator rejects impossible requests") {
  GeneratorSpec spec;
  spec.n = 3;
  spec.m = 3;  // cannot bound R^3 with three halfspaces
  REQUIRE_THROWS_AS(random_simple_polytope(spec, 1), Error);
}

TEST_CASE("canned shapes have their textbook face counts") {
  REQUIRE(canned_polytope("triangle").faces.size() == 6);
  REQUIRE(canned_polytope("square").faces.size() == 8);
  REQUIRE(canned_polytope("cube3").faces.size() == 26);
  REQUIRE(canned_polytope("simplex3").faces.size() == 14);
  REQUIRE(canned_polytope("simplex4").faces.size() == 30);
  REQUIRE(canned_polytope("cube4").faces.size() == 80);
  REQUIRE_THROWS_AS(canned_polytope("dodecahedron"), Error);
}

TEST_CASE("triangle search tops out at six normals") {
  Polytope P = canned_polytope("triangle");
  SearchSettings st;
  st.budget = 3000;
  st.seed = 4;
  SearchReport rep = max_normals_search(P, st);
  REQUIRE(rep.target == 8);
  REQUIRE(rep.best_count == 6);
  REQUIRE_FALSE(rep.achieved);
}

TEST_CASE("cube search reaches the 2n+4 target instantly at the center") {
  Polytope P = canned_polytope("cube3");
  SearchSettings st;
  st.budget = 100;
  SearchReport rep = max_normals_search(P, st);
  REQUIRE(rep.achieved);
  REQUIRE(rep.best_count >= 10);
  REQUIRE(rep.probes_used <= 5);
}

TEST_CASE("random 3-polytopes yield a 2n+4 point within budget") {
  GeneratorSpec spec;
  spec.n = 3;
  spec.m = 6;
  for (uint64_t seed : {21ull, 22ull}) {
    Polytope P = random_simple_polytope(spec, seed);
    SearchSettings st;
    st.budget = 60000;
    st.seed = seed;
    SearchReport rep = max_normals_search(P, st);
    INFO("seed " << seed << " best " << rep.best_count);
    REQUIRE(rep.achieved);
    REQUIRE(rep.baseline_hit_probe >= 1);
    REQUIRE(rep.baseline_hit_probe <= 1000);

    // The reported point re-evaluates to the reported count.
    CountResult c = count_normals(P, P.to_internal(rep.best_point_input));
    REQUIRE(c.count == rep.best_count);
  }
}

TEST_CASE("thin tetrahedron attains exactly ten") {
  Polytope P = canned_polytope("thin_tetrahedron");
  SearchSettings st;
  st.budget = 60000;
  st.seed = 12;
  SearchReport rep = max_normals_search(P, st);
  REQUIRE(rep.achieved);       // 2n+4 = 10 for n = 3
  REQUIRE(rep.best_count == 10);
}

TEST_CASE("verification batches are deterministic across thread counts") {
  GeneratorSpec spec;
  spec.n = 3;
  spec.m = 6;
  SearchSettings st;
  st.budget = 60000;
  VerifyReport a = verify_theorem(spec, 4, 77, st, 1);
  VerifyReport b = verify_theorem(spec, 4, 77, st, 3);
  REQUIRE(a.all_achieved);
  REQUIRE(verify_report_to_json(a).dump() == verify_report_to_json(b).dump());
}

TEST_CASE("census of the 4-cube: all links are right-angled") {
  Polytope P = canned_polytope("cube4");
  SkewCensus rep = skew_census(P);
  REQUIRE(rep.entries.size() == 32);  // one per edge
  REQUIRE(rep.degenerate == 32);
  REQUIRE(rep.skew == 0);
  REQUIRE(rep.nice == 0);
  REQUIRE_FALSE(rep.all_skew);
  REQUIRE_FALSE(rep.alarm);
}

TEST_CASE("census runs clean on random generic 4-polytopes") {
  GeneratorSpec spec;
  spec.n = 4;
  spec.m = 7;
  for (uint64_t seed : {5ull, 15ull}) {
    Polytope P = random_simple_polytope(spec, seed);
    SkewCensus rep = skew_census(P);
    REQUIRE(rep.entries.size() == P.faces_by_dim[1].size());
    REQUIRE(rep.nice + rep.skew + rep.degenerate ==
            static_cast<int>(rep.entries.size()));
    for (const auto& e : rep.entries) REQUIRE(e.consistent);
    REQUIRE_FALSE(rep.alarm);  // the alarm cannot fire in dimension four
  }
}

TEST_CASE("census needs dimension four or higher") {
  Polytope P = canned_polytope("cube3");
  REQUIRE_THROWS_MATCHES(skew_census(P), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code == Errc::precondition;
                         }));
}
