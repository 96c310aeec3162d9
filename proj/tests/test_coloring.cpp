#include <catch2/catch_amalgamated.hpp>

#include <polynorm/coloring.hpp>
#include <polynorm/io.hpp>
#include <polynorm/searchverify.hpp>

#include <fstream>
#include <sstream>

using namespace polynorm;

TEST_CASE("4-simplex instance is unsatisfiable by sweep and by counting") {
  Polytope P = canned_polytope("simplex4");
  ColoringInstance inst = instance_from_polytope(P);
  REQUIRE(inst.items == 10);
  REQUIRE(inst.triples.size() == 10);
  REQUIRE(regular_item_degree(inst) == 3);

  ColoringResult sweep = find_coloring(inst, ColoringMode::Exhaustive);
  REQUIRE(sweep.status == ColoringStatus::Unsatisfiable);
  REQUIRE(sweep.exhaustive);
  REQUIRE(sweep.nodes == 1024);  // full 2^10 sweep really ran

  // 3 * |Red| = 2 * 10 has no integer solution.
  ColoringResult certif = find_coloring(inst, ColoringMode::Auto);
  REQUIRE(certif.status == ColoringStatus::Unsatisfiable);
  REQUIRE(certif.divisibility_certificate);
  REQUIRE(certif.regular_degree == 3);

  ColoringResult bt = find_coloring(inst, ColoringMode::Backtracking);
  REQUIRE(bt.status == ColoringStatus::Unsatisfiable);
}

TEST_CASE("3-simplex instance is satisfiable with four red edges") {
  Polytope P = canned_polytope("simplex3");
  ColoringInstance inst = instance_from_polytope(P);
  REQUIRE(inst.items == 6);   // edges of the tetrahedron
  REQUIRE(inst.triples.size() == 4);  // vertices

  ColoringResult res = find_coloring(inst, ColoringMode::Exhaustive);
  REQUIRE(res.status == ColoringStatus::Satisfiable);
  REQUIRE(validate_coloring(inst, res.colors));
  int red = 0;
  for (Paint p : res.colors) red += p == Paint::Red ? 1 : 0;
  REQUIRE(red == 4);  // forced by 2*|Red| = 2*4

  // The two blue edges cover all four triples once each: a perfect matching.
  std::vector<int> blue_hits(inst.triples.size(), 0);
  for (size_t t = 0; t < inst.triples.size(); ++t)
    for (int i : inst.triples[t])
      if (res.colors[i] == Paint::Blue) ++blue_hits[t];
  for (int h : blue_hits) REQUIRE(h == 1);
}

TEST_CASE("4-cube instance is satisfiable with sixteen red squares") {
  Polytope P = canned_polytope("cube4");
  ColoringInstance inst = instance_from_polytope(P);
  REQUIRE(inst.items == 24);          // squares
  REQUIRE(inst.triples.size() == 32); // edges
  REQUIRE(regular_item_degree(inst) == 4);

  ColoringResult res = find_coloring(inst, ColoringMode::Backtracking);
  REQUIRE(res.status == ColoringStatus::Satisfiable);
  REQUIRE(validate_coloring(inst, res.colors));
  int red = 0;
  for (Paint p : res.colors) red += p == Paint::Red ? 1 : 0;
  REQUIRE(red == 16);  // forced by 4*|Red| = 2*32
}

TEST_CASE("stored 4-cube coloring witness revalidates") {
  Polytope P = canned_polytope("cube4");
  ColoringInstance inst = instance_from_polytope(P);
  std::ifstream in(std::string(POLYNORM_SOURCE_DIR) + "/data/cube4_coloring.json");
  REQUIRE(bool(in));
  json j;
  in >> j;
  std::vector<Paint> colors;
  for (const auto& c : j.at("colors"))
    colors.push_back(c.get<std::string>() == "red" ? Paint::Red : Paint::Blue);
  REQUIRE(validate_coloring(inst, colors));
}

TEST_CASE("vertex cuts look like the simplex of one lower dimension") {
  Polytope C4 = canned_polytope("cube4");
  ColoringInstance cut = vertex_cut_instance(C4, C4.faces_by_dim[0].front());
  Polytope S3 = canned_polytope("simplex3");
  ColoringInstance ref = instance_from_polytope(S3);

  REQUIRE(cut.items == ref.items);
  REQUIRE(cut.triples.size() == ref.triples.size());
  // Same incidence structure: every item in the same number of triples,
  // every pair of triples sharing exactly one item.
  REQUIRE(regular_item_degree(cut) == regular_item_degree(ref));
  auto shared = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
    int s = 0;
    for (int x : a)
      for (int y : b) s += x == y ? 1 : 0;
    return s;
  };
  for (size_t i = 0; i < cut.triples.size(); ++i)
    for (size_t j = i + 1; j < cut.triples.size(); ++j)
      REQUIRE(shared(cut.triples[i], cut.triples[j]) ==
              shared(ref.triples[i], ref.triples[j]));

  ColoringResult res = find_coloring(cut, ColoringMode::Exhaustive);
  REQUIRE(res.status == ColoringStatus::Satisfiable);
}

TEST_CASE("solver modes agree on random instances") {
  RngStream rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    ColoringInstance inst;
    inst.items = 6 + rng.uniform_int(0, 6);
    int triples = 2 + rng.uniform_int(0, 8);
    for (int t = 0; t < triples; ++t) {
      std::array<int, 3> pick{};
      pick[0] = rng.uniform_int(0, inst.items - 1);
      do { pick[1] = rng.uniform_int(0, inst.items - 1); } while (pick[1] == pick[0]);
      do {
        pick[2] = rng.uniform_int(0, inst.items - 1);
      } while (pick[2] == pick[0] || pick[2] == pick[1]);
      inst.triples.push_back(pick);
    }
    ColoringResult a = find_coloring(inst, ColoringMode::Exhaustive);
    ColoringResult b = find_coloring(inst, ColoringMode::Backtracking);
    REQUIRE(a.status == b.status);
    if (a.status == ColoringStatus::Satisfiable) {
      REQUIRE(validate_coloring(inst, a.colors));
      REQUIRE(validate_coloring(inst, b.colors));
    }
  }
}

TEST_CASE("constraint files round trip") {
  Polytope P = canned_polytope("simplex4");
  ColoringInstance inst = instance_from_polytope(P);
  std::stringstream ss;
  write_instance(ss, inst);
  ColoringInstance back = read_instance(ss);
  REQUIRE(back.items == inst.items);
  REQUIRE(back.triples == inst.triples);
}

TEST_CASE("malformed constraint files are rejected") {
  auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return read_instance(ss);
  };
  REQUIRE_THROWS_AS(parse("t 1 2 3\n"), Error);                  // triple first
  REQUIRE_THROWS_AS(parse("p rbcol 3 1\nt 1 2 4\n"), Error);     // out of range
  REQUIRE_THROWS_AS(parse("p rbcol 3 2\nt 1 2 3\n"), Error);     // count mismatch
  REQUIRE_THROWS_AS(parse("p wrong 3 0\n"), Error);              // bad format tag
  REQUIRE_THROWS_AS(parse("c only a comment\n"), Error);         // no header
}

TEST_CASE("colorings with wrong counts fail validation") {
  ColoringInstance inst;
  inst.items = 3;
  inst.triples.push_back({0, 1, 2});
  REQUIRE(validate_coloring(inst, {Paint::Red, Paint::Red, Paint::Blue}));
  REQUIRE_FALSE(validate_coloring(inst, {Paint::Red, Paint::Blue, Paint::Blue}));
  REQUIRE_FALSE(validate_coloring(inst, {Paint::Red, Paint::Red, Paint::Red}));
  REQUIRE_FALSE(validate_coloring(inst, {Paint::Red, Paint::Red, Paint::Unset}));
  REQUIRE_FALSE(validate_coloring(inst, {Paint::Red, Paint::Red}));
}
