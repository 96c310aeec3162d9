#pragma once
// Red/blue coloring of the codimension-2 faces of a polytope subject to the
// rule that around every codimension-3 face exactly two of the three
// incident codimension-2 faces are red and one is blue.  Pure integer /
// combinatorial module: instances, solvers (exhaustive and backtracking with
// unit propagation), infeasibility certificates, and a small text format.

#include "polynorm/geometry.hpp"

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace polynorm {

enum class Paint : uint8_t { Unset = 0, Red = 1, Blue = 2 };

struct ColoringInstance {
  int items = 0;                                // number of colorable faces
  std::vector<std::array<int, 3>> triples;      // exactly-2-red-1-blue constraints
  std::vector<int> item_face_ids;               // optional polytope back-references
  std::vector<int> triple_face_ids;
};

enum class ColoringStatus { Satisfiable, Unsatisfiable, Unknown };

struct ColoringResult {
  ColoringStatus status = ColoringStatus::Unknown;
  std::vector<Paint> colors;       // valid when satisfiable
  uint64_t nodes = 0;              // search nodes explored
  bool exhaustive = false;         // every assignment was covered
  // Divisibility certificate: if every item lies in the same number d of
  // triples, a valid coloring forces d * |Red| == 2 * |triples|.  When that
  // has no integer solution the instance is unsatisfiable without search.
  bool divisibility_certificate = false;
  int regular_degree = 0;
};

inline ColoringInstance instance_from_polytope(const Polytope& P) {
  require(P.n >= 3, Errc::precondition, "coloring needs dimension >= 3");
  ColoringInstance inst;
  std::map<int, int> item_of_face;
  for (const Face& f : P.faces) {
    if (f.dim != P.n - 2) continue;
    item_of_face[f.id] = inst.items++;
    inst.item_face_ids.push_back(f.id);
  }
  for (const Face& g : P.faces) {
    if (g.dim != P.n - 3) continue;
    std::array<int, 3> t{-1, -1, -1};
    int cnt = 0;
    for (const Face& f : P.faces) {
      if (f.dim != P.n - 2) continue;
      if (std::includes(g.facet_ids.begin(), g.facet_ids.end(), f.facet_ids.begin(),
                        f.facet_ids.end())) {
        if (cnt < 3) t[cnt] = item_of_face.at(f.id);
        ++cnt;
      }
    }
    require(cnt == 3, Errc::precondition,
            "a codimension-3 face must lie in exactly three codimension-2 faces");
    inst.triples.push_back(t);
    inst.triple_face_ids.push_back(g.id);
  }
  return inst;
}

inline bool validate_coloring(const ColoringInstance& inst, const std::vector<Paint>& c) {
  if (static_cast<int>(c.size()) != inst.items) return false;
  for (const auto& t : inst.triples) {
    int red = 0, blue = 0;
    for (int i : t) {
      if (c[i] == Paint::Red) ++red;
      else if (c[i] == Paint::Blue) ++blue;
      else return false;
    }
    if (red != 2 || blue != 1) return false;
  }
  return true;
}

namespace detail {

// Repeatedly applies the two forcing rules until a fixpoint:
//  - a triple with its blue already placed forces the remaining items red;
//  - a triple with two reds forces the third item blue.
// Returns false on contradiction.
inline bool propagate_units(const ColoringInstance& inst, std::vector<Paint>& c) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : inst.triples) {
      int red = 0, blue = 0, unset = 0;
      for (int i : t) {
        if (c[i] == Paint::Red) ++red;
        else if (c[i] == Paint::Blue) ++blue;
        else ++unset;
      }
      if (red > 2 || blue > 1) return false;
      if (unset == 0) {
        if (red != 2 || blue != 1) return false;
        continue;
      }
      if (blue == 1) {
        for (int i : t)
          if (c[i] == Paint::Unset) { c[i] = Paint::Red; changed = true; }
      } else if (red == 2) {
        for (int i : t)
          if (c[i] == Paint::Unset) { c[i] = Paint::Blue; changed = true; }
      }
    }
  }
  return true;
}

inline bool backtrack(const ColoringInstance& inst, std::vector<Paint>& c,
                      uint64_t& nodes) {
  ++nodes;
  if (!propagate_units(inst, c)) return false;
  int pick = -1;
  // Branch on an item inside some constraint first; isolated items are free.
  for (const auto& t : inst.triples)
    for (int i : t)
      if (c[i] == Paint::Unset) { pick = i; break; }
  if (pick < 0) {
    for (int i = 0; i < inst.items && pick < 0; ++i)
      if (c[i] == Paint::Unset) pick = i;
  }
  if (pick < 0) return true;
  for (Paint p : {Paint::Red, Paint::Blue}) {
    std::vector<Paint> saved = c;
    c[pick] = p;
    if (backtrack(inst, c, nodes)) return true;
    c = std::move(saved);
  }
  return false;
}

}  // namespace detail

// Returns the common number of triples per item, or 0 if the incidence is
// irregular (or there are no triples).
inline int regular_item_degree(const ColoringInstance& inst) {
  if (inst.triples.empty() || inst.items == 0) return 0;
  std::vector<int> deg(inst.items, 0);
  for (const auto& t : inst.triples)
    for (int i : t) ++deg[i];
  for (int d : deg)
    if (d != deg[0]) return 0;
  return deg[0];
}

enum class ColoringMode { Auto, Exhaustive, Backtracking };

inline ColoringResult find_coloring(const ColoringInstance& inst,
                                    ColoringMode mode = ColoringMode::Auto) {
  ColoringResult res;

  // Counting certificate: with regular degree d, summing the per-triple red
  // counts over all triples gives d * |Red| = 2 * |triples|.  Only Auto mode
  // may return early on it — the explicit modes run their full procedure so
  // the two unsatisfiability proofs stay independent.
  int d = regular_item_degree(inst);
  if (d > 0) {
    res.regular_degree = d;
    long long need = 2LL * static_cast<long long>(inst.triples.size());
    if (need % d != 0 || need / d > inst.items) {
      res.divisibility_certificate = true;
      if (mode == ColoringMode::Auto) {
        res.status = ColoringStatus::Unsatisfiable;
        res.exhaustive = true;
        return res;
      }
    }
  }

  bool exhaustive = mode == ColoringMode::Exhaustive ||
                    (mode == ColoringMode::Auto && inst.items <= 20);
  if (exhaustive) {
    require(inst.items <= 30, Errc::precondition,
            "exhaustive sweep limited to 30 items");
    const uint64_t lim = 1ull << inst.items;
    for (uint64_t mask = 0; mask < lim; ++mask) {
      ++res.nodes;
      bool ok = true;
      for (const auto& t : inst.triples) {
        int red = static_cast<int>((mask >> t[0]) & 1) +
                  static_cast<int>((mask >> t[1]) & 1) +
                  static_cast<int>((mask >> t[2]) & 1);
        if (red != 2) { ok = false; break; }
      }
      if (ok) {
        res.status = ColoringStatus::Satisfiable;
        res.colors.assign(inst.items, Paint::Blue);
        for (int i = 0; i < inst.items; ++i)
          if ((mask >> i) & 1) res.colors[i] = Paint::Red;
        res.exhaustive = true;
        return res;
      }
    }
    res.status = ColoringStatus::Unsatisfiable;
    res.exhaustive = true;
    return res;
  }

  std::vector<Paint> c(inst.items, Paint::Unset);
  if (detail::backtrack(inst, c, res.nodes)) {
    for (auto& p : c)
      if (p == Paint::Unset) p = Paint::Red;  // isolated items: any color
    res.status = ColoringStatus::Satisfiable;
    res.colors = std::move(c);
  } else {
    res.status = ColoringStatus::Unsatisfiable;
    res.exhaustive = true;  // backtracking is complete
  }
  return res;
}

// The star of a vertex, viewed combinatorially: items are the codimension-2
// faces through the vertex, triples come from the codimension-3 faces
// through it.  For a simple polytope this is the instance of the
// (n-1)-simplex.
inline ColoringInstance vertex_cut_instance(const Polytope& P, int vertex_face_id) {
  const Face& v = P.faces.at(vertex_face_id);
  require(v.dim == 0, Errc::precondition, "vertex cut needs a vertex face");
  require(P.n >= 3, Errc::precondition, "coloring needs dimension >= 3");
  ColoringInstance inst;
  std::map<int, int> item_of_face;
  auto contains_vertex = [&](const Face& f) {
    return std::includes(v.facet_ids.begin(), v.facet_ids.end(), f.facet_ids.begin(),
                         f.facet_ids.end());
  };
  for (const Face& f : P.faces) {
    if (f.dim != P.n - 2 || !contains_vertex(f)) continue;
    item_of_face[f.id] = inst.items++;
    inst.item_face_ids.push_back(f.id);
  }
  for (const Face& g : P.faces) {
    if (g.dim != P.n - 3 || !contains_vertex(g)) continue;
    std::array<int, 3> t{-1, -1, -1};
    int cnt = 0;
    for (auto [fid, idx] : item_of_face) {
      const Face& f = P.faces[fid];
      if (std::includes(g.facet_ids.begin(), g.facet_ids.end(), f.facet_ids.begin(),
                        f.facet_ids.end())) {
        if (cnt < 3) t[cnt] = idx;
        ++cnt;
      }
    }
    require(cnt == 3, Errc::precondition,
            "a codimension-3 face must lie in exactly three codimension-2 faces");
    inst.triples.push_back(t);
    inst.triple_face_ids.push_back(g.id);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Text format, one instance per stream:
//   c <comment>
//   p rbcol <items> <triples>
//   t <i> <j> <k>        (1-based item indices)

inline void write_instance(std::ostream& os, const ColoringInstance& inst) {
  os << "p rbcol " << inst.items << ' ' << inst.triples.size() << '\n';
  for (const auto& t : inst.triples)
    os << "t " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

inline ColoringInstance read_instance(std::istream& is) {
  ColoringInstance inst;
  bool have_header = false;
  int expect_triples = 0;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      require(bool(ls >> fmt >> inst.items >> expect_triples) && fmt == "rbcol" &&
                  inst.items >= 0 && expect_triples >= 0,
              Errc::invalid_input, "bad problem line");
      have_header = true;
    } else if (tag == "t") {
      require(have_header, Errc::invalid_input, "triple before problem line");
      std::array<int, 3> t{};
      require(bool(ls >> t[0] >> t[1] >> t[2]), Errc::invalid_input, "bad triple line");
      for (int& x : t) {
        require(x >= 1 && x <= inst.items, Errc::invalid_input,
                "triple index out of range");
        --x;
      }
      inst.triples.push_back(t);
    } else {
      fail(Errc::invalid_input, "unknown line tag '" + tag + "'");
    }
  }
  require(have_header, Errc::invalid_input, "missing problem line");
  require(static_cast<int>(inst.triples.size()) == expect_triples, Errc::invalid_input,
          "triple count mismatch");
  return inst;
}

}  // namespace polynorm
