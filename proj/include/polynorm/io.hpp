#pragma once
// JSON (de)serialization for polytopes and reports.  All coordinates in
// files are in the caller's original frame; the internal normalized frame
// never leaks.

#include "polynorm/coloring.hpp"
#include "polynorm/nicefaces.hpp"
#include "polynorm/normals.hpp"
#include "polynorm/searchverify.hpp"
#include "polynorm/spherical.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace polynorm {

using json = nlohmann::ordered_json;

inline json to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Vec vec_from_json(const json& a, int expect_dim = -1) {
  require(a.is_array(), Errc::invalid_input, "expected a coordinate array");
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    require(a[i].is_number(), Errc::invalid_input, "coordinates must be numbers");
    v[static_cast<int>(i)] = a[i].get<double>();
  }
  require(expect_dim < 0 || v.size() == expect_dim, Errc::invalid_input,
          "coordinate dimension mismatch");
  return v;
}

// ---------------------------------------------------------------------------
// Polytope files: { "dim": n, "vertices": [[..], ..] } with an optional
// "facets": [{"normal": [..], "offset": b}] block.  When facets are present
// they take priority (the vertex list is ignored for construction).

inline json polytope_to_json(const Polytope& P) {
  json j;
  j["dim"] = P.n;
  json vs = json::array();
  for (int i = 0; i < P.num_vertices(); ++i)
    vs.push_back(to_json(P.to_input(P.vertex(i))));
  j["vertices"] = vs;
  json fs = json::array();
  for (const Halfspace& H : P.facets) {
    json f;
    f["normal"] = to_json(H.normal);
    f["offset"] = P.input_scale * H.offset + H.normal.dot(P.input_center);
    fs.push_back(f);
  }
  j["facets"] = fs;
  return j;
}

inline Polytope polytope_from_json(const json& j) {
  require(j.is_object() && j.contains("dim"), Errc::invalid_input,
          "polytope JSON needs a \"dim\" field");
  int n = j.at("dim").get<int>();
  require(n >= 2, Errc::invalid_input, "dimension must be at least 2");
  if (j.contains("facets") && !j.at("facets").empty()) {
    std::vector<Halfspace> hs;
    for (const auto& f : j.at("facets")) {
      Halfspace H;
      H.normal = vec_from_json(f.at("normal"), n);
      require(f.at("offset").is_number(), Errc::invalid_input,
              "facet offset must be a number");
      H.offset = f.at("offset").get<double>();
      hs.push_back(std::move(H));
    }
    return build_polytope_hrep(n, hs);
  }
  require(j.contains("vertices") && !j.at("vertices").empty(), Errc::invalid_input,
          "polytope JSON needs \"vertices\" or \"facets\"");
  std::vector<Vec> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(vec_from_json(v, n));
  return build_polytope(n, verts);
}

inline Polytope load_polytope(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::invalid_input, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::invalid_input, std::string("JSON parse error: ") + e.what());
  }
  return polytope_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports.  Points and bases are translated back to input coordinates;
// squared distances rescale by the square of the normalization radius.

inline json normals_report_to_json(const Polytope& P, const NormalsReport& rep) {
  const double s2 = P.input_scale * P.input_scale;
  json j;
  j["point"] = to_json(P.to_input(rep.point));
  j["count"] = rep.count;
  j["marginal_count"] = rep.marginal_count;
  json rs = json::array();
  for (const NormalRecord& r : rep.records) {
    json e;
    e["face"] = r.face_id;
    e["dim"] = r.dim;
    e["index"] = r.index;
    e["base"] = to_json(P.to_input(r.base));
    e["sqdist"] = s2 * r.sqdist;
    e["slack"] = r.slack;
    e["marginal"] = r.marginal;
    rs.push_back(std::move(e));
  }
  j["records"] = rs;
  return j;
}

inline json link_to_json(const SphericalSimplex& S) {
  json j;
  j["k"] = S.k;
  j["face"] = S.origin_face_id;
  json vs = json::array();
  for (int i = 0; i < S.k; ++i) vs.push_back(to_json(S.verts.col(i)));
  j["vertices"] = vs;
  json fs = json::array();
  for (int f : S.origin_faces) fs.push_back(f);
  j["vertex_faces"] = fs;
  return j;
}

inline json classification_to_json(const TriangleClassification& cls) {
  json j;
  j["verdict"] = verdict_name(cls.verdict);
  j["margin"] = cls.margin;
  if (cls.verdict == TriangleVerdict::Nice) j["witness"] = to_json(cls.witness);
  json edges = json::array(), angles = json::array();
  for (int i = 0; i < 3; ++i) {
    edges.push_back(cls.edges[i]);
    angles.push_back(cls.angles[i]);
  }
  j["edges"] = edges;
  j["angles"] = angles;
  if (cls.verdict == TriangleVerdict::Skew) {
    json sig;
    sig["obtuse"] = cls.obtuse;
    sig["apex"] = cls.apex;
    sig["far"] = cls.far;
    sig["consistent"] = cls.signature_ok;
    j["signature"] = sig;
  }
  return j;
}

inline json certificate_to_json(const Polytope& P, const NiceCertificate& cert) {
  const double s2 = P.input_scale * P.input_scale;
  json j;
  j["face"] = cert.face_id;
  j["codim"] = cert.k;
  j["target"] = cert.target;
  j["found"] = cert.found;
  j["count"] = cert.count;
  j["probes"] = cert.probes_used;
  j["via_link_witness"] = cert.via_link_witness;
  if (cert.count > 0) {
    j["witness"] = to_json(P.to_input(cert.witness));
    json rs = json::array();
    for (const ConeRecord& r : cert.report.records) {
      json e;
      e["face"] = r.face_id;
      e["dim"] = r.dim;
      e["index"] = r.index;
      e["base"] = to_json(P.to_input(r.base));
      e["sqdist"] = s2 * r.sqdist;
      e["slack"] = r.slack;
      e["marginal"] = r.marginal;
      rs.push_back(std::move(e));
    }
    j["records"] = rs;
  }
  return j;
}

inline json propagation_to_json(const Polytope& P, const PropagationReport& rep) {
  json j;
  j["face"] = rep.face_id;
  j["all_achieved"] = rep.all_achieved;
  json items = json::array();
  for (const PropagationItem& it : rep.items) {
    json e;
    e["facet_face"] = it.facet_face_id;
    e["achieved"] = it.achieved;
    e["certificate"] = certificate_to_json(P, it.certificate);
    items.push_back(std::move(e));
  }
  j["facets"] = items;
  return j;
}

inline json instance_to_json(const ColoringInstance& inst) {
  json j;
  j["items"] = inst.items;
  json ts = json::array();
  for (const auto& t : inst.triples) ts.push_back(json::array({t[0], t[1], t[2]}));
  j["triples"] = ts;
  if (!inst.item_face_ids.empty()) {
    json ids = json::array();
    for (int id : inst.item_face_ids) ids.push_back(id);
    j["item_faces"] = ids;
  }
  return j;
}

inline json coloring_result_to_json(const ColoringResult& res) {
  json j;
  switch (res.status) {
    case ColoringStatus::Satisfiable: j["status"] = "satisfiable"; break;
    case ColoringStatus::Unsatisfiable: j["status"] = "unsatisfiable"; break;
    default: j["status"] = "unknown"; break;
  }
  if (res.status == ColoringStatus::Satisfiable) {
    json cs = json::array();
    for (Paint p : res.colors) cs.push_back(p == Paint::Red ? "red" : "blue");
    j["colors"] = cs;
  }
  j["nodes"] = res.nodes;
  j["exhaustive"] = res.exhaustive;
  if (res.divisibility_certificate) {
    json c;
    c["kind"] = "divisibility";
    c["degree"] = res.regular_degree;
    j["certificate"] = c;
  }
  return j;
}

inline json search_report_to_json(const SearchReport& rep) {
  json j;
  j["target"] = rep.target;
  j["best_count"] = rep.best_count;
  j["achieved"] = rep.achieved;
  j["probes"] = rep.probes_used;
  j["baseline_hit_probe"] = rep.baseline_hit_probe;
  if (rep.best_point_input.size() > 0) j["best_point"] = to_json(rep.best_point_input);
  json ss = json::array();
  for (const StrategyStats& s : rep.strategies) {
    json e;
    e["name"] = s.name;
    e["probes"] = s.probes;
    e["best"] = s.best;
    ss.push_back(std::move(e));
  }
  j["strategies"] = ss;
  return j;
}

inline json verify_report_to_json(const VerifyReport& rep) {
  json j;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["count"] = rep.count;
  j["achieved"] = rep.achieved;
  j["baseline_fast"] = rep.baseline_fast;
  j["all_achieved"] = rep.all_achieved;
  json is = json::array();
  for (const VerifyInstance& vi : rep.instances) {
    json e;
    e["seed"] = vi.seed;
    e["target"] = vi.target;
    e["best"] = vi.best;
    e["achieved"] = vi.achieved;
    e["baseline_fast"] = vi.baseline_fast;
    e["probes"] = vi.probes_used;
    e["budget"] = vi.budget_used;
    e["point"] = to_json(vi.point_input);
    is.push_back(std::move(e));
  }
  j["instances"] = is;
  return j;
}

inline json census_to_json(const SkewCensus& rep) {
  json j;
  j["n"] = rep.n;
  j["nice"] = rep.nice;
  j["skew"] = rep.skew;
  j["degenerate"] = rep.degenerate;
  j["all_skew"] = rep.all_skew;
  j["alarm"] = rep.alarm;
  if (rep.alarm) j["alarm_reason"] = rep.alarm_reason;
  json es = json::array();
  for (const CensusEntry& e : rep.entries) {
    json x;
    x["face"] = e.face_id;
    x["verdict"] = verdict_name(e.verdict);
    x["margin"] = e.margin;
    x["consistent"] = e.consistent;
    es.push_back(std::move(x));
  }
  j["entries"] = es;
  if (rep.coloring_checked) {
    j["induced_coloring_valid"] = rep.coloring == ColoringStatus::Satisfiable;
  }
  return j;
}

inline json error_to_json(const Error& e) {
  json j;
  j["error"] = errc_name(e.code);
  j["message"] = e.what();
  return j;
}

inline void write_json(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream os(out_path);
    require(bool(os), Errc::invalid_input, "cannot write '" + out_path + "'");
    os << j.dump(2) << '\n';
  }
}

}  // namespace polynorm
