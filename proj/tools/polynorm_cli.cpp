// Command-line front end: generation, normal enumeration, segment scans,
// spherical links, triangle classification, nice-face certificates, red/blue
// coloring, batch verification, and the codimension-3 census.
//
// Exit codes: 0 success / verified; 1 expected negative result (target not
// reached, unsatisfiable); 2 invalid input; 3 internal consistency alarm.

#include <polynorm/polynorm.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace polynorm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitAlarm = 3;

Vec parse_point(const std::string& csv) {
  std::vector<double> xs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      xs.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail(Errc::invalid_input, "bad coordinate '" + item + "'");
    }
  }
  require(!xs.empty(), Errc::invalid_input, "empty point");
  Vec v(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
  return v;
}

// Mini-format for generator specs: "n=4,m=8,count=20" (count optional).
struct GenArgs {
  GeneratorSpec spec;
  int count = 1;
};

GenArgs parse_gen(const std::string& s) {
  GenArgs g;
  std::stringstream ss(s);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    auto eq = kv.find('=');
    require(eq != std::string::npos, Errc::invalid_input,
            "expected key=value in generator spec, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    int val = 0;
    try {
      val = std::stoi(kv.substr(eq + 1));
    } catch (const std::exception&) {
      fail(Errc::invalid_input, "bad value in generator spec '" + kv + "'");
    }
    if (key == "n") g.spec.n = val;
    else if (key == "m") g.spec.m = val;
    else if (key == "count") g.count = val;
    else fail(Errc::invalid_input, "unknown generator key '" + key + "'");
  }
  return g;
}

struct CommonOpts {
  std::string canned;
  std::string in_path;
  std::string out_path;
  std::string format = "json";
  uint64_t seed = 1;
  double tol = 1e-9;
  int budget = 0;  // 0 = module default
  int jobs = 1;
};

Polytope load_input(const CommonOpts& o) {
  require(o.canned.empty() || o.in_path.empty(), Errc::invalid_input,
          "--canned and --in are mutually exclusive");
  if (!o.canned.empty()) return canned_polytope(o.canned);
  require(!o.in_path.empty(), Errc::invalid_input, "need --canned or --in");
  return load_polytope(o.in_path);
}

void emit(const json& j, const CommonOpts& o) { write_json(j, o.out_path); }

void add_common(CLI::App* cmd, CommonOpts& o, bool input = true) {
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--tol", o.tol, "numeric tolerance");
  cmd->add_option("--budget", o.budget, "probe budget (0 = default)");
  cmd->add_option("--out", o.out_path, "output path (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", o.jobs, "worker threads for batches")
      ->check(CLI::PositiveNumber);
  if (input) {
    cmd->add_option("--canned", o.canned,
                    "built-in shape (triangle, square, cube3, cube4, simplex3, "
                    "simplex4, simplex5, tetrahedron, thin_tetrahedron)");
    cmd->add_option("--in", o.in_path, "polytope JSON file");
  }
}

int face_by_spec(const Polytope& P, int face_opt, int dim_opt) {
  if (face_opt >= 0) {
    require(face_opt < static_cast<int>(P.faces.size()), Errc::invalid_input,
            "face id out of range");
    return face_opt;
  }
  require(dim_opt >= 0 && dim_opt < P.n, Errc::invalid_input,
          "need --face or --dim");
  require(!P.faces_by_dim[dim_opt].empty(), Errc::invalid_input,
          "no faces of that dimension");
  return P.faces_by_dim[dim_opt].front();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normals to convex polytope boundaries: enumeration, "
               "certification, search"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  CommonOpts gen_o;
  std::string gen_spec = "n=3,m=6";
  auto* gen = app.add_subcommand("gen", "generate random simple generic polytopes");
  add_common(gen, gen_o, false);
  gen->add_option("--spec", gen_spec, "n=<dim>,m=<facets>,count=<k>");

  // ---- normals ------------------------------------------------------------
  CommonOpts nr_o;
  std::string nr_point;
  bool nr_tally = false;
  auto* nr = app.add_subcommand("normals", "enumerate normals from a point");
  add_common(nr, nr_o);
  nr->add_option("--point", nr_point, "interior point, comma-separated")->required();
  nr->add_flag("--tally", nr_tally, "include the Morse index tally");

  // ---- scan ---------------------------------------------------------------
  CommonOpts sc_o;
  std::string sc_from, sc_to;
  int sc_steps = 64;
  auto* sc = app.add_subcommand("scan", "count normals along a segment");
  add_common(sc, sc_o);
  sc->add_option("--from", sc_from, "segment start, comma-separated")->required();
  sc->add_option("--to", sc_to, "segment end, comma-separated")->required();
  sc->add_option("--steps", sc_steps, "coarse sample count");

  // ---- link ---------------------------------------------------------------
  CommonOpts lk_o;
  int lk_face = -1, lk_dim = -1;
  auto* lk = app.add_subcommand("link", "spherical link of a face");
  add_common(lk, lk_o);
  lk->add_option("--face", lk_face, "face id");
  lk->add_option("--dim", lk_dim, "use the first face of this dimension");

  // ---- classify -----------------------------------------------------------
  CommonOpts cf_o;
  std::string cf_triangle;
  int cf_face = -1, cf_dim = -1;
  auto* cf = app.add_subcommand("classify", "classify a spherical triangle");
  add_common(cf, cf_o);
  cf->add_option("--triangle", cf_triangle,
                 "9 comma-separated numbers: three vertices in R^3");
  cf->add_option("--face", cf_face, "classify the link of this face");
  cf->add_option("--dim", cf_dim, "use the first face of this dimension");

  // ---- nice ---------------------------------------------------------------
  CommonOpts nc_o;
  int nc_face = -1, nc_dim = -1;
  bool nc_propagate = false;
  auto* nc = app.add_subcommand("nice", "certify a face nice");
  add_common(nc, nc_o);
  nc->add_option("--face", nc_face, "face id");
  nc->add_option("--dim", nc_dim, "use the first face of this dimension");
  nc->add_flag("--propagate", nc_propagate, "also check facets of the face");

  // ---- color --------------------------------------------------------------
  CommonOpts co_o;
  std::string co_mode = "auto";
  std::string co_export, co_instance;
  auto* co = app.add_subcommand("color", "two-red-one-blue coloring");
  add_common(co, co_o);
  co->add_option("--mode", co_mode, "auto, exhaustive or backtracking")
      ->check(CLI::IsMember({"auto", "exhaustive", "backtracking"}));
  co->add_option("--export", co_export, "write the constraint system to a file");
  co->add_option("--instance", co_instance, "solve a constraint file instead");

  // ---- verify -------------------------------------------------------------
  CommonOpts vf_o;
  std::string vf_gen = "n=3,m=6,count=20";
  auto* vf = app.add_subcommand("verify", "batch search over random polytopes");
  add_common(vf, vf_o, false);
  vf->add_option("--gen", vf_gen, "n=<dim>,m=<facets>,count=<k>");

  // ---- census -------------------------------------------------------------
  CommonOpts cs_o;
  auto* cs = app.add_subcommand("census", "skew/nice census of codim-3 links");
  add_common(cs, cs_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err;
    err["error"] = errc_name(Errc::invalid_input);
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return kExitInvalid;
  }

  try {
    if (*gen) {
      GenArgs g = parse_gen(gen_spec);
      g.spec.genericity = std::max(g.spec.genericity, gen_o.tol);
      if (g.count == 1) {
        Polytope P = random_simple_polytope(g.spec, gen_o.seed);
        emit(polytope_to_json(P), gen_o);
      } else {
        json arr = json::array();
        for (int i = 0; i < g.count; ++i) {
          Polytope P =
              random_simple_polytope(g.spec, verify_instance_seed(gen_o.seed, i));
          arr.push_back(polytope_to_json(P));
        }
        emit(arr, gen_o);
      }
      return kExitOk;
    }

    if (*nr) {
      Polytope P = load_input(nr_o);
      Vec y = P.to_internal(parse_point(nr_point));
      NormalsReport rep = normals_from_point(P, y, nr_o.tol);
      json j = normals_report_to_json(P, rep);
      if (nr_tally) {
        MorseTally t = morse_tally(P, rep);
        json tj;
        tj["by_index"] = t.by_index;
        tj["even_total"] = t.even_total;
        tj["alternating_sum_ok"] = t.alternating_sum_ok;
        tj["extrema_placement_ok"] = t.extrema_placement_ok;
        j["tally"] = tj;
      }
      emit(j, nr_o);
      return kExitOk;
    }

    if (*sc) {
      Polytope P = load_input(sc_o);
      Vec a = P.to_internal(parse_point(sc_from));
      Vec b = P.to_internal(parse_point(sc_to));
      SegmentScan scan = scan_segment(P, a, b, sc_steps, 40, sc_o.tol);
      if (sc_o.format == "csv") {
        std::ostringstream os;
        os << "t,count\n";
        for (const auto& s : scan.samples) os << s.t << ',' << s.count << '\n';
        if (sc_o.out_path.empty() || sc_o.out_path == "-") {
          std::cout << os.str();
        } else {
          std::ofstream f(sc_o.out_path);
          require(bool(f), Errc::invalid_input, "cannot write '" + sc_o.out_path + "'");
          f << os.str();
        }
      } else {
        json j;
        json samples = json::array();
        for (const auto& s : scan.samples)
          samples.push_back(json{{"t", s.t}, {"count", s.count}});
        j["samples"] = samples;
        json crossings = json::array();
        for (const auto& c : scan.crossings) {
          crossings.push_back(json{{"t_lo", c.t_lo},
                                   {"t_hi", c.t_hi},
                                   {"count_before", c.count_before},
                                   {"count_after", c.count_after},
                                   {"resolved", c.resolved}});
        }
        j["crossings"] = crossings;
        j["all_resolved"] = scan.all_resolved;
        emit(j, sc_o);
      }
      return scan.all_resolved ? kExitOk : kExitAlarm;
    }

    if (*lk) {
      Polytope P = load_input(lk_o);
      int fid = face_by_spec(P, lk_face, lk_dim);
      SphericalSimplex S = spherical_link(P, fid);
      json j = link_to_json(S);
      if (S.k == 3) {
        TriangleClassification cls = classify_triangle(S.verts, 1e-6);
        j["classification"] = classification_to_json(cls);
      }
      emit(j, lk_o);
      return kExitOk;
    }

    if (*cf) {
      json j;
      if (!cf_triangle.empty()) {
        Vec x = parse_point(cf_triangle);
        require(x.size() == 9, Errc::invalid_input,
                "--triangle needs exactly 9 numbers");
        Mat V(3, 3);
        for (int c = 0; c < 3; ++c)
          for (int r = 0; r < 3; ++r) V(r, c) = x[3 * c + r];
        for (int c = 0; c < 3; ++c) {
          require(V.col(c).norm() > 1e-12, Errc::invalid_input, "zero vertex");
          V.col(c).normalize();
        }
        TriangleClassification cls = classify_triangle(V, 1e-6);
        j = classification_to_json(cls);
      } else {
        Polytope P = load_input(cf_o);
        int fid = face_by_spec(P, cf_face, cf_dim);
        SphericalSimplex S = spherical_link(P, fid);
        require(S.k == 3, Errc::invalid_input, "face link is not a triangle");
        TriangleClassification cls = classify_triangle(S.verts, 1e-6);
        j = classification_to_json(cls);
        j["face"] = fid;
      }
      emit(j, cf_o);
      return kExitOk;
    }

    if (*nc) {
      Polytope P = load_input(nc_o);
      int fid = face_by_spec(P, nc_face, nc_dim);
      CertifySettings st;
      if (nc_o.budget > 0) st.probes = nc_o.budget;
      st.tol = nc_o.tol;
      NiceCertificate cert = certify_nice(P, fid, st, nc_o.seed);
      json j = certificate_to_json(P, cert);
      bool ok = cert.found;
      if (nc_propagate && cert.found) {
        PropagationReport pr = check_propagation(P, cert, st, nc_o.seed);
        j["propagation"] = propagation_to_json(P, pr);
        ok = ok && pr.all_achieved;
      }
      emit(j, nc_o);
      return ok ? kExitOk : kExitNegative;
    }

    if (*co) {
      ColoringInstance inst;
      std::optional<Polytope> P;
      if (!co_instance.empty()) {
        std::ifstream f(co_instance);
        require(bool(f), Errc::invalid_input, "cannot open '" + co_instance + "'");
        inst = read_instance(f);
      } else {
        P = load_input(co_o);
        inst = instance_from_polytope(*P);
      }
      if (!co_export.empty()) {
        std::ofstream f(co_export);
        require(bool(f), Errc::invalid_input, "cannot write '" + co_export + "'");
        write_instance(f, inst);
      }
      ColoringMode mode = co_mode == "exhaustive"    ? ColoringMode::Exhaustive
                          : co_mode == "backtracking" ? ColoringMode::Backtracking
                                                      : ColoringMode::Auto;
      ColoringResult res = find_coloring(inst, mode);
      if (res.status == ColoringStatus::Satisfiable)
        require(validate_coloring(inst, res.colors), Errc::consistency_alarm,
                "solver returned an invalid coloring");
      json j;
      j["instance"] = instance_to_json(inst);
      j["result"] = coloring_result_to_json(res);
      emit(j, co_o);
      return res.status == ColoringStatus::Satisfiable ? kExitOk : kExitNegative;
    }

    if (*vf) {
      GenArgs g = parse_gen(vf_gen);
      SearchSettings st;
      if (vf_o.budget > 0) st.budget = vf_o.budget;
      st.tol = vf_o.tol;
      VerifyReport rep =
          verify_theorem(g.spec, g.count, vf_o.seed, st, vf_o.jobs);
      json j = verify_report_to_json(rep);
      emit(j, vf_o);
      // Human-readable summary table on stderr so stdout stays parseable.
      std::ostringstream tbl;
      tbl << "instance  best  target  achieved\n";
      for (size_t i = 0; i < rep.instances.size(); ++i) {
        const auto& vi = rep.instances[i];
        tbl << i << "  " << vi.best << "  " << vi.target << "  "
            << (vi.achieved ? "yes" : "NO") << '\n';
      }
      tbl << rep.achieved << "/" << rep.count << " achieved\n";
      std::cerr << tbl.str();
      return rep.all_achieved ? kExitOk : kExitNegative;
    }

    if (*cs) {
      Polytope P = load_input(cs_o);
      SkewCensus rep = skew_census(P, 1e-6);
      json j = census_to_json(rep);
      if (P.n == 4 && rep.all_skew) {
        TetraPipelineReport tp = vertex_link_pipeline(P, 1e-6, cs_o.seed);
        json tj;
        tj["all_skew_vertices"] = tp.all_skew_vertices;
        tj["passed"] = tp.passed;
        j["vertex_links"] = tj;
      }
      emit(j, cs_o);
      return rep.alarm ? kExitAlarm : kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << error_to_json(e).dump() << '\n';
    switch (e.code) {
      case Errc::consistency_alarm:
      case Errc::inconsistent_dihedral:
        return kExitAlarm;
      case Errc::generation_failed:
      case Errc::non_convergence:
        return kExitNegative;
      default:
        return kExitInvalid;
    }
  } catch (const std::exception& e) {
    json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return kExitAlarm;
  }
  return kExitInvalid;
}
