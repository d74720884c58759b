#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ldoi/cones.hpp"
#include "ldoi/detect.hpp"
#include "ldoi/json_io.hpp"
#include "ldoi/maps.hpp"
#include "ldoi/triple.hpp"

namespace {

using ldoi::io::json;

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw ldoi::ValidationError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json read_json(const std::string& path) { return ldoi::io::parse(read_text(path)); }

ldoi::InvariantClass pick_class(const std::string& given, const std::optional<ldoi::InvariantClass>& inferred) {
  if (!given.empty()) return ldoi::class_from_string(given);
  return inferred.value_or(ldoi::InvariantClass::LDOI);
}

json report_or_criterion(const ldoi::CriterionResult& r) {
  return json{{"certified", r.certified}, {"margin", r.margin}, {"reason", r.reason}};
}

ldoi::CovariantMap read_map_like(const json& j) {
  if (j.is_object() && j.contains("triple")) return ldoi::io::map_from_json(j);
  ldoi::io::TripleInput in = ldoi::io::read_triple_like(j);
  const ldoi::InvariantClass c = in.cls.value_or(ldoi::InvariantClass::LDOI);
  return ldoi::make_map(c, in.triple);
}

void emit(const json& j) { std::cout << ldoi::io::dump(j) << "\n"; }

void emit_error(const std::string& msg) { std::cout << ldoi::io::dump(json{{"error", msg}}) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant bipartite matrices and covariant maps: construction, tests and separability certificates"};
  app.require_subcommand(1);

  std::string cls, input = "-", matrix_in = "-", rule, catalog_path, family, params = "{}", map_in = "-";
  std::string m1_path, m2_path;
  bool f_psd = false, f_ppt = false, f_realign = false, f_state = false, f_channel = false, f_pos = false,
       f_battery = false, f_certify = false;
  std::int64_t budget = -1;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<double> mu_grid{1.0, 2.0, 5.0};

  auto* build = app.add_subcommand("build", "triple -> bipartite matrix");
  build->add_option("--class", cls, "LDUI, CLDUI or LDOI (default: inferred, else LDOI)");
  build->add_option("--triple", input, "triple JSON file, '-' for stdin");

  auto* extract = app.add_subcommand("extract", "bipartite matrix -> triple");
  extract->add_option("--matrix", matrix_in, "matrix JSON file, '-' for stdin");

  auto* project = app.add_subcommand("project", "orthogonal projection onto an invariant class");
  project->add_option("--class", cls)->required();
  project->add_option("--matrix", matrix_in);

  auto* check = app.add_subcommand("check", "run tests on a triple or map");
  check->add_option("--triple", input);
  check->add_flag("--psd", f_psd);
  check->add_flag("--ppt", f_ppt);
  check->add_flag("--realignment", f_realign);
  check->add_flag("--state", f_state);
  check->add_flag("--channel", f_channel);
  check->add_flag("--positivity", f_pos);
  check->add_flag("--battery", f_battery);
  check->add_flag("--certify", f_certify, "constructive TCP certificate");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the built matrix, blockwise");
  spectrum->add_option("--class", cls);
  spectrum->add_option("--triple", input);

  auto* rank = app.add_subcommand("rank", "rank of the built matrix, blockwise");
  rank->add_option("--class", cls);
  rank->add_option("--triple", input);

  auto* permute = app.add_subcommand("permute", "leg permutation of a triple");
  permute->add_option("--rule", rule, "FXF, transpose, diag_swap, realign, gamma, gamma_left, F_left, F_right")
      ->required();
  permute->add_option("--triple", input);

  auto* compose = app.add_subcommand("compose", "map composition m1 after m2");
  compose->add_option("m1", m1_path)->required();
  compose->add_option("m2", m2_path)->required();

  auto* applyc = app.add_subcommand("apply", "apply a map to a matrix");
  applyc->add_option("--map", map_in);
  applyc->add_option("--matrix", matrix_in)->required();

  auto* kraus = app.add_subcommand("kraus", "minimal Kraus representation of a map");
  kraus->add_option("--map", map_in);

  auto* detect = app.add_subcommand("detect", "separability verdict");
  detect->add_option("--triple", input);
  detect->add_option("--catalog", catalog_path, "catalog JSON: [{id, class, triple}]");
  detect->add_option("--budget", budget, "falsifier samples per catalog entry (requires --seed)");
  detect->add_option("--seed", seed);
  detect->add_option("--jobs", jobs, "parallel catalog evaluation");
  detect->add_option("--mu", mu_grid, "mu grid of the default Choi-type witnesses");

  auto* gallery = app.add_subcommand("gallery", "named families");
  gallery->add_option("family", family)->required();
  gallery->add_option("--params", params, "JSON object of parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(e.what());
    return 2;
  }

  try {
    const ldoi::Tolerance tol = ldoi::Tolerance::from_env();
    if (build->parsed()) {
      ldoi::io::TripleInput in = ldoi::io::read_triple_like(read_json(input));
      const ldoi::InvariantClass c = pick_class(cls, in.cls);
      emit(ldoi::io::to_json(ldoi::build(c, ldoi::promote(c, in.triple))));
    } else if (extract->parsed()) {
      emit(ldoi::io::to_json(ldoi::extract_triple(ldoi::io::matrix_from_json(read_json(matrix_in)))));
    } else if (project->parsed()) {
      emit(ldoi::io::to_json(
          ldoi::project(ldoi::io::matrix_from_json(read_json(matrix_in)), ldoi::class_from_string(cls))));
    } else if (check->parsed()) {
      const json j = read_json(input);
      ldoi::io::TripleInput in = ldoi::io::read_triple_like(j);
      const ldoi::MatrixTriple& t = in.triple;
      const bool none = !(f_psd || f_ppt || f_realign || f_state || f_channel || f_pos || f_battery || f_certify);
      json out = json::object();
      if (f_psd || none) out["psd"] = ldoi::io::to_json(ldoi::psd_test(t, tol));
      if (f_ppt || none) out["ppt"] = ldoi::io::to_json(ldoi::ppt_test(t, tol));
      if (f_realign || none) out["realignment"] = ldoi::io::to_json(ldoi::realignment_test(t, tol));
      if (f_battery) out["battery"] = ldoi::io::to_json(ldoi::tcp_necessary_battery(t, tol));
      if (f_state) out["state"] = ldoi::quantum_state_test(t, tol);
      if (f_channel) {
        const ldoi::CovariantMap m = read_map_like(j);
        out["channel"] = ldoi::io::to_json(ldoi::map_properties(m, tol));
      }
      if (f_pos) {
        out["positivity"] = json{{"necessary", ldoi::io::to_json(ldoi::positivity_necessary(t, tol))},
                                 {"decomposable_sufficient", report_or_criterion(ldoi::decomposable_sufficient(t, tol))}};
      }
      if (f_certify) {
        auto cert = ldoi::certify_tcp(t, tol);
        json c = json{{"certified", cert.has_value()}};
        if (cert) {
          c["method"] = cert->method;
          c["margin"] = cert->margin;
          c["witness"] = cert->witness ? ldoi::io::to_json(*cert->witness) : json(nullptr);
        }
        out["certify"] = c;
      }
      emit(out);
    } else if (spectrum->parsed()) {
      ldoi::io::TripleInput in = ldoi::io::read_triple_like(read_json(input));
      const ldoi::InvariantClass c = pick_class(cls, in.cls);
      std::vector<ldoi::cplx> ev = ldoi::spectrum(ldoi::promote(c, in.triple), c);
      std::sort(ev.begin(), ev.end(), [](ldoi::cplx a, ldoi::cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
      json list = json::array();
      for (auto z : ev) list.push_back(json::array({z.real(), z.imag()}));
      emit(json{{"class", ldoi::to_string(c)}, {"eigenvalues", list}});
    } else if (rank->parsed()) {
      ldoi::io::TripleInput in = ldoi::io::read_triple_like(read_json(input));
      const ldoi::InvariantClass c = pick_class(cls, in.cls);
      emit(json{{"class", ldoi::to_string(c)}, {"rank", ldoi::rank_of(ldoi::promote(c, in.triple), c, tol)}});
    } else if (permute->parsed()) {
      ldoi::io::TripleInput in = ldoi::io::read_triple_like(read_json(input));
      emit(ldoi::io::to_json(ldoi::leg_permutation(in.triple, ldoi::leg_permutation_from_string(rule))));
    } else if (compose->parsed()) {
      if (m1_path == "-" && m2_path == "-") throw ldoi::ValidationError("only one map can come from stdin");
      const ldoi::CovariantMap m1 = read_map_like(read_json(m1_path));
      const ldoi::CovariantMap m2 = read_map_like(read_json(m2_path));
      emit(ldoi::io::to_json(ldoi::compose(m1, m2)));
    } else if (applyc->parsed()) {
      if (map_in == "-" && matrix_in == "-") throw ldoi::ValidationError("only one input can come from stdin");
      const ldoi::CovariantMap m = read_map_like(read_json(map_in));
      emit(ldoi::io::to_json(ldoi::apply(m, ldoi::io::matrix_from_json(read_json(matrix_in)))));
    } else if (kraus->parsed()) {
      emit(ldoi::io::to_json(ldoi::kraus_extract(read_map_like(read_json(map_in)), tol)));
    } else if (detect->parsed()) {
      ldoi::io::TripleInput in = ldoi::io::read_triple_like(read_json(input));
      ldoi::DetectConfig cfg;
      cfg.tol = tol;
      cfg.jobs = jobs;
      cfg.mu_grid = mu_grid;
      if (!catalog_path.empty()) cfg.catalog = ldoi::io::catalog_from_json(read_json(catalog_path));
      if (detect->count("--budget")) {
        if (!detect->count("--seed")) throw ldoi::ValidationError("--budget requires --seed");
        cfg.budget = budget;
        cfg.seed = seed;
      }
      emit(ldoi::io::to_json(ldoi::separability_verdict(in.triple, cfg)));
    } else if (gallery->parsed()) {
      emit(ldoi::io::gallery_generate(family, ldoi::io::parse(params)));
    }
  } catch (const ldoi::ValidationError& e) {
    emit_error(e.what());
    return 2;
  } catch (const ldoi::io::json::exception& e) {
    emit_error(std::string("bad JSON input: ") + e.what());
    return 2;
  } catch (const ldoi::NumericError& e) {
    emit_error(e.what());
    return 3;
  } catch (const std::exception& e) {
    emit_error(e.what());
    return 3;
  }
  return 0;
}
