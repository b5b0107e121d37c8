#include "hyperturan/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hyperturan/certificate.hpp"
#include "hyperturan/core.hpp"
#include "hyperturan/entropy.hpp"
#include "hyperturan/hom.hpp"
#include "hyperturan/io.hpp"
#include "hyperturan/lagrangian.hpp"
#include "hyperturan/region.hpp"

namespace hyperturan {

namespace {

struct CommandResult {
  CommandResult() = default;
  CommandResult(Json b, int c = kExitOk, std::string table = {})
      : body(std::move(b)), code(c), csv(std::move(table)) {}

  Json body;
  int code = kExitOk;
  std::string csv;  // set only by commands with a table view
};

std::pair<int, int> parse_pair(const std::string& s, const char* what) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument(std::string(what) + " must look like A,B");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + " must look like A,B");
  }
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a comma-separated integer list: " + s);
    }
  }
  return out;
}

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::none:
      return "none";
    default:
      return "budget_exhausted";
  }
}

Json segments_json(const SegmentDecomposition& dec) {
  Json segs = Json::array();
  for (const auto& s : dec.segments)
    segs.push_back({{"left", s.left},
                    {"right", s.right},
                    {"length", s.length()},
                    {"central", s.central},
                    {"left_crossing", s.left_crossing},
                    {"right_crossing", s.right_crossing},
                    {"super", s.super}});
  return Json{{"segments", segs}, {"initial_length", dec.initial_length}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tent-family Turan density toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  double tol = kFeasibilityTol;
  std::string format = "json";
  std::string output;
  std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  double timeout = SearchBudget{}.timeout_seconds;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--tol", tol, "Feasibility tolerance")->capture_default_str();
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", output, "Write the result to this file");
  app.add_option("--max-nodes", max_nodes, "Search node budget")->capture_default_str();
  app.add_option("--timeout", timeout, "Search time budget in seconds")->capture_default_str();

  std::string command;
  std::function<CommandResult()> action;
  auto budget = [&] {
    SearchBudget b{max_nodes, timeout};
    b.validate();
    return b;
  };

  // tent
  auto* tent = app.add_subcommand("tent", "Tent constructions");
  tent->require_subcommand(1);
  int tent_r = 0, tent_i = 0, tent_k = 0;
  bool tent_partial = false;
  std::string tent_parts;
  auto* tent_make = tent->add_subcommand("make", "Build one tent");
  tent_make->add_option("--r", tent_r, "Uniformity");
  tent_make->add_option("--i", tent_i, "Split (r-i, i)");
  tent_make->add_flag("--partial", tent_partial, "Emit the partial tent");
  tent_make->add_option("--parts", tent_parts, "General tent from a partition, e.g. 2,2,1");
  tent_make->callback([&] {
    command = "tent make";
    action = [&]() -> CommandResult {
      Json args{{"r", tent_r}, {"i", tent_i}, {"partial", tent_partial}, {"parts", tent_parts}};
      Json body;
      if (!tent_parts.empty()) {
        body["hypergraph"] = to_json(make_general_tent(TentSpec(parse_list(tent_parts))));
      } else if (tent_partial) {
        body["partial_hypergraph"] = to_json(make_partial_tent(tent_r, tent_i));
      } else {
        body["hypergraph"] = to_json(make_tent(tent_r, tent_i));
      }
      body["args"] = args;
      return {body};
    };
  });
  auto* tent_fam = tent->add_subcommand("family", "The family of tents for i = 1..k");
  tent_fam->add_option("--r", tent_r)->required();
  tent_fam->add_option("--k", tent_k)->required();
  tent_fam->callback([&] {
    command = "tent family";
    action = [&]() -> CommandResult {
      Json members = Json::array();
      for (const auto& m : tent_family(tent_r, tent_k).members()) members.push_back(to_json(m));
      return {Json{{"args", {{"r", tent_r}, {"k", tent_k}}}, {"members", members}}};
    };
  });

  // hom
  auto* hom = app.add_subcommand("hom", "Homomorphism search");
  hom->require_subcommand(1);
  std::string hom_f, hom_h;
  bool hom_injective = false;
  auto* hom_check = hom->add_subcommand("check", "Search for a homomorphism F -> H");
  hom_check->add_option("source", hom_f, "F as JSON (hypergraph or partial hypergraph)")->required();
  hom_check->add_option("host", hom_h, "H as JSON")->required();
  hom_check->add_flag("--injective", hom_injective, "Require injectivity on V(F)");
  hom_check->callback([&] {
    command = "hom check";
    action = [&]() -> CommandResult {
      const Json fj = read_json_file(hom_f);
      const Hypergraph h = hypergraph_from_json(read_json_file(hom_h));
      HomSearchResult res;
      bool valid = false;
      if (fj.contains("maximal_edges")) {
        const auto f = partial_from_json(fj);
        res = find_partial_homomorphism(f, h, budget());
        valid = res.map && is_partial_homomorphism(f, h, *res.map);
      } else {
        const auto f = hypergraph_from_json(fj);
        res = hom_injective ? find_injective_homomorphism(f, h, budget())
                            : find_homomorphism(f, h, budget());
        valid = res.map && is_homomorphism(f, h, *res.map);
      }
      Json body{{"status", status_name(res.status)},
                {"nodes", res.nodes},
                {"map", res.map ? Json(*res.map) : Json(nullptr)},
                {"map_verified", valid},
                {"args", {{"source", hom_f}, {"host", hom_h}, {"injective", hom_injective}}}};
      return {body, res.status == SearchStatus::budget_exhausted ? kExitBudgetExhausted : kExitOk};
    };
  });
  int turan_n = 0;
  int clique = 0;
  std::vector<std::string> family_files;
  auto* hom_turan = hom->add_subcommand("exact-turan", "Exact ex(n, F) by exhaustive search");
  hom_turan->add_option("--n", turan_n, "Number of vertices")->required();
  hom_turan->add_option("--clique", clique, "Forbid the graph clique K_s");
  hom_turan->add_option("family", family_files, "Forbidden hypergraphs as JSON");
  hom_turan->callback([&] {
    command = "hom exact-turan";
    action = [&]() -> CommandResult {
      std::vector<Hypergraph> members;
      if (clique > 0) {
        std::vector<Edge> edges;
        for (int a = 0; a < clique; ++a)
          for (int b = a + 1; b < clique; ++b) edges.push_back({a, b});
        members.emplace_back(2, clique, edges);
      }
      for (const auto& path : family_files) members.push_back(hypergraph_from_json(read_json_file(path)));
      if (members.empty()) throw std::invalid_argument("exact-turan needs --clique or family files");
      try {
        auto res = brute_force_ex(turan_n, Family(members), budget());
        Json ext = Json::array();
        for (const auto& g : res.extremal) ext.push_back(to_json(g));
        return {Json{{"ex", res.max_edges},
                     {"extremal", ext},
                     {"nodes", res.nodes},
                     {"args", {{"n", turan_n}, {"clique", clique}, {"family", family_files}}}}};
      } catch (const BudgetExhausted& e) {
        return {Json{{"status", "budget_exhausted"}, {"message", e.what()}}, kExitBudgetExhausted};
      }
    };
  });

  // lagrangian
  std::string lag_file;
  int lag_restarts = LagrangianOptions{}.restarts;
  bool lag_no_grid = false;
  auto* lag = app.add_subcommand("lagrangian", "Lagrangian and blowup density");
  lag->add_option("hypergraph", lag_file, "H as JSON")->required();
  lag->add_option("--restarts", lag_restarts)->capture_default_str();
  lag->add_flag("--no-grid", lag_no_grid, "Skip the lattice cross-check");
  lag->callback([&] {
    command = "lagrangian";
    action = [&]() -> CommandResult {
      LagrangianOptions opts;
      opts.restarts = lag_restarts;
      opts.seed = seed;
      opts.grid_check = !lag_no_grid;
      const auto h = hypergraph_from_json(read_json_file(lag_file));
      const auto res = lagrangian(h, opts);
      return {Json{{"value", res.value},
                   {"blowup_density", res.blowup_density},
                   {"witness", res.witness.weights()},
                   {"status", res.status == SolveStatus::converged ? "converged" : "budget_limited"},
                   {"certified", res.grid_confirmed ? "grid-confirmed" : "best-found"},
                   {"fixed_point_residual", res.fixed_point_residual},
                   {"restarts_used", res.restarts_used},
                   {"args", {{"hypergraph", lag_file}, {"restarts", lag_restarts}, {"grid", !lag_no_grid}}}}};
    };
  });

  // region
  auto* region = app.add_subcommand("region", "Optimization over X_{r,k}");
  region->require_subcommand(1);
  int reg_r = 0, reg_k = 0;
  bool reg_exact = false;
  std::string reg_eps, reg_point;
  double seg_tol = kSegmentTol;
  auto* reg_max = region->add_subcommand("max", "Maximize prod x_i with a KKT certificate");
  reg_max->add_option("--r", reg_r)->required();
  reg_max->add_option("--k", reg_k)->required();
  reg_max->add_flag("--exact", reg_exact, "Exact re-check of x_i = i/r");
  reg_max->callback([&] {
    command = "region max";
    action = [&]() -> CommandResult {
      Json cert = region_max_certificate(reg_r, reg_k, reg_exact);
      cert["args"] = {{"r", reg_r}, {"k", reg_k}, {"exact", reg_exact}};
      return {cert};
    };
  });
  auto* reg_ce = region->add_subcommand("counterexample", "Point beating r!/r^r for k < floor(r/e)");
  reg_ce->add_option("--r", reg_r)->required();
  reg_ce->add_option("--k", reg_k)->required();
  reg_ce->add_option("--eps", reg_eps, "Starting eps as p/q (default 1/(4r))");
  reg_ce->callback([&] {
    command = "region counterexample";
    action = [&]() -> CommandResult {
      std::optional<Rational> eps;
      if (!reg_eps.empty()) eps = rational_from_string(reg_eps);
      Json cert = counterexample_certificate(reg_r, reg_k, eps);
      cert["args"] = {{"r", reg_r}, {"k", reg_k}, {"eps", reg_eps}};
      return {cert};
    };
  });
  auto* reg_seg = region->add_subcommand("segments", "Maximal uniform intervals of a point");
  reg_seg->add_option("point", reg_point, "Point as JSON {r, k, x}")->required();
  reg_seg->add_option("--seg-tol", seg_tol)->capture_default_str();
  reg_seg->callback([&] {
    command = "region segments";
    action = [&]() -> CommandResult {
      const auto p = point_from_json(read_json_file(reg_point), tol);
      Json body = segments_json(segments(p, seg_tol));
      body["args"] = {{"point", reg_point}, {"seg_tol", seg_tol}};
      return {body};
    };
  });
  auto* reg_probe = region->add_subcommand("probe-floor", "Optimum for k = floor(r/e)");
  reg_probe->add_option("--r", reg_r)->required();
  reg_probe->callback([&] {
    command = "region probe-floor";
    action = [&]() -> CommandResult {
      const auto p = probe_floor_case(reg_r);
      Json row = region_row(p.report);
      return {Json{{"r", p.r},
                   {"k", p.k},
                   {"exceeds_bound", p.exceeds_bound},
                   {"report", row},
                   {"note", "exploratory: no claim is made about the Turan density itself"},
                   {"args", {{"r", reg_r}}}}};
    };
  });

  // entropy
  auto* ent = app.add_subcommand("entropy", "Entropic density and ratio sequences");
  ent->require_subcommand(1);
  std::string ent_h, ent_w, ent_family;
  int ent_restarts = 100, ent_trials = 100;
  auto* ent_density = ent->add_subcommand("density", "Entropic density with blowup cross-check");
  ent_density->add_option("hypergraph", ent_h)->required();
  ent_density->add_option("--restarts", ent_restarts)->capture_default_str();
  ent_density->callback([&] {
    command = "entropy density";
    action = [&]() -> CommandResult {
      const auto h = hypergraph_from_json(read_json_file(ent_h));
      const auto res = entropic_density(h, ent_restarts, seed);
      return {Json{{"value", res.value},
                   {"witness_weights", res.witness.weights()},
                   {"blowup_density", res.blowup_density},
                   {"agrees_with_blowup", res.agrees_with_blowup},
                   {"certified", res.agrees_with_blowup ? "blowup-cross-checked" : "best-found"},
                   {"args", {{"hypergraph", ent_h}, {"restarts", ent_restarts}}}}};
    };
  });
  auto* ent_ratio = ent->add_subcommand("ratio", "Ratio sequence of an edge distribution");
  ent_ratio->add_option("hypergraph", ent_h)->required();
  ent_ratio->add_option("weights", ent_w, "Edge weights as a JSON array or {\"w\": [...]}")->required();
  ent_ratio->callback([&] {
    command = "entropy ratio";
    action = [&]() -> CommandResult {
      const auto h = hypergraph_from_json(read_json_file(ent_h));
      Json wj = read_json_file(ent_w);
      if (wj.is_object()) wj = wj.value("w", Json());
      if (!wj.is_array()) throw std::invalid_argument("weights must be an array");
      const auto rs = ratio_sequence(EdgeDistribution(h, wj.get<std::vector<double>>()));
      return {Json{{"x", rs.x},
                   {"marginal_entropy", rs.marginal_entropy},
                   {"joint_entropy", rs.joint_entropy},
                   {"product", rs.product()},
                   {"args", {{"hypergraph", ent_h}, {"weights", ent_w}}}}};
    };
  });
  auto* ent_verify = ent->add_subcommand("verify-ratio", "Ratio sequences of a hom-free host lie in X_{r,k}");
  ent_verify->add_option("hypergraph", ent_h)->required();
  ent_verify->add_option("--family", ent_family, "r,k for the tent family")->required();
  ent_verify->add_option("--trials", ent_trials)->capture_default_str();
  ent_verify->callback([&] {
    command = "entropy verify-ratio";
    action = [&]() -> CommandResult {
      const auto [fr, fk] = parse_pair(ent_family, "--family");
      const auto h = hypergraph_from_json(read_json_file(ent_h));
      if (h.r() != fr) throw std::invalid_argument("--family r does not match the host");
      try {
        const auto rep = verify_ratio_constraints(h, fk, ent_trials, budget(), seed);
        return {Json{{"sequences", rep.sequences},
                     {"inside", rep.inside},
                     {"all_inside", rep.all_inside()},
                     {"worst_slack", rep.worst_slack},
                     {"worst_point", rep.worst_point},
                     {"args", {{"hypergraph", ent_h}, {"family", ent_family}, {"trials", ent_trials}}}},
                rep.all_inside() ? kExitOk : kExitVerificationFailed};
      } catch (const BudgetExhausted& e) {
        return {Json{{"status", "budget_exhausted"}, {"message", e.what()}}, kExitBudgetExhausted};
      }
    };
  });

  // report
  auto* report = app.add_subcommand("report", "Tables");
  report->require_subcommand(1);
  int r_min = 4, r_max = 12;
  auto* rep_thm = report->add_subcommand("theorem-table", "Optimum for k = ceil(r/e) per r");
  rep_thm->add_option("--r-min", r_min)->capture_default_str();
  rep_thm->add_option("--r-max", r_max)->capture_default_str();
  rep_thm->callback([&] {
    command = "report theorem-table";
    action = [&]() -> CommandResult {
      Json cert = theorem_table(r_min, r_max);
      cert["args"] = {{"r_min", r_min}, {"r_max", r_max}};
      return {cert, kExitOk, theorem_table_csv(cert)};
    };
  });
  auto* rep_ce = report->add_subcommand("counterexample-table", "Counterexamples for k < floor(r/e)");
  rep_ce->add_option("--r-min", r_min)->capture_default_str();
  rep_ce->add_option("--r-max", r_max)->capture_default_str();
  rep_ce->callback([&] {
    command = "report counterexample-table";
    action = [&]() -> CommandResult {
      Json cert = counterexample_table(r_min, r_max);
      cert["args"] = {{"r_min", r_min}, {"r_max", r_max}};
      return {cert, kExitOk, counterexample_table_csv(cert)};
    };
  });

  // verify
  std::string cert_file;
  auto* ver = app.add_subcommand("verify", "Re-check a certificate without re-optimizing");
  ver->add_option("certificate", cert_file)->required();
  ver->callback([&] {
    command = "verify";
    action = [&]() -> CommandResult {
      const auto res = verify_certificate(read_json_file(cert_file), tol);
      return {Json{{"pass", res.pass}, {"failures", res.failures}, {"args", {{"certificate", cert_file}}}},
              res.pass ? kExitOk : kExitVerificationFailed};
    };
  });

  std::vector<std::string> argv_store{"hyperturan"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  CommandResult result;
  try {
    result = action();
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitBudgetExhausted;
  } catch (const std::invalid_argument& e) {
    err << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::out_of_range& e) {
    err << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    err << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }

  std::string text;
  if (format == "csv") {
    if (result.csv.empty()) {
      err << "bad input: --format csv is only available for report tables\n";
      return kExitBadInput;
    }
    text = result.csv;
  } else {
    result.body["config"] = {{"command", command}, {"seed", seed}, {"tol", tol}, {"format", format},
                             {"max_nodes", max_nodes}, {"timeout", timeout}};
    text = canonical_dump(result.body) + "\n";
  }
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "bad input: cannot write " << output << "\n";
      return kExitBadInput;
    }
    file << text;
  }
  return result.code;
}

}  // namespace hyperturan
