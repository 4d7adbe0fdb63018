// Command-line front end. Exit codes: 0 YES/success, 1 NO/INFEASIBLE,
// 2 usage, parse or validation errors.

#include <csignal>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "atdp/generators.hpp"
#include "atdp/io.hpp"
#include "atdp/oracle.hpp"
#include "atdp/reductions.hpp"
#include "atdp/service.hpp"
#include "atdp/solver.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kBadInput = 2;

std::string slurp(const std::string& file) {
  if (file == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  return atdp::read_file(file);
}

atdp::ScenarioDocument load_scenario(const std::string& file) { return atdp::parse_scenario_text(slurp(file)); }

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct SolveOptions {
  std::string mode = "early";
  std::string first;
  bool no_memo = false;
  bool parallel = false;

  void attach(CLI::App* cmd, bool with_first) {
    cmd->add_option("--mode", mode, "literal or early")->check(CLI::IsMember({"literal", "early"}));
    cmd->add_flag("--no-memo", no_memo, "run the polynomial-space backtracking engine");
    if (with_first) cmd->add_option("--first", first, "comma-separated inputs every branch must start with");
  }

  atdp::SolveConfig config() const {
    atdp::SolveConfig cfg;
    cfg.mode = mode == "literal" ? atdp::SearchMode::LiteralB1 : atdp::SearchMode::EarlyStop;
    cfg.memoize = !no_memo;
    cfg.forced_prefix = split_commas(first);
    return cfg;
  }
};

std::uint64_t resolve_k(const std::string& flag, const atdp::ScenarioDocument& doc) {
  if (!flag.empty()) return atdp::parse_count_text(flag, "-k");
  if (doc.k) return *doc.k;
  throw atdp::ParseError("k", "no depth given: pass -k or set k in the document");
}

atdp::Server* active_server = nullptr;

void on_signal(int) {
  if (active_server) active_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive testing workbench: decide, optimize and explain test strategies"};
  app.require_subcommand(1);

  // decide
  std::string scenario_file, k_flag;
  SolveOptions decide_opts;
  bool decide_parallel = false;
  auto* decide = app.add_subcommand("decide", "is there a strategy of depth <= k? prints YES or NO");
  decide->add_option("scenario", scenario_file, "scenario JSON ('-' for stdin)")->required();
  decide->add_option("-k", k_flag, "depth budget (any magnitude)");
  decide->add_flag("--parallel", decide_parallel, "split the root across threads");
  decide_opts.attach(decide, true);

  // optimize
  SolveOptions optimize_opts;
  auto* optimize = app.add_subcommand("optimize", "minimum worst-case depth or INFEASIBLE");
  optimize->add_option("scenario", scenario_file, "scenario JSON")->required();
  optimize_opts.attach(optimize, false);

  // strategy
  bool as_dot = false, as_json = false;
  auto* strategy = app.add_subcommand("strategy", "emit a winning strategy tree");
  strategy->add_option("scenario", scenario_file, "scenario JSON")->required();
  strategy->add_option("-k", k_flag, "depth budget; defaults to the document k, then to the optimum");
  auto* dot_flag = strategy->add_flag("--dot", as_dot, "Graphviz output");
  strategy->add_flag("--json", as_json, "JSON output (default)")->excludes(dot_flag);

  // reduce
  std::string source_file;
  auto* reduce = app.add_subcommand("reduce", "compile a source instance into a scenario");
  reduce->require_subcommand(1);
  auto* reduce_msc = reduce->add_subcommand("msc", "set cover text -> scenario");
  reduce_msc->add_option("cover", source_file, "cover text file")->required();
  auto* reduce_qbf = reduce->add_subcommand("qbf", "QBF text -> scenario with k");
  reduce_qbf->add_option("formula", source_file, "QBF text file")->required();

  // approx
  auto* approx = app.add_subcommand("approx", "greedy preset suite for a single-correct deterministic scenario");
  approx->add_option("scenario", scenario_file, "scenario JSON")->required();

  // generate
  auto* generate = app.add_subcommand("generate", "build scenarios");
  generate->require_subcommand(1);
  auto* gen_cas = generate->add_subcommand("cas", "the collision-avoidance example");
  std::string variant;
  auto* gen_variant = generate->add_subcommand("cas-variant", "collision-avoidance example with f7 changed");
  gen_variant->add_option("which", variant, "f7-nothing or f7-brake-nondet")
      ->required()
      ->check(CLI::IsMember({"f7-nothing", "f7-brake-nondet"}));
  atdp::RandomScenarioParams rp;
  auto* gen_random = generate->add_subcommand("random", "seeded random scenario");
  gen_random->add_option("--seed", rp.seed)->capture_default_str();
  gen_random->add_option("--inputs", rp.inputs)->capture_default_str();
  gen_random->add_option("--outputs", rp.outputs)->capture_default_str();
  gen_random->add_option("--functions", rp.functions)->capture_default_str();
  gen_random->add_option("--correct", rp.correct)->capture_default_str();
  gen_random->add_option("--density", rp.nondet_density, "probability of each extra output")->capture_default_str();
  bool count_only = false;
  std::uint64_t cap = atdp::kDefaultExpansionCap;
  auto* gen_factored = generate->add_subcommand("factored", "expand or count a factored spec");
  gen_factored->add_option("spec", source_file, "factored spec JSON")->required();
  gen_factored->add_flag("--count-only", count_only, "print the counts without expanding");
  gen_factored->add_option("--cap", cap, "refuse to expand beyond this many functions")->capture_default_str();
  bool with_regions = false;
  auto* gen_discretize = generate->add_subcommand("discretize", "numeric observations -> symbolic scenario");
  gen_discretize->add_option("numeric", source_file, "numeric scenario JSON")->required();
  gen_discretize->add_flag("--regions", with_regions, "wrap the scenario together with its region table");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force minimum depth (small instances only)");
  oracle->add_option("scenario", scenario_file, "scenario JSON")->required();

  // serve
  atdp::ServeOptions serve_opts;
  serve_opts.port = atdp::default_port();
  auto* serve = app.add_subcommand("serve", "HTTP session API");
  serve->add_option("--port", serve_opts.port, "listening port (default ATDP_PORT or 8080)");
  serve->add_option("--host", serve_opts.host)->capture_default_str();
  serve->add_option("--ui-dir", serve_opts.ui_dir, "static files served at /");
  serve->add_option("--workers", serve_opts.workers, "request worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (decide->parsed()) {
      const auto doc = load_scenario(scenario_file);
      const atdp::Instance s(doc.scenario);
      const auto k = resolve_k(k_flag, doc);
      const bool yes = decide_parallel ? atdp::decide_parallel(s, k, decide_opts.config())
                                       : atdp::decide(s, k, decide_opts.config());
      std::cout << (yes ? "YES" : "NO") << "\n";
      return yes ? kYes : kNo;
    }
    if (optimize->parsed()) {
      const auto doc = load_scenario(scenario_file);
      const auto best = atdp::optimize(atdp::Instance(doc.scenario), optimize_opts.config());
      if (!best) {
        std::cout << "INFEASIBLE\n";
        return kNo;
      }
      std::cout << *best << "\n";
      return kYes;
    }
    if (strategy->parsed()) {
      const auto doc = load_scenario(scenario_file);
      const atdp::Instance s(doc.scenario);
      std::uint64_t k;
      if (!k_flag.empty() || doc.k) {
        k = resolve_k(k_flag, doc);
      } else {
        const auto best = atdp::optimize(s);
        if (!best) {
          std::cerr << "INFEASIBLE: no strategy over distinct inputs forces a verdict\n";
          return kNo;
        }
        k = *best;
      }
      if (!atdp::decide(s, k)) {
        std::cerr << "NO: no strategy of depth <= " << k << "\n";
        return kNo;
      }
      const auto tree = atdp::extract_strategy(s, k);
      if (as_dot) std::cout << atdp::strategy_to_dot(tree);
      else std::cout << atdp::strategy_to_json(tree).dump(2) << "\n";
      return kYes;
    }
    if (reduce_msc->parsed()) {
      const auto reduced = atdp::msc_to_scenario(atdp::parse_cover(slurp(source_file)));
      std::cout << atdp::dump_scenario(reduced.scenario);
      return kYes;
    }
    if (reduce_qbf->parsed()) {
      const auto reduced = atdp::qbf_to_scenario(atdp::parse_qbf(slurp(source_file)));
      std::cout << atdp::dump_scenario(reduced.scenario, reduced.k);
      return kYes;
    }
    if (approx->parsed()) {
      const auto doc = load_scenario(scenario_file);
      const auto suite = atdp::greedy_cover(atdp::Instance(doc.scenario));
      std::cout << atdp::Json{{"suite", suite}, {"size", suite.size()}}.dump(2) << "\n";
      return kYes;
    }
    if (gen_cas->parsed()) {
      std::cout << atdp::dump_scenario(atdp::builtin_cas());
      return kYes;
    }
    if (gen_variant->parsed()) {
      const auto which = variant == "f7-nothing" ? atdp::CasVariant::F7Nothing : atdp::CasVariant::F7BrakeNondet;
      std::cout << atdp::dump_scenario(atdp::cas_variant(which));
      return kYes;
    }
    if (gen_random->parsed()) {
      std::cout << atdp::dump_scenario(atdp::random_scenario(rp));
      return kYes;
    }
    if (gen_factored->parsed()) {
      const auto spec = atdp::parse_factored(atdp::parse_json_text(slurp(source_file), "spec"));
      if (count_only) {
        const auto c = atdp::count_factored(spec);
        std::cout << atdp::Json{{"correct", c.correct.str()}, {"fault_combos", c.fault_combos.str()}, {"total", c.total.str()}}
                         .dump(2)
                  << "\n";
        return kYes;
      }
      std::cout << atdp::dump_scenario(atdp::expand_factored(spec, cap));
      return kYes;
    }
    if (gen_discretize->parsed()) {
      const auto d = atdp::discretize_observations(atdp::parse_numeric(atdp::parse_json_text(slurp(source_file), "numeric")));
      if (with_regions)
        std::cout << atdp::Json{{"scenario", atdp::scenario_to_json(d.scenario)}, {"regions", atdp::regions_to_json(d)}}.dump(2)
                  << "\n";
      else
        std::cout << atdp::dump_scenario(d.scenario);
      return kYes;
    }
    if (oracle->parsed()) {
      const auto doc = load_scenario(scenario_file);
      const auto depth = atdp::min_depth(doc.scenario);
      if (!depth) {
        std::cout << "INFEASIBLE\n";
        return kNo;
      }
      std::cout << *depth << "\n";
      return kYes;
    }
    if (serve->parsed()) {
      atdp::Api api;
      atdp::Server server(api, serve_opts);
      const int port = server.bind();
      active_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << serve_opts.host << ":" << port << "\n";
      server.run();
      active_server = nullptr;
      return kYes;
    }
  } catch (const atdp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const atdp::InvalidScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const atdp::UnknownSymbol& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
