#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "deolog/engine.hpp"
#include "deolog/model_io.hpp"
#include "deolog/proof.hpp"
#include "deolog/selection.hpp"
#include "deolog/suite.hpp"
#include "deolog/syntax.hpp"

using namespace deolog;
using nlohmann::json;

namespace {

// Exit codes.
constexpr int ok_exit = 0;
constexpr int negative_exit = 1;
constexpr int budget_exit = 2;
constexpr int usage_exit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void report_syntax(const SyntaxError& e, std::string_view text) {
  std::cerr << e.what() << "\n";
  std::cerr << "  " << text << "\n  " << std::string(std::min(e.offset(), text.size()), ' ') << "^\n";
}

struct RegimeFlags {
  std::string regime = "delta";
  std::size_t max_worlds = 4;
  std::optional<std::size_t> extra_vars;
  std::string cls;
  std::string grid = "1..9";
  bool forall = false;
  bool json = false;
  bool strict_def7 = false;
  std::uint64_t budget = EngineConfig{}.budget;
  std::string backend = "solver";

  void attach(CLI::App* app) {
    app->add_option("--regime", regime, "basic | delta | weighted")
        ->check(CLI::IsMember({"basic", "delta", "weighted"}));
    app->add_option("--max-worlds", max_worlds, "World bound for the basic regime");
    app->add_option("--extra-vars", extra_vars, "Fresh variables to try (delta 2, weighted 0, forall 2)");
    app->add_option("--class", cls, "Weight class, e.g. q>p,q>r");
    app->add_option("--grid", grid, "Weight grid, e.g. 1..9 or 1,2,5");
    app->add_flag("--forall-weights", forall, "Look for a countermodel under every weighting");
    app->add_flag("--json", json, "Emit the verdict as JSON");
    app->add_flag("--strict-def7", strict_def7, "Read P f as ~O~f");
    app->add_option("--budget", budget, "Search node budget");
    app->add_option("--backend", backend, "solver | oracle")->check(CLI::IsMember({"solver", "oracle"}));
  }

  EngineConfig config() const {
    EngineConfig c;
    c.desugar.permission_as_dual = strict_def7;
    c.budget = budget;
    c.backend = backend == "oracle" ? Backend::oracle : Backend::solver;
    return c;
  }

  Regime make() const {
    if (regime == "basic") return RegimeBasic{max_worlds};
    if (regime == "delta") return RegimeDelta{extra_vars.value_or(2)};
    try {
      return RegimeWeighted{parse_weight_class(cls), parse_grid(grid), extra_vars.value_or(forall ? 2 : 0)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

void print_verdict(const Verdict& v, bool as_json) {
  if (as_json) {
    std::cout << verdict_to_json(v).dump(2) << "\n";
    return;
  }
  json fp = verdict_to_json(v).at("fingerprint");
  std::cout << verdict_name(v) << "\n";
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Invalid>) {
          std::cout << "witness: " << x.model.world_name(x.witness) << (x.weight_robust ? " (weight-robust)" : "")
                    << "\n";
          std::cout << dump_model(x.model);
        } else if constexpr (std::is_same_v<X, Satisfiable>) {
          std::cout << "witness: " << x.model.world_name(x.world) << "\n";
          std::cout << dump_model(x.model);
        } else if constexpr (std::is_same_v<X, QualifiedValid>) {
          std::cout << "note: " << x.note << (x.budget_limited ? " (budget-limited)" : "") << "\n";
        } else if constexpr (std::is_same_v<X, Unsatisfiable>) {
          if (x.budget_limited) std::cout << "note: budget-limited\n";
        }
      },
      v);
  std::cout << "fingerprint: " << fp.dump() << "\n";
}

int verdict_exit(const Verdict& v) {
  if (const auto* q = std::get_if<QualifiedValid>(&v)) return q->budget_limited ? budget_exit : ok_exit;
  if (const auto* u = std::get_if<Unsatisfiable>(&v)) return u->budget_limited ? budget_exit : negative_exit;
  if (std::holds_alternative<Invalid>(v)) return negative_exit;
  return ok_exit;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deolog: preference-based deontic logic workbench"};
  app.require_subcommand(1);

  auto* parse_cmd = app.add_subcommand("parse", "Print the surface and core forms of a formula");
  std::string parse_text;
  bool core_only = false, parse_dual = false;
  parse_cmd->add_option("formula", parse_text)->required();
  parse_cmd->add_flag("--core", core_only, "Print only the core form");
  parse_cmd->add_flag("--strict-def7", parse_dual, "Read P f as ~O~f");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a model document");
  std::string model_path, eval_text;
  bool eval_dual = false;
  eval_cmd->add_option("model", model_path)->required();
  eval_cmd->add_option("formula", eval_text)->required();
  eval_cmd->add_flag("--strict-def7", eval_dual, "Read P f as ~O~f");

  auto* check_cmd = app.add_subcommand("check", "Decide a sequent in a regime");
  std::string sequent_text;
  RegimeFlags check_flags;
  check_cmd->add_option("sequent", sequent_text)->required();
  check_flags.attach(check_cmd);

  auto* sat_cmd = app.add_subcommand("sat", "Find a model satisfying formulas jointly");
  std::vector<std::string> sat_formulas;
  std::string sat_file;
  RegimeFlags sat_flags;
  sat_cmd->add_option("formulas", sat_formulas);
  sat_cmd->add_option("--file", sat_file, "One formula per line; # starts a comment");
  sat_flags.attach(sat_cmd);

  auto* suite_cmd = app.add_subcommand("suite", "Run the claim regression suite");
  std::string only;
  bool suite_json = false, verbose = false;
  SuiteOptions suite_opts;
  suite_opts.data_dir = default_data_dir();
  suite_cmd->add_option("--only", only, "Comma-separated groups or claim ids");
  suite_cmd->add_flag("--json", suite_json, "Emit the report as JSON");
  suite_cmd->add_flag("-v,--verbose", verbose, "Print one line per claim");
  suite_cmd->add_option("--threads", suite_opts.threads, "Worker threads (0 = all cores)");
  suite_cmd->add_option("--data-dir", suite_opts.data_dir, "Directory holding derivations/");
  suite_cmd->add_option("--seed", suite_opts.seed, "Seed for randomized claims");

  auto* prove_cmd = app.add_subcommand("prove", "Check a derivation document");
  std::string proof_path;
  prove_cmd->add_option("--check", proof_path, "Derivation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok_exit : usage_exit;
  }

  std::string current;
  try {
    if (*parse_cmd) {
      current = parse_text;
      Surface f = parse(parse_text);
      DesugarOptions d;
      d.permission_as_dual = parse_dual;
      if (!core_only) std::cout << "surface: " << print(f) << "\n";
      std::cout << (core_only ? "" : "core: ") << print(desugar(f, d)) << "\n";
      return ok_exit;
    }
    if (*eval_cmd) {
      DesugarOptions d;
      d.permission_as_dual = eval_dual;
      Model m = load_model(model_path, d);
      auto problems = validate_model(m);
      if (!problems.empty()) {
        for (const auto& p : problems) std::cerr << "invalid model: " << p << "\n";
        return usage_exit;
      }
      current = eval_text;
      Surface f = parse(eval_text);
      if (!d.anchor) {
        auto vars = variables(f);
        d.anchor = vars.empty() ? m.universe.front() : vars.front();
      }
      std::cout << format_proposition(m, denote(m, desugar(f, d))) << "\n";
      return ok_exit;
    }
    if (*check_cmd) {
      current = sequent_text;
      Sequent s = parse_sequent(sequent_text);
      current.clear();
      Regime r = check_flags.make();
      EngineConfig cfg = check_flags.config();
      Verdict v;
      if (check_flags.forall) {
        const auto* w = std::get_if<RegimeWeighted>(&r);
        if (!w) throw UsageError("--forall-weights needs --regime weighted");
        v = check_forall_weights_invalidity(s, w->grid, w->extra_vars, cfg);
      } else {
        v = check(s, r, cfg);
      }
      print_verdict(v, check_flags.json);
      return verdict_exit(v);
    }
    if (*sat_cmd) {
      std::vector<Surface> fs;
      if (!sat_file.empty()) {
        std::ifstream in(sat_file);
        if (!in) throw UsageError("cannot open '" + sat_file + "'");
        for (std::string line; std::getline(in, line);) {
          auto hash = line.find('#');
          if (hash != std::string::npos) line.resize(hash);
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          current = line;
          fs.push_back(parse(line));
        }
      }
      for (const auto& t : sat_formulas) {
        current = t;
        fs.push_back(parse(t));
      }
      current.clear();
      if (fs.empty()) throw UsageError("no formulas given");
      if (sat_flags.forall) throw UsageError("--forall-weights applies to check only");
      Verdict v = satisfiable(fs, sat_flags.make(), sat_flags.config());
      print_verdict(v, sat_flags.json);
      return verdict_exit(v);
    }
    if (*suite_cmd) {
      suite_opts.only = split_list(only);
      auto claims = select_claims(manifest(suite_opts), suite_opts.only);
      if (claims.empty()) throw UsageError("--only matched no claims");
      SuiteReport report = run_suite(claims, suite_opts);
      if (suite_json) {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        for (const auto& e : report.entries)
          if (verbose || !e.pass)
            std::cout << (e.pass ? "  pass " : "  FAIL ") << e.id << ": expected " << e.expected << ", observed "
                      << e.observed << (e.detail.empty() ? "" : " [" + e.detail + "]") << "\n";
        for (const auto& line : report.summary_lines()) std::cout << line << "\n";
        std::cout << "total: " << report.passed() << "/" << report.entries.size() << " claims as expected\n";
      }
      return report.all_passed() ? ok_exit : negative_exit;
    }
    if (*prove_cmd) {
      ProofResult r = check_derivation(load_derivation(proof_path));
      if (r.ok) {
        std::cout << "theorem: " << print(*r.theorem) << "\n";
        return ok_exit;
      }
      std::cout << "step " << r.failed_step << ": " << r.reason << "\n";
      return negative_exit;
    }
  } catch (const SyntaxError& e) {
    report_syntax(e, current);
    return usage_exit;
  } catch (const MissingSelection& e) {
    std::cerr << "missing selection: " << e.what() << "\n";
    return usage_exit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_exit;
  }
  return usage_exit;
}
