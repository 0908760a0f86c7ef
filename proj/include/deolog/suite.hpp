#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "deolog/engine.hpp"

namespace deolog {

struct SuiteOptions {
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
  std::string data_dir;
  std::uint64_t seed = 20240601;
  /// Group names or claim ids; empty runs everything.
  std::vector<std::string> only;
  EngineConfig engine;
};

/// Result of a property-style claim (randomized checks, corpus checks).
struct PropertyOutcome {
  bool ok = false;
  std::string observed;
  std::string detail;
  nlohmann::json fingerprint;
};

struct Claim {
  enum class Kind { check, forall_weights, sat, property };

  std::string id;
  std::string group;
  Kind kind = Kind::check;
  /// Sequent for check kinds; ";"-separated formulas for sat.
  std::string text;
  Regime regime;
  /// valid | invalid | no-countermodel | satisfiable | unsatisfiable | holds
  std::string expected;
  bool require_robust = false;
  /// Extra condition on a verdict that already matches; returns a failure
  /// reason or nothing.
  std::function<std::optional<std::string>(const Verdict&)> post;
  std::function<PropertyOutcome(const SuiteOptions&)> property;
};

struct ClaimResult {
  std::string id;
  std::string group;
  /// check | sat | property
  std::string kind;
  std::string query;
  std::string expected;
  std::string observed;
  bool pass = false;
  std::string detail;
  nlohmann::json fingerprint;
  double elapsed_ms = 0;
  /// Full verdict document for engine claims (countermodels included).
  std::optional<nlohmann::json> verdict;
};

struct SuiteReport {
  std::vector<ClaimResult> entries;

  std::size_t passed() const;
  bool all_passed() const { return passed() == entries.size(); }
  nlohmann::json to_json() const;
  static SuiteReport from_json(const nlohmann::json& j);
  /// One "Group: k/n label" line per group, in manifest order.
  std::vector<std::string> summary_lines() const;
};

std::vector<Claim> manifest(const SuiteOptions& opts);
std::vector<Claim> select_claims(const std::vector<Claim>& all, const std::vector<std::string>& only);
ClaimResult run_claim(const Claim& c, const SuiteOptions& opts);
/// Claims run on a worker pool; entries come back in manifest order.
SuiteReport run_suite(const std::vector<Claim>& claims, const SuiteOptions& opts);

/// Reloads every embedded countermodel or witness from its JSON form and
/// re-evaluates the claim's query; returns the ids that fail.
std::vector<std::string> reverify_report(const SuiteReport& r, const EngineConfig& cfg = {});

/// Default data directory baked in at build time.
std::string default_data_dir();

}  // namespace deolog
