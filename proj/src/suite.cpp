#include "deolog/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "deolog/model_io.hpp"
#include "deolog/order.hpp"
#include "deolog/proof.hpp"
#include "deolog/random.hpp"
#include "deolog/selection.hpp"
#include "deolog/syntax.hpp"

#ifndef DEOLOG_DATA_DIR
#define DEOLOG_DATA_DIR "data"
#endif

namespace deolog {

using nlohmann::json;
namespace fs = std::filesystem;

std::string default_data_dir() { return DEOLOG_DATA_DIR; }

namespace {

const std::vector<std::int64_t> grid_1_9 = {1, 2, 3, 4, 5, 6, 7, 8, 9};

std::vector<Surface> parse_list(const std::string& text) {
  std::vector<Surface> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(start, end - start);
    if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(parse(part));
    start = end + 1;
  }
  return out;
}

Claim check_claim(std::string id, std::string text, Regime r, std::string expected) {
  Claim c;
  c.group = id.substr(0, id.find('.'));
  c.id = std::move(id);
  c.text = std::move(text);
  c.regime = std::move(r);
  c.expected = std::move(expected);
  return c;
}

Claim forall_claim(std::string id, std::string text, bool robust) {
  Claim c = check_claim(std::move(id), std::move(text), RegimeWeighted{{}, grid_1_9, 2}, "invalid");
  c.kind = Claim::Kind::forall_weights;
  c.require_robust = robust;
  return c;
}

Claim sat_claim(std::string id, std::string text, Regime r, std::string expected) {
  Claim c = check_claim(std::move(id), std::move(text), std::move(r), std::move(expected));
  c.kind = Claim::Kind::sat;
  return c;
}

Claim property_claim(std::string id, std::function<PropertyOutcome(const SuiteOptions&)> f) {
  Claim c;
  c.group = id.substr(0, id.find('.'));
  c.id = std::move(id);
  c.kind = Claim::Kind::property;
  c.expected = "holds";
  c.property = std::move(f);
  return c;
}

json property_fingerprint(std::size_t samples, std::uint64_t seed) {
  return {{"regime", "property"}, {"samples", samples}, {"seed", seed}};
}

PropertyOutcome tally(std::size_t samples, std::size_t failures, std::string first, std::uint64_t seed) {
  PropertyOutcome o;
  o.ok = failures == 0;
  o.observed = o.ok ? "holds" : "fails";
  o.detail = std::to_string(samples - failures) + "/" + std::to_string(samples) + " samples";
  if (!o.ok) o.detail += "; first failure: " + first;
  o.fingerprint = property_fingerprint(samples, seed);
  return o;
}

std::vector<std::string> random_universe(Rng& rng, std::size_t max_vars) {
  static const std::vector<std::string> names = {"p", "q", "r", "s"};
  std::size_t n = 1 + rng() % max_vars;
  return {names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n)};
}

PropertyOutcome global_modality(const SuiteOptions& o) {
  constexpr std::size_t samples = 500;
  Rng rng(o.seed ^ 0x1);
  std::size_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < samples; ++i) {
    auto universe = random_universe(rng, 3);
    Model m = random_delta_model(rng, universe);
    FormulaShape shape;
    shape.vars = universe;
    Surface f = random_formula(rng, shape);
    DesugarOptions d;
    d.anchor = universe.front();
    Proposition phi = denote(m, desugar(f, d));
    Proposition box = denote(m, desugar(Surface::unary(Op::box, f), d));
    Proposition dia = denote(m, desugar(Surface::unary(Op::diamond, f), d));
    auto full = Proposition::full(m.size());
    bool ok = (box.empty() || box == full) && (dia.empty() || dia == full) &&
              (box == full) == (phi == full) && (dia == full) == !phi.empty();
    if (!ok && bad++ == 0) first = print(f);
  }
  return tally(samples, bad, first, o.seed ^ 0x1);
}

PropertyOutcome unravelling(const SuiteOptions& o) {
  constexpr std::size_t samples = 1000;
  Rng rng(o.seed ^ 0x2);
  std::size_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < samples; ++i) {
    auto universe = random_universe(rng, 3);
    Model m = i % 2 ? random_delta_model(rng, universe) : random_basic_model(rng, universe);
    FormulaShape shape;
    shape.vars = universe;
    shape.max_size = 8;
    Surface psi = random_formula(rng, shape);
    Surface neg = Surface::unary(Op::not_, psi);
    DesugarOptions d;
    d.anchor = universe.front();
    bool ok = denote(m, desugar(Surface::unary(Op::oblig, psi), d)) ==
                  denote(m, desugar(Surface::binary(Op::pref_strict, psi, neg), d)) &&
              denote(m, desugar(Surface::unary(Op::perm, psi), d)) ==
                  denote(m, desugar(Surface::binary(Op::pref_weak, psi, neg), d));
    if (!ok && bad++ == 0) first = print(psi);
  }
  return tally(samples, bad, first, o.seed ^ 0x2);
}

PropertyOutcome nearest_is_delta(const SuiteOptions& o) {
  constexpr std::size_t samples = 1000;
  Rng rng(o.seed ^ 0x3);
  std::size_t bad = 0;
  std::string first;
  static const std::vector<std::string> names = {"p", "q", "r", "s"};
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t n = 1 + rng() % 4;
    std::vector<std::string> universe(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n));
    Weighting p = random_weighting(rng, universe);
    auto all = powerset_worlds(n);
    World w = all[rng() % all.size()];
    std::vector<World> a;
    for (const auto& x : all)
      if (rng() % 2) a.push_back(x);
    if (a.empty()) a.push_back(all[rng() % all.size()]);
    auto near = p_nearest(p, w, a);
    auto delta = delta_minimal(w, a);
    bool ok = !near.empty() && std::all_of(near.begin(), near.end(), [&](const World& x) {
      return std::find(delta.begin(), delta.end(), x) != delta.end();
    });
    if (!ok && bad++ == 0) first = p.describe() + " at " + world_name(w);
  }
  return tally(samples, bad, first, o.seed ^ 0x3);
}

bool not_invalid(const Verdict& v) { return std::holds_alternative<Valid>(v) || std::holds_alternative<QualifiedValid>(v); }

PropertyOutcome oracle_agreement(const SuiteOptions& o) {
  constexpr std::size_t samples = 200;
  Rng rng(o.seed ^ 0x4);
  FormulaShape shape;
  shape.max_modal_depth = 1;
  shape.max_size = 8;
  std::size_t bad = 0;
  std::string first;
  EngineConfig solver = o.engine;
  solver.backend = Backend::solver;
  EngineConfig oracle = o.engine;
  oracle.backend = Backend::oracle;
  for (std::size_t i = 0; i < samples; ++i) {
    Sequent s = random_sequent(rng, shape);
    Regime r = i % 2 ? Regime{RegimeDelta{0}} : Regime{RegimeBasic{3}};
    Verdict a = check(s, r, solver);
    Verdict b = check(s, r, oracle);
    bool budget = false;
    for (const auto* v : {&a, &b})
      if (const auto* q = std::get_if<QualifiedValid>(v)) budget |= q->budget_limited;
    bool ok = !budget && not_invalid(a) == not_invalid(b);
    if (!ok && bad++ == 0) first = print(s);
  }
  return tally(samples, bad, first, o.seed ^ 0x4);
}

PropertyOutcome ordered_bell(const SuiteOptions&) {
  // Independent recurrence: a(n) = sum_k C(n, k) a(n - k).
  std::vector<std::uint64_t> a = {1};
  for (std::size_t n = 1; n <= 4; ++n) {
    std::uint64_t sum = 0, binom = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      sum += binom * a[n - k];
    }
    a.push_back(sum);
  }
  PropertyOutcome out;
  out.ok = true;
  std::string counts;
  for (std::size_t n = 2; n <= 4; ++n) {
    std::size_t got = bruteforce_weak_orders(n).size();
    counts += (n > 2 ? "/" : "") + std::to_string(got);
    out.ok &= got == a[n];
  }
  out.ok &= counts == "3/13/75";
  out.observed = out.ok ? "holds" : "fails";
  out.detail = "weak orders on 2/3/4 worlds: " + counts;
  out.fingerprint = {{"regime", "property"}, {"worlds", {2, 3, 4}}};
  return out;
}

PropertyOutcome derivation_claim(const std::string& path, std::optional<std::size_t> expect_fail,
                                 const SuiteOptions& o) {
  PropertyOutcome out;
  out.fingerprint = {{"regime", "basic"}, {"max_worlds", 4}, {"derivation", fs::path(path).filename().string()}};
  Derivation d;
  try {
    d = load_derivation(path);
  } catch (const std::exception& e) {
    out.observed = "unreadable";
    out.detail = e.what();
    return out;
  }
  ProofResult r = check_derivation(d);
  if (expect_fail) {
    out.observed = r.ok ? "checks" : "fails at step " + std::to_string(r.failed_step);
    out.ok = !r.ok && r.failed_step == *expect_fail;
    out.detail = r.ok ? "corrupted derivation was accepted" : r.reason;
    return out;
  }
  if (!r.ok) {
    out.observed = "fails at step " + std::to_string(r.failed_step);
    out.detail = r.reason;
    return out;
  }
  Verdict v = check(Sequent{{}, *r.theorem}, RegimeBasic{4}, o.engine);
  bool clean = false;
  if (const auto* q = std::get_if<QualifiedValid>(&v)) clean = !q->budget_limited;
  clean |= std::holds_alternative<Valid>(v);
  out.ok = clean;
  out.observed = clean ? "holds" : "theorem " + verdict_name(v);
  out.detail = print(*r.theorem);
  return out;
}

std::vector<Claim> axiom_claims(const SuiteOptions& o) {
  std::vector<Claim> out;
  fs::path dir = fs::path(o.data_dir) / "derivations";
  auto sorted_files = [](const fs::path& p) {
    std::vector<fs::path> files;
    if (fs::is_directory(p))
      for (const auto& e : fs::directory_iterator(p))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
  };
  for (const auto& f : sorted_files(dir)) {
    std::string path = f.string();
    out.push_back(property_claim("Axioms." + f.stem().string(),
                                 [path](const SuiteOptions& so) { return derivation_claim(path, std::nullopt, so); }));
  }
  for (const auto& f : sorted_files(dir / "corrupt")) {
    std::string path = f.string();
    std::optional<std::size_t> step;
    try {
      std::ifstream in(path);
      step = json::parse(in).at("expect_failure_step").get<std::size_t>();
    } catch (const std::exception&) {
    }
    Claim c = property_claim("Axioms.corrupt_" + f.stem().string(), [path, step](const SuiteOptions& so) {
      if (!step) return PropertyOutcome{false, "unreadable", "missing expect_failure_step", {}};
      return derivation_claim(path, step, so);
    });
    c.expected = step ? "fails at step " + std::to_string(*step) : "fails";
    out.push_back(std::move(c));
  }
  if (out.empty())
    out.push_back(property_claim("Axioms.corpus", [dir](const SuiteOptions&) {
      return PropertyOutcome{false, "missing", "no derivations under " + dir.string(), {}};
    }));
  return out;
}

std::optional<std::string> no_extra_vars(const Verdict& v) {
  if (const auto* x = std::get_if<Valid>(&v))
    if (x->fingerprint.extra_vars != 0) return "expected extra-vars = 0";
  return std::nullopt;
}

/// The witness coset of the p/q worlds must rank 00 above 11 above 01 above 10.
std::optional<std::string> appendix_ranks(const Verdict& v) {
  const auto* inv = std::get_if<Invalid>(&v);
  if (!inv) return std::nullopt;
  const Model& m = inv->model;
  auto pi = m.var_index("p"), qi = m.var_index("q");
  if (!pi || !qi) return "countermodel lacks p or q";
  const std::size_t n = m.universe.size();
  std::uint32_t pb = var_bit(*pi, n), qb = var_bit(*qi, n);
  std::uint32_t rest = m.worlds[inv->witness] & ~(pb | qb);
  auto u = [&](bool p, bool q) -> std::optional<std::int64_t> {
    auto i = m.find_world(rest | (p ? pb : 0) | (q ? qb : 0));
    if (!i) return std::nullopt;
    return m.utility[*i];
  };
  auto pq = u(true, true), npq = u(false, true), pnq = u(true, false), npnq = u(false, false);
  if (!pq || !npq || !pnq || !npnq) return "witness coset incomplete";
  if (*pq > *npq && *npq > *pnq && *npnq > *pq) return std::nullopt;
  return "utility ranks not order-isomorphic to 3 > 2 > 1 with the remaining world maximal";
}

RegimeWeighted weighted(std::string_view cls) { return RegimeWeighted{parse_weight_class(cls), grid_1_9, 0}; }

}  // namespace

std::vector<Claim> manifest(const SuiteOptions& o) {
  std::vector<Claim> m;
  const RegimeBasic basic4{4};
  const RegimeDelta delta0{0};

  m.push_back(property_claim("Prop1.global", global_modality));
  for (auto [id, text] : std::vector<std::pair<std::string, std::string>>{
           {"Prop1.box_dual", "|- []p <-> ~<>~p"},
           {"Prop1.diamond_dual", "|- <>p <-> ~[]~p"},
           {"Prop1.connected", "<>p ; <>q |- (p >= q) | (q >= p)"},
           {"Prop1.strict_complement", "|- (<>p & <>q) <-> (~(p >= q) <-> (q > p))"},
           {"Prop1.congruence", "|- <>p -> (p ~~ (p & p))"},
       })
    m.push_back(check_claim(id, text, basic4, "no-countermodel"));

  m.push_back(check_claim("Pref.reflexive", "<>p |- p >= p", basic4, "no-countermodel"));
  m.push_back(check_claim("Pref.reflexive_top", "|- T >= T", basic4, "no-countermodel"));
  m.push_back(check_claim("Pref.reflexive_unguarded", "|- p >= p", basic4, "invalid"));
  m.push_back(check_claim("Pref.transitive", "(p >= q) & (q >= r) |- p >= r", basic4, "no-countermodel"));
  m.push_back(check_claim("Pref.bottom_left", "|- ~(F >= p)", basic4, "no-countermodel"));
  m.push_back(check_claim("Pref.bottom_right", "|- ~(p >= F)", basic4, "no-countermodel"));

  m.push_back(property_claim("Prop2.unravel", unravelling));

  for (auto [id, text] : std::vector<std::pair<std::string, std::string>>{
           {"Prop3.1", "<>p & <>~p |- P p | P ~p"},
           {"Prop3.2", "O p |- P p"},
           {"Prop3.3", "|- ~(O p & O ~p)"},
           {"Prop3.4a", "|- ~O T"},
           {"Prop3.4b", "|- ~O F"},
           {"Prop3.4c", "|- ~P F"},
           {"Prop3.4d", "|- ~P T"},
           {"Prop3.5", "C(p, q) |- <>(p & q) & <>(p & ~q)"},
       })
    m.push_back(check_claim(id, text, basic4, "no-countermodel"));
  m.push_back(sat_claim("Prop3.sat_OT", "O T", basic4, "unsatisfiable"));
  m.push_back(sat_claim("Prop3.sat_PF", "P F", basic4, "unsatisfiable"));

  for (auto [id, text] : std::vector<std::pair<std::string, std::string>>{
           {"Prop4.f", "O p ; ~p > ~q |- O q"},
           {"Prop4.e", "O q ; p > q |- O p"},
           {"Prop4.d", "C(p, q) ; p |- O q"},
           {"Prop4.a", "C(p & r, q) ; C(p & ~r, q) |- C(p, q)"},
           {"Prop4.b", "C(p, q) |- C(p & r, q) | C(p & ~r, q)"},
           {"Prop4.c", "O (p & q) ; O (p & ~q) |- O p"},
       }) {
    Claim c = check_claim(id, text, delta0, "valid");
    c.post = no_extra_vars;
    m.push_back(std::move(c));
  }

  m.push_back(check_claim("Delta.split", "O p |- O (p & q) | O (p & ~q)", RegimeDelta{2}, "invalid"));
  m.push_back(check_claim("Delta.disjoin", "C(p, q) ; C(r, q) |- C(p | r, q)", RegimeDelta{2}, "invalid"));

  for (auto [id, text, cls] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"Prop5.a", "C(r, p) |- C(r, p & q) | C(r, p & ~q)", "q>p,q>r"},
           {"Prop5.b", "O p |- O (p & q) | O (p & ~q)", "q>p,q>r"},
           {"Prop5.c", "P p |- P (p & q) | P (p & ~q)", "q>p,q>r"},
           {"Prop5.d", "P (p & q) ; P (p & ~q) |- P p", "q>p,q>r"},
           {"Prop5.e", "C(q, p) ; C(r, p) |- C(q | r, p)", "q>p,q>r"},
           {"Prop5.f", "C(p | q, r) |- C(p, r) | C(q, r)", "q>p,q>r"},
           {"Prop5.g", "O (p & q) ; p |- O q", "p>q,p>r"},
           {"Prop5.h", "O (p | q) ; ~q |- O p", "q>p,q>r"},
       })
    m.push_back(check_claim(id, text, weighted(cls), "valid"));

  for (auto [id, text, robust] : std::vector<std::tuple<std::string, std::string, bool>>{
           {"Prop6.a", "C(p | q, r) |- C(p, r) & C(q, r)", false},
           {"Prop6.b", "O (p & q) |- O q", true},
           {"Prop6.c", "O (p | q) ; O ~q |- O p", false},
           {"Prop6.d", "C(p, q) |- C(p & r, q)", false},
           {"Prop6.e", "C(p, q) ; O p |- O q", false},
           {"Prop6.z", "O (p -> q) |- O p -> O q", true},
           {"Prop6.f", "C(p, q) ; C(q, r) |- C(p, r)", false},
           {"Prop6.g", "O p ; O q |- O (p & q)", false},
           {"Prop6.i", "C(p, q) ; C(p, r) |- C(p, q & r)", false},
           {"Prop6.j", "O O p |- O p", false},
           {"Prop6.k", "C(p, q) ; C(r, q) |- C(p & r, q)", false},
           {"Prop6.m", "|- O (O p -> p)", false},
           {"Prop6.h", "O p |- O (p | q)", true},
       }) {
    Claim c = forall_claim(id, text, robust);
    if (c.id == "Prop6.z") c.post = appendix_ranks;
    m.push_back(std::move(c));
  }

  for (auto [id, text] : std::vector<std::pair<std::string, std::string>>{
           {"Prop7.a", "P p ; P q |- P (p & q)"},
           {"Prop7.d", "O (p | q) |- O p | O q"},
           {"Prop7.e", "p -> q |- O p -> O q"},
           {"Prop7.f", "O p |- O (p & q)"},
           {"Prop7.g", "P p |- P (p & q)"},
           {"Prop7.h", "|- C(p, q) | C(q, p)"},
           {"Prop7.i", "O (p | q) |- O p"},
           {"Prop7.j", "O p |- p"},
           {"Prop7.k", "P p |- P O p"},
           {"Prop7.l", "~q > ~p ; O p |- O q"},
       })
    m.push_back(forall_claim(id, text, false));

  m.push_back(property_claim("Fact1.nearest_is_delta", nearest_is_delta));
  m.push_back(sat_claim("Chisholm", "O g ; C(g, t) ; C(~g, ~t) ; ~g", delta0, "satisfiable"));
  for (auto& c : axiom_claims(o)) m.push_back(std::move(c));
  m.push_back(property_claim("Oracle.agreement", oracle_agreement));
  m.push_back(property_claim("Oracle.ordered_bell", ordered_bell));
  m.push_back(check_claim("Rejected.contraposition", "C(p, q) |- C(~q, ~p)", delta0, "invalid"));
  m.push_back(check_claim("Rejected.excluded_middle", "|- C(p, q) | C(~p, q)", delta0, "invalid"));
  return m;
}

std::vector<Claim> select_claims(const std::vector<Claim>& all, const std::vector<std::string>& only) {
  if (only.empty()) return all;
  std::vector<Claim> out;
  for (const auto& c : all)
    if (std::find(only.begin(), only.end(), c.group) != only.end() ||
        std::find(only.begin(), only.end(), c.id) != only.end())
      out.push_back(c);
  return out;
}

namespace {

std::string observed_name(const Verdict& v) {
  std::string name = verdict_name(v);
  if (const auto* q = std::get_if<QualifiedValid>(&v); q && q->budget_limited) name += " (budget-limited)";
  if (const auto* u = std::get_if<Unsatisfiable>(&v); u && u->budget_limited) name += " (budget-limited)";
  return name;
}

bool matches(const std::string& expected, const Verdict& v) {
  const std::string got = observed_name(v);
  if (expected == "no-countermodel") return got == "valid" || got == "qualified-valid";
  return got == expected;
}

/// Re-evaluates a countermodel or witness straight from its JSON form.
std::optional<std::string> recheck(const std::string& query, Claim::Kind kind, const json& verdict,
                                   const EngineConfig& cfg) {
  const std::string name = verdict.at("verdict").get<std::string>();
  if (name != "invalid" && name != "satisfiable") return std::nullopt;
  Model m = model_from_json(verdict.at("model"));
  auto problems = validate_model(m);
  if (!problems.empty()) return "model fails validation: " + problems.front();
  World w = parse_world_name(verdict.at("witness").get<std::string>());
  auto idx = m.find_world(w.members);
  if (!idx) return "witness is not a world of the model";
  Core q = kind == Claim::Kind::sat ? conjunction_formula(parse_list(query), cfg.desugar)
                                    : query_formula(parse_sequent(query), cfg.desugar);
  if (!holds_at(m, q, *idx)) return "query does not hold at the witness";
  return std::nullopt;
}

}  // namespace

ClaimResult run_claim(const Claim& c, const SuiteOptions& opts) {
  ClaimResult r;
  r.id = c.id;
  r.group = c.group;
  r.kind = c.kind == Claim::Kind::property ? "property" : c.kind == Claim::Kind::sat ? "sat" : "check";
  r.query = c.text;
  r.expected = c.expected;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (c.kind == Claim::Kind::property) {
      PropertyOutcome p = c.property(opts);
      r.observed = p.observed;
      r.pass = p.ok;
      r.detail = p.detail;
      r.fingerprint = p.fingerprint;
    } else {
      Verdict v;
      if (c.kind == Claim::Kind::sat) {
        auto fs = parse_list(c.text);
        v = satisfiable(fs, c.regime, opts.engine);
      } else if (c.kind == Claim::Kind::forall_weights) {
        const auto& w = std::get<RegimeWeighted>(c.regime);
        v = check_forall_weights_invalidity(parse_sequent(c.text), w.grid, w.extra_vars, opts.engine);
      } else {
        v = check(parse_sequent(c.text), c.regime, opts.engine);
      }
      json doc = verdict_to_json(v);
      r.observed = observed_name(v);
      r.fingerprint = doc.at("fingerprint");
      r.pass = matches(c.expected, v);
      if (r.pass && c.require_robust) {
        const auto* inv = std::get_if<Invalid>(&v);
        if (!inv || !inv->weight_robust) {
          r.pass = false;
          r.detail = "countermodel is not weight-robust";
        }
      }
      if (r.pass && c.post)
        if (auto why = c.post(v)) {
          r.pass = false;
          r.detail = *why;
        }
      if (auto why = recheck(c.text, c.kind, doc, opts.engine)) {
        r.pass = false;
        r.detail = "re-verification failed: " + *why;
      }
      if (r.detail.empty()) {
        if (const auto* inv = std::get_if<Invalid>(&v))
          r.detail = std::string(inv->weight_robust ? "weight-robust " : "") + "countermodel at " +
                     inv->model.world_name(inv->witness) + " (" + inv->strategy + ")";
        else if (const auto* s = std::get_if<Satisfiable>(&v))
          r.detail = "witness " + s->model.world_name(s->world);
        else if (const auto* q = std::get_if<QualifiedValid>(&v))
          r.detail = q->note;
      }
      r.verdict = std::move(doc);
    }
  } catch (const std::exception& e) {
    r.observed = "error";
    r.pass = false;
    r.detail = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SuiteReport run_suite(const std::vector<Claim>& claims, const SuiteOptions& opts) {
  SuiteReport report;
  report.entries.resize(claims.size());
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(claims.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < claims.size();) report.entries[i] = run_claim(claims[i], opts);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return report;
}

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.pass; }));
}

json SuiteReport::to_json() const {
  json entries_json = json::array();
  for (const auto& e : entries) {
    json j{{"id", e.id},           {"group", e.group},   {"kind", e.kind}, {"query", e.query},
           {"expected", e.expected}, {"observed", e.observed}, {"pass", e.pass},
           {"detail", e.detail},   {"fingerprint", e.fingerprint}, {"elapsed_ms", e.elapsed_ms}};
    if (e.verdict) j["verdict"] = *e.verdict;
    entries_json.push_back(std::move(j));
  }
  return {{"entries", entries_json},
          {"summary", {{"total", entries.size()}, {"passed", passed()}, {"failed", entries.size() - passed()}}}};
}

SuiteReport SuiteReport::from_json(const json& j) {
  SuiteReport r;
  for (const auto& e : j.at("entries")) {
    ClaimResult c;
    c.id = e.at("id").get<std::string>();
    c.group = e.at("group").get<std::string>();
    c.kind = e.at("kind").get<std::string>();
    c.query = e.at("query").get<std::string>();
    c.expected = e.at("expected").get<std::string>();
    c.observed = e.at("observed").get<std::string>();
    c.pass = e.at("pass").get<bool>();
    c.detail = e.at("detail").get<std::string>();
    c.fingerprint = e.at("fingerprint");
    c.elapsed_ms = e.at("elapsed_ms").get<double>();
    if (e.contains("verdict")) c.verdict = e.at("verdict");
    r.entries.push_back(std::move(c));
  }
  return r;
}

std::vector<std::string> SuiteReport::summary_lines() const {
  std::vector<std::string> groups;
  std::map<std::string, std::vector<const ClaimResult*>> by_group;
  for (const auto& e : entries) {
    if (!by_group.count(e.group)) groups.push_back(e.group);
    by_group[e.group].push_back(&e);
  }
  std::vector<std::string> lines;
  for (const auto& g : groups) {
    const auto& es = by_group[g];
    std::size_t ok = static_cast<std::size_t>(std::count_if(es.begin(), es.end(), [](auto* e) { return e->pass; }));
    bool uniform = std::all_of(es.begin(), es.end(), [&](auto* e) { return e->expected == es.front()->expected; });
    std::string label = uniform ? es.front()->expected : "as expected";
    lines.push_back(g + ": " + std::to_string(ok) + "/" + std::to_string(es.size()) + " " + label);
  }
  return lines;
}

std::vector<std::string> reverify_report(const SuiteReport& r, const EngineConfig& cfg) {
  std::vector<std::string> failed;
  for (const auto& e : r.entries) {
    if (!e.verdict) continue;
    Claim::Kind kind = e.kind == "sat" ? Claim::Kind::sat : Claim::Kind::check;
    try {
      if (recheck(e.query, kind, *e.verdict, cfg)) failed.push_back(e.id);
    } catch (const std::exception&) {
      failed.push_back(e.id);
    }
  }
  return failed;
}

}  // namespace deolog
