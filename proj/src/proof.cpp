#include "deolog/proof.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "deolog/syntax.hpp"

namespace deolog {

using nlohmann::json;

namespace {

Surface templ(std::string_view text) {
  ParseOptions o;
  o.allow_metavariables = true;
  return parse(text, o);
}

bool match(const Surface& t, const Surface& f, Substitution& sub) {
  if (t.op() == Op::meta) {
    auto [it, fresh] = sub.emplace(t.name(), f);
    return fresh || it->second == f;
  }
  if (t.op() != f.op() || t.kids().size() != f.kids().size()) return false;
  if (t.op() == Op::var && t.name() != f.name()) return false;
  for (std::size_t i = 0; i < t.kids().size(); ++i)
    if (!match(t.kid(i), f.kid(i), sub)) return false;
  return true;
}

bool truth_functional(Op op) {
  switch (op) {
    case Op::var:
    case Op::top:
    case Op::bot:
    case Op::not_:
    case Op::and_:
    case Op::or_:
    case Op::implies:
    case Op::iff:
      return true;
    default:
      return false;
  }
}

class Abstraction {
 public:
  std::size_t atom(const Surface& f) {
    auto it = ids_.find(f);
    if (it != ids_.end()) return it->second;
    std::size_t id = ids_.size();
    ids_.emplace(f, id);
    return id;
  }
  std::size_t count() const { return ids_.size(); }

  void collect(const Surface& f) {
    if (f.op() == Op::top || f.op() == Op::bot) return;
    if (f.op() == Op::var || !truth_functional(f.op())) {
      atom(f);
      return;
    }
    for (const auto& k : f.kids()) collect(k);
  }

  bool eval(const Surface& f, std::uint64_t row) {
    switch (f.op()) {
      case Op::top:
        return true;
      case Op::bot:
        return false;
      case Op::not_:
        return !eval(f.kid(0), row);
      case Op::and_:
        return eval(f.kid(0), row) && eval(f.kid(1), row);
      case Op::or_:
        return eval(f.kid(0), row) || eval(f.kid(1), row);
      case Op::implies:
        return !eval(f.kid(0), row) || eval(f.kid(1), row);
      case Op::iff:
        return eval(f.kid(0), row) == eval(f.kid(1), row);
      default:
        return row >> atom(f) & 1u;
    }
  }

 private:
  std::unordered_map<Surface, std::size_t, SurfaceHash> ids_;
};

}  // namespace

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> all = {
      {"PC-taut", std::nullopt},
      {"K", templ("[]($phi -> $psi) -> ([]$phi -> []$psi)")},
      {"T", templ("[]$phi -> $phi")},
      {"Five", templ("<>$phi -> []<>$phi")},
      {"Ax1-trans", templ("(($phi >= $psi) & ($psi >= $theta)) -> ($phi >= $theta)")},
      {"Ax2-conn", templ("(<>$phi & <>$psi) <-> (($phi >= $psi) | ($psi >= $phi))")},
      {"Ax3-subst",
       templ("[]($phi <-> $psi) -> ((($phi >= $theta) <-> ($psi >= $theta)) & (($theta >= $phi) <-> ($theta >= $psi)))")},
  };
  return all;
}

const Schema* find_schema(std::string_view id) {
  for (const auto& s : schemas())
    if (s.id == id) return &s;
  return nullptr;
}

std::optional<Substitution> match_schema(const Schema& s, const Surface& f) {
  if (!s.templ) {
    if (is_tautology_instance(f)) return Substitution{};
    return std::nullopt;
  }
  Substitution sub;
  if (!match(*s.templ, f, sub)) return std::nullopt;
  return sub;
}

Surface instantiate(const Surface& t, const Substitution& sub) {
  switch (t.op()) {
    case Op::meta: {
      auto it = sub.find(t.name());
      if (it == sub.end()) throw std::invalid_argument("unbound metavariable $" + t.name());
      return it->second;
    }
    case Op::var:
    case Op::top:
    case Op::bot:
      return t;
    default:
      break;
  }
  if (t.kids().size() == 1) return Surface::unary(t.op(), instantiate(t.kid(0), sub));
  return Surface::binary(t.op(), instantiate(t.kid(0), sub), instantiate(t.kid(1), sub));
}

bool is_tautology_instance(const Surface& f) {
  Abstraction a;
  a.collect(f);
  if (a.count() > 20) throw std::invalid_argument("too many atoms for a truth table");
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << a.count()); ++row)
    if (!a.eval(f, row)) return false;
  return true;
}

Derivation derivation_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("steps") || !doc.at("steps").is_array())
    throw DerivationFormatError("derivation needs a 'steps' array");
  auto formula = [](const json& v, const std::string& where) {
    if (!v.is_string()) throw DerivationFormatError(where + " must be a formula string");
    try {
      return parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw DerivationFormatError(where + ": " + e.what());
    }
  };
  Derivation d;
  std::size_t index = 0;
  for (const auto& s : doc.at("steps")) {
    ++index;
    std::string at = "step " + std::to_string(index);
    if (!s.is_object() || !s.contains("kind")) throw DerivationFormatError(at + " needs a 'kind'");
    Step step;
    std::string kind = s.at("kind").get<std::string>();
    if (kind == "axiom") {
      step.kind = Step::Kind::axiom;
      if (!s.contains("schema")) throw DerivationFormatError(at + " needs a 'schema'");
      step.schema = s.at("schema").get<std::string>();
      if (s.contains("substitution")) {
        Substitution sub;
        for (const auto& [k, v] : s.at("substitution").items()) {
          std::string name = !k.empty() && k[0] == '$' ? k.substr(1) : k;
          sub.emplace(name, formula(v, at + " substitution for " + name));
        }
        step.substitution = std::move(sub);
      }
      if (s.contains("formula")) step.formula = formula(s.at("formula"), at + " formula");
      if (!step.substitution && !step.formula)
        throw DerivationFormatError(at + " needs a 'substitution' or a 'formula'");
    } else if (kind == "mp" || kind == "nec") {
      step.kind = kind == "mp" ? Step::Kind::mp : Step::Kind::nec;
      if (!s.contains("refs") || !s.at("refs").is_array()) throw DerivationFormatError(at + " needs 'refs'");
      for (const auto& r : s.at("refs")) {
        if (!r.is_number_unsigned()) throw DerivationFormatError(at + " refs must be step numbers");
        step.refs.push_back(r.get<std::size_t>());
      }
      if (s.contains("formula")) step.formula = formula(s.at("formula"), at + " formula");
    } else {
      throw DerivationFormatError(at + " has unknown kind '" + kind + "'");
    }
    d.steps.push_back(std::move(step));
  }
  return d;
}

Derivation load_derivation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DerivationFormatError("cannot open derivation file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return derivation_from_json(json::parse(ss.str()));
  } catch (const json::exception& e) {
    throw DerivationFormatError(std::string("malformed derivation: ") + e.what());
  }
}

ProofResult check_derivation(const Derivation& d) {
  std::vector<Surface> proved;
  auto fail = [](std::size_t i, std::string why) { return ProofResult{false, std::nullopt, i, std::move(why)}; };
  if (d.steps.empty()) return fail(0, "empty derivation");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    const std::size_t n = i + 1;
    for (auto r : s.refs)
      if (r == 0 || r >= n) return fail(n, "reference " + std::to_string(r) + " does not precede the step");
    std::optional<Surface> got;
    switch (s.kind) {
      case Step::Kind::axiom: {
        const Schema* schema = find_schema(s.schema);
        if (!schema) return fail(n, "unknown schema '" + s.schema + "'");
        if (s.substitution) {
          if (!schema->templ) return fail(n, "PC-taut takes a formula, not a substitution");
          try {
            got = instantiate(*schema->templ, *s.substitution);
          } catch (const std::invalid_argument& e) {
            return fail(n, e.what());
          }
          if (s.formula && !(*s.formula == *got))
            return fail(n, "formula is not the instance of " + s.schema + " under the substitution");
        } else {
          if (!match_schema(*schema, *s.formula)) return fail(n, "formula is not an instance of " + s.schema);
          got = s.formula;
        }
        break;
      }
      case Step::Kind::mp: {
        if (s.refs.size() != 2) return fail(n, "modus ponens needs two references");
        const Surface& imp = proved[s.refs[0] - 1];
        const Surface& ante = proved[s.refs[1] - 1];
        if (imp.op() != Op::implies || !(imp.kid(0) == ante))
          return fail(n, "step " + std::to_string(s.refs[0]) + " is not an implication from step " +
                             std::to_string(s.refs[1]));
        got = imp.kid(1);
        break;
      }
      case Step::Kind::nec: {
        if (s.refs.size() != 1) return fail(n, "necessitation needs one reference");
        got = Surface::unary(Op::box, proved[s.refs[0] - 1]);
        break;
      }
    }
    if (s.kind != Step::Kind::axiom && s.formula && !(*s.formula == *got))
      return fail(n, "stated formula differs from the one derived");
    proved.push_back(*got);
  }
  return ProofResult{true, proved.back(), 0, {}};
}

}  // namespace deolog
