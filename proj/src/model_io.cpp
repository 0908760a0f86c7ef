#include "deolog/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "deolog/syntax.hpp"

namespace deolog {

using nlohmann::json;

namespace {

std::uint32_t world_index(const Model& m, const json& name) {
  if (!name.is_string()) throw ModelFormatError("world names must be strings");
  World w;
  try {
    w = parse_world_name(name.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(e.what());
  }
  if (w.width != m.universe.size())
    throw ModelFormatError("world '" + name.get<std::string>() + "' does not match the universe size");
  auto i = m.find_world(w.members);
  if (!i) throw ModelFormatError("world '" + name.get<std::string>() + "' is not in the model");
  return *i;
}

Rational weight_value(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ModelFormatError("weights must be integers or rational strings");
}

struct PendingCell {
  std::uint32_t at;
  Core formula;
  std::uint32_t pick;
  std::string text;
};

}  // namespace

Model model_from_json(const json& doc, const DesugarOptions& opts) {
  if (!doc.is_object()) throw ModelFormatError("model document must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "mode" && key != "selection" && key != "universe" && key != "utility" && key != "weights" &&
        key != "worlds")
      throw ModelFormatError("unknown model field '" + key + "'");
  Model m;
  try {
    m.universe = doc.at("universe").get<std::vector<std::string>>();
    std::string mode = doc.value("mode", "basic");
    if (mode == "basic")
      m.mode = Mode::basic;
    else if (mode == "delta")
      m.mode = Mode::delta;
    else
      throw ModelFormatError("mode must be 'basic' or 'delta'");
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("bad universe or mode: ") + e.what());
  }
  if (m.universe.empty() || m.universe.size() > max_universe) throw ModelFormatError("bad universe size");
  if (!std::is_sorted(m.universe.begin(), m.universe.end()) ||
      std::adjacent_find(m.universe.begin(), m.universe.end()) != m.universe.end())
    throw ModelFormatError("universe must be sorted and duplicate-free");

  if (doc.contains("worlds")) {
    for (const auto& name : doc.at("worlds")) {
      if (!name.is_string()) throw ModelFormatError("world names must be strings");
      World w;
      try {
        w = parse_world_name(name.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ModelFormatError(e.what());
      }
      if (w.width != m.universe.size()) throw ModelFormatError("world '" + name.get<std::string>() + "' has wrong width");
      m.worlds.push_back(w.members);
    }
    std::sort(m.worlds.begin(), m.worlds.end());
    if (std::adjacent_find(m.worlds.begin(), m.worlds.end()) != m.worlds.end())
      throw ModelFormatError("duplicate world");
  } else if (m.mode == Mode::delta) {
    for (const auto& w : powerset_worlds(m.universe.size())) m.worlds.push_back(w.members);
  } else {
    throw ModelFormatError("basic-mode model must list its worlds");
  }

  m.utility.assign(m.worlds.size(), 0);
  std::vector<bool> has_utility(m.worlds.size(), false);
  if (!doc.contains("utility") || !doc.at("utility").is_object()) throw ModelFormatError("utility must be an object");
  for (const auto& [name, value] : doc.at("utility").items()) {
    auto i = world_index(m, json(name));
    if (!value.is_number_integer()) throw ModelFormatError("utility of '" + name + "' must be an integer");
    m.utility[i] = value.get<std::int64_t>();
    has_utility[i] = true;
  }
  for (std::size_t i = 0; i < m.worlds.size(); ++i)
    if (!has_utility[i]) throw ModelFormatError("utility missing for world " + m.world_name(static_cast<std::uint32_t>(i)));

  if (doc.contains("weights")) {
    Weighting p;
    p.universe = m.universe;
    p.weight.assign(m.universe.size(), Rational(0));
    std::vector<bool> seen(m.universe.size(), false);
    for (const auto& [var, value] : doc.at("weights").items()) {
      auto i = m.var_index(var);
      if (!i) throw ModelFormatError("weight for unknown variable '" + var + "'");
      try {
        p.weight[*i] = weight_value(value);
      } catch (const std::invalid_argument& e) {
        throw ModelFormatError(e.what());
      }
      seen[*i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw ModelFormatError("weight missing for '" + m.universe[i] + "'");
    m.weights = std::move(p);
  }

  std::vector<PendingCell> pending;
  if (doc.contains("selection")) {
    for (const auto& entry : doc.at("selection")) {
      if (!entry.is_object() || !entry.contains("at") || !entry.contains("of") || !entry.contains("pick"))
        throw ModelFormatError("selection entries need 'at', 'of' and 'pick'");
      std::uint32_t at = world_index(m, entry.at("at"));
      std::uint32_t pick = world_index(m, entry.at("pick"));
      const json& of = entry.at("of");
      if (of.is_array()) {
        Proposition prop(m.size());
        for (const auto& name : of) prop.set(world_index(m, name));
        Cell cell{at, prop};
        if (m.selection.count(cell)) throw ModelFormatError("duplicate selection entry at " + m.world_name(at));
        m.selection.emplace(std::move(cell), pick);
      } else if (of.is_string()) {
        std::string text = of.get<std::string>();
        std::optional<Surface> f;
        try {
          f = parse(text);
        } catch (const std::exception& e) {
          throw ModelFormatError("selection formula '" + text + "': " + e.what());
        }
        DesugarOptions local = opts;
        if (!local.anchor) {
          auto vars = variables(*f);
          local.anchor = vars.empty() ? m.universe.front() : vars.front();
        }
        pending.push_back({at, desugar(*f, local), pick, text});
      } else {
        throw ModelFormatError("'of' must be a formula string or a world-name array");
      }
    }
  }
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      Proposition prop;
      try {
        prop = denote(m, it->formula);
      } catch (const MissingSelection&) {
        ++it;
        continue;
      } catch (const UnknownVariable& e) {
        throw ModelFormatError("selection formula '" + it->text + "': " + e.what());
      }
      Cell cell{it->at, prop};
      auto found = m.selection.find(cell);
      if (found != m.selection.end() && found->second != it->pick)
        throw ModelFormatError("conflicting selection entries at " + m.world_name(it->at) + " for '" + it->text + "'");
      m.selection.emplace(std::move(cell), it->pick);
      it = pending.erase(it);
      progress = true;
    }
    if (!progress)
      throw ModelFormatError("selection formula '" + pending.front().text + "' depends on undefined selections");
  }
  return m;
}

Model parse_model(const std::string& text, const DesugarOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("malformed model document: ") + e.what());
  }
  return model_from_json(doc, opts);
}

Model load_model(const std::string& path, const DesugarOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), opts);
}

json model_to_json(const Model& m) {
  json doc;
  doc["mode"] = m.mode == Mode::delta ? "delta" : "basic";
  doc["universe"] = m.universe;
  json worlds = json::array();
  json utility = json::object();
  for (std::uint32_t i = 0; i < m.size(); ++i) {
    worlds.push_back(m.world_name(i));
    utility[m.world_name(i)] = m.utility[i];
  }
  doc["worlds"] = worlds;
  doc["utility"] = utility;
  json selection = json::array();
  for (const auto& [cell, pick] : m.selection) {
    json of = json::array();
    cell.prop.for_each([&](std::uint32_t x) { of.push_back(m.world_name(x)); });
    selection.push_back({{"at", m.world_name(cell.world)}, {"of", of}, {"pick", m.world_name(pick)}});
  }
  doc["selection"] = selection;
  if (m.weights) {
    json w = json::object();
    for (std::size_t i = 0; i < m.weights->universe.size(); ++i)
      w[m.weights->universe[i]] = to_string(m.weights->weight[i]);
    doc["weights"] = w;
  }
  return doc;
}

std::string dump_model(const Model& m) { return model_to_json(m).dump(2) + "\n"; }

std::string format_proposition(const Model& m, const Proposition& p) {
  std::string s = "{";
  bool first = true;
  p.for_each([&](std::uint32_t x) {
    s += (first ? "" : ", ") + m.world_name(x);
    first = false;
  });
  return s + "}";
}

}  // namespace deolog
