#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "deolog/formula.hpp"
#include "deolog/model.hpp"

namespace deolog {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a model document. Selection entries may name their proposition by a
/// formula string; those are resolved against the entries already known until
/// nothing changes. Does not run validate_model.
Model model_from_json(const nlohmann::json& doc, const DesugarOptions& opts = {});
Model parse_model(const std::string& text, const DesugarOptions& opts = {});
Model load_model(const std::string& path, const DesugarOptions& opts = {});

/// Canonical document: sorted keys, worlds and selection in model order,
/// propositions as explicit world-name arrays.
nlohmann::json model_to_json(const Model& m);
std::string dump_model(const Model& m);

/// Sorted world names, e.g. "{01, 11}".
std::string format_proposition(const Model& m, const Proposition& p);

}  // namespace deolog
