#pragma once

#include <string>
#include <vector>

#include "deolog/engine.hpp"
#include "deolog/model_io.hpp"
#include "deolog/syntax.hpp"

namespace testing {

inline std::string data_path(const std::string& rel) { return std::string(DEOLOG_TEST_DATA) + "/" + rel; }

inline deolog::Core core(const std::string& text) { return deolog::desugar(deolog::parse(text)); }

inline deolog::Core core_anchored(const std::string& text, const std::string& anchor) {
  deolog::DesugarOptions d;
  d.anchor = anchor;
  return deolog::desugar(deolog::parse(text), d);
}

inline std::vector<std::string> names(const deolog::Model& m, const deolog::Proposition& p) {
  std::vector<std::string> out;
  p.for_each([&](std::uint32_t i) { out.push_back(m.world_name(i)); });
  return out;
}

inline deolog::Model appendix_model() {
  deolog::DesugarOptions d;
  d.anchor = "p";
  return deolog::load_model(data_path("appendix_skz.json"), d);
}

}  // namespace testing
