#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deolog/formula.hpp"

namespace deolog {

/// Parse failure. `offset` is a byte offset into the input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string detail_;
};

struct ParseOptions {
  /// Accept `$name` metavariables (schema templates only).
  bool allow_metavariables = false;
};

/// Precedence, tightest first: unary {~ [] <> O P}, &, |, -> (right),
/// <-> (left), {>= > <= < ~~} (non-associative). `C(f, g)` is a prefix form.
Surface parse(std::string_view text, const ParseOptions& opts = {});

/// Minimal parenthesization; parse(print(f)) == f.
std::string print(const Surface& f);
std::string print(const Core& f);

}  // namespace deolog
