#include "deolog/world.hpp"

#include <numeric>
#include <sstream>

namespace deolog {

std::string world_name(World w) {
  std::string s(w.width, '0');
  for (std::uint32_t i = 0; i < w.width; ++i)
    if (w.contains(i)) s[i] = '1';
  return s;
}

World parse_world_name(std::string_view name) {
  if (name.empty() || name.size() > max_universe)
    throw std::invalid_argument("bad world name '" + std::string(name) + "'");
  World w{0, static_cast<std::uint32_t>(name.size())};
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '1')
      w.members |= var_bit(i, name.size());
    else if (name[i] != '0')
      throw std::invalid_argument("bad world name '" + std::string(name) + "'");
  }
  return w;
}

World symmetric_difference(World a, World b) {
  if (a.width != b.width) throw UniverseMismatch("worlds over different universes");
  return World{a.members ^ b.members, a.width};
}

std::vector<World> powerset_worlds(std::size_t n, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("universe must be nonempty");
  if (n > cap || n > max_universe)
    throw std::invalid_argument("universe of " + std::to_string(n) + " variables exceeds cap " +
                                std::to_string(cap));
  std::vector<World> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m)
    out.push_back(World{m, static_cast<std::uint32_t>(n)});
  return out;
}

Rational parse_rational(std::string_view text) {
  auto to_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad rational '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_int(text));
  std::int64_t den = to_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(to_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void Weighting::check() const {
  if (universe.size() != weight.size()) throw std::invalid_argument("weighting size mismatch");
  for (std::size_t i = 0; i < weight.size(); ++i)
    if (weight[i] <= 0)
      throw std::invalid_argument("weight of '" + universe[i] + "' must be positive");
}

std::vector<std::int64_t> Weighting::scaled_by_bit() const {
  std::int64_t lcm = 1;
  for (const auto& r : weight) lcm = std::lcm(lcm, r.denominator());
  std::size_t n = weight.size();
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[n - 1 - i] = weight[i].numerator() * (lcm / weight[i].denominator());
  return out;
}

std::string Weighting::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < universe.size(); ++i)
    os << (i ? "," : "") << universe[i] << "=" << to_string(weight[i]);
  return os.str();
}

}  // namespace deolog
