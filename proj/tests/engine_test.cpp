#include <doctest.h>

#include <fstream>
#include <sstream>

#include "deolog/engine.hpp"
#include "deolog/model_io.hpp"
#include "deolog/random.hpp"
#include "helpers.hpp"

using namespace deolog;

namespace {

Sequent seq(const char* text) { return parse_sequent(text); }

const RegimeWeighted& grid9() {
  static const RegimeWeighted r{{}, parse_grid("1..9"), 0};
  return r;
}

bool is_invalid(const Verdict& v) { return std::holds_alternative<Invalid>(v); }
bool no_countermodel(const Verdict& v) {
  if (const auto* q = std::get_if<QualifiedValid>(&v)) return !q->budget_limited;
  return std::holds_alternative<Valid>(v);
}

// Reload the countermodel from its document and re-evaluate the query.
bool reloads_and_fails(const Invalid& inv, const Sequent& s) {
  nlohmann::json doc = verdict_to_json(Verdict{inv});
  Model m = model_from_json(doc.at("model"));
  if (!validate_model(m).empty()) return false;
  auto w = m.find_world(parse_world_name(doc.at("witness").get<std::string>()).members);
  return w && holds_at(m, query_formula(s), *w);
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("sequent syntax") {
    auto s = seq("O p ; ~p > ~q |- O q");
    CHECK(s.premises.size() == 2);
    CHECK(print(s.conclusion) == "O q");
    CHECK(seq("|- p").premises.empty());
    CHECK_THROWS_AS(parse_sequent("p ; q"), SyntaxError);
    try {
      parse_sequent("p ; q > |- r");
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      CHECK(e.offset() == 8);
    }
  }

  TEST_CASE("trivial and delta validities") {
    CHECK(std::holds_alternative<Valid>(check(seq("O p |- O p"), RegimeDelta{0})));
    CHECK(std::holds_alternative<Valid>(check(seq("O p |- O p"), grid9())));
    CHECK(std::holds_alternative<QualifiedValid>(check(seq("O p |- O p"), RegimeBasic{3})));
    auto v = check(seq("O p ; ~p > ~q |- O q"), RegimeDelta{0});
    REQUIRE(std::holds_alternative<Valid>(v));
    CHECK(std::get<Valid>(v).fingerprint.extra_vars == 0);
    CHECK(!find_countermodel_delta(seq("C(p, q) ; p |- O q"), 0));
  }

  TEST_CASE("delta countermodels") {
    auto split = seq("O p |- O (p & q) | O (p & ~q)");
    auto inv = find_countermodel_delta(split, 2);
    REQUIRE(inv);
    CHECK(reverify(*inv, query_formula(split)));
    CHECK(reloads_and_fails(*inv, split));

    auto nested = seq("O O p |- O p");
    auto nested_inv = find_countermodel_delta(nested, 1);
    REQUIRE(nested_inv);
    CHECK(reloads_and_fails(*nested_inv, nested));
  }

  TEST_CASE("basic regime") {
    CHECK(!find_countermodel_basic(seq("|- ~(O p & O ~p)"), 4));
    CHECK(!find_countermodel_basic(seq("C(p, q) |- <>(p & q) & <>(p & ~q)"), 4));
    auto contra = seq("C(p, q) |- C(~q, ~p)");
    auto inv = find_countermodel_basic(contra, 4);
    REQUIRE(inv);
    CHECK(reloads_and_fails(*inv, contra));
    CHECK(no_countermodel(check(seq("|- ~(O T)"), RegimeBasic{4})));
  }

  TEST_CASE("weighted validity with a weight class") {
    auto cls = parse_weight_class("q>p,q>r");
    auto grid = parse_grid("1..9");
    CHECK(std::holds_alternative<Valid>(check_weighted_validity(seq("O(p | q) ; ~q |- O p"), cls, grid, 0)));
    CHECK(std::holds_alternative<Valid>(check_weighted_validity(seq("O p |- O(p & q) | O(p & ~q)"), cls, grid, 0)));
    CHECK(is_invalid(check_weighted_validity(seq("O p |- O(p & q) | O(p & ~q)"), {}, grid, 0)));
  }

  TEST_CASE("invalid under every weighting") {
    auto grid = parse_grid("1..9");
    auto b = check_forall_weights_invalidity(seq("O(p & q) |- O q"), grid, 2);
    REQUIRE(is_invalid(b));
    CHECK(std::get<Invalid>(b).weight_robust);
    CHECK(is_invalid(check_forall_weights_invalidity(seq("|- O(O p -> p)"), grid, 2)));
    CHECK(is_invalid(check_forall_weights_invalidity(seq("P p |- P O p"), grid, 2)));
    CHECK(is_invalid(check_forall_weights_invalidity(seq("O p |- O(p | q)"), grid, 2)));
  }

  TEST_CASE("the factual-detachment countermodel matches the worked ranks") {
    auto s = seq("O(p -> q) |- O p -> O q");
    auto v = check_forall_weights_invalidity(s, parse_grid("1..9"), 0);
    REQUIRE(is_invalid(v));
    const auto& inv = std::get<Invalid>(v);
    CHECK(inv.weight_robust);
    const Model& m = inv.model;
    auto u = [&](std::uint32_t mask) { return m.utility[*m.find_world(mask)]; };
    // Order-isomorphic to 2, 1, 3, 4 on 01, 10, 11, 00.
    CHECK(u(0b10) < u(0b01));
    CHECK(u(0b01) < u(0b11));
    CHECK(u(0b11) < u(0b00));
  }

  TEST_CASE("satisfiability") {
    std::ifstream in(testing::data_path("chisholm.txt"));
    REQUIRE(in);
    std::vector<Surface> fs;
    for (std::string line; std::getline(in, line);)
      if (!line.empty() && line[0] != '#') fs.push_back(parse(line));
    REQUIRE(fs.size() == 4);
    auto v = satisfiable(fs, RegimeDelta{0});
    REQUIRE(std::holds_alternative<Satisfiable>(v));
    const auto& sat = std::get<Satisfiable>(v);
    CHECK(validate_model(sat.model).empty());
    CHECK(is_delta_based(sat.model));
    CHECK(holds_at(sat.model, conjunction_formula(fs), sat.world));

    std::vector<Surface> contradiction = {parse("p & ~p")};
    CHECK(std::holds_alternative<Unsatisfiable>(satisfiable(contradiction, RegimeDelta{0})));
    std::vector<Surface> ot = {parse("O T")};
    CHECK(std::holds_alternative<Unsatisfiable>(satisfiable(ot, RegimeBasic{4})));
  }

  TEST_CASE("weight-robust countermodels survive 50 random reweightings") {
    Rng rng(41);
    for (const char* text : {"O(p & q) |- O q", "O(p -> q) |- O p -> O q", "O p |- O(p | q)"}) {
      auto s = seq(text);
      auto v = check_forall_weights_invalidity(s, parse_grid("1..9"), 2);
      REQUIRE(is_invalid(v));
      const auto& inv = std::get<Invalid>(v);
      REQUIRE(inv.weight_robust);
      Core q = query_formula(s);
      for (int i = 0; i < 50; ++i) {
        Weighting p = random_weighting(rng, inv.model.universe);
        Model m = reweight(inv.model, p);
        for (const auto& c : inv.needed_cells) REQUIRE(m.selection.at(c) == inv.model.selection.at(c));
        REQUIRE(holds_at(m, q, inv.witness));
      }
    }
  }

  TEST_CASE("solver and oracle backends agree") {
    Rng rng(43);
    FormulaShape shape;
    shape.max_modal_depth = 1;
    shape.max_size = 6;
    EngineConfig oracle;
    oracle.backend = Backend::oracle;
    for (int i = 0; i < 40; ++i) {
      Sequent s = random_sequent(rng, shape, 1);
      INFO(print(s));
      Regime r = i % 2 ? Regime{RegimeBasic{3}} : Regime{RegimeDelta{0}};
      REQUIRE(is_invalid(check(s, r)) == is_invalid(check(s, r, oracle)));
    }
  }

  TEST_CASE("regimes are monotone") {
    Rng rng(47);
    FormulaShape shape;
    shape.max_modal_depth = 1;
    shape.max_size = 6;
    for (int i = 0; i < 40; ++i) {
      Sequent s = random_sequent(rng, shape, 1);
      INFO(print(s));
      bool basic_ok = no_countermodel(check(s, RegimeBasic{4}));
      bool delta_ok = no_countermodel(check(s, RegimeDelta{0}));
      bool weighted_ok = no_countermodel(check(s, grid9()));
      if (basic_ok) REQUIRE(delta_ok);
      if (delta_ok) REQUIRE(weighted_ok);
    }
  }

  TEST_CASE("budget exhaustion is reported, not guessed") {
    EngineConfig tiny;
    tiny.budget = 1;
    auto v = check(seq("(p >= q) & (q >= r) |- p >= r"), RegimeBasic{4}, tiny);
    REQUIRE(std::holds_alternative<QualifiedValid>(v));
    CHECK(std::get<QualifiedValid>(v).budget_limited);
  }
}
