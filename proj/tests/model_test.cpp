#include <doctest.h>

#include "deolog/model.hpp"
#include "deolog/model_io.hpp"
#include "deolog/random.hpp"
#include "deolog/world.hpp"
#include "deolog/world_set.hpp"
#include "helpers.hpp"

using namespace deolog;
using testing::core_anchored;
using testing::names;

namespace {

World w(const char* name) { return parse_world_name(name); }

}  // namespace

TEST_SUITE("worlds") {
  TEST_CASE("world names are MSB first") {
    CHECK(w("10").members == 0b10);
    CHECK(w("10").contains(0));
    CHECK(!w("10").contains(1));
    CHECK(world_name(World{0b011, 3}) == "011");
    CHECK_THROWS(parse_world_name("12"));
  }

  TEST_CASE("symmetric difference") {
    // universe [p, q, r]
    CHECK(symmetric_difference(w("110"), w("011")) == w("101"));
    CHECK(symmetric_difference(w("101"), w("101")) == w("000"));
    CHECK(symmetric_difference(w("00"), w("10")) == w("10"));
    CHECK_THROWS_AS(symmetric_difference(w("10"), w("100")), UniverseMismatch);
  }

  TEST_CASE("power set") {
    CHECK(powerset_worlds(1).size() == 2);
    CHECK(powerset_worlds(2).size() == 4);
    CHECK(powerset_worlds(3).size() == 8);
    CHECK(world_name(powerset_worlds(2)[2]) == "10");
    CHECK_THROWS(powerset_worlds(13));
  }

  TEST_CASE("world sets") {
    WorldSet a(130), b(130);
    a.set(0);
    a.set(70);
    a.set(129);
    b.set(70);
    CHECK(a.count() == 3);
    CHECK(b.is_subset_of(a));
    CHECK(!a.is_subset_of(b));
    CHECK((a & b) == b);
    CHECK(a.minus(b).count() == 2);
    CHECK(a.complement().count() == 127);
    CHECK(WorldSet::full(130).count() == 130);
    CHECK(WorldSet(5).complement() == WorldSet::full(5));
    CHECK(a.members() == std::vector<std::uint32_t>{0, 70, 129});
    CHECK(b.first() == 70);
    CHECK(WorldSet(9).first() == 9);
  }

  TEST_CASE("rationals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(to_string(parse_rational("4")) == "4");
    CHECK_THROWS(parse_rational("x"));
  }
}

TEST_SUITE("models") {
  TEST_CASE("appendix model evaluates as in the worked countermodel") {
    Model m = testing::appendix_model();
    CHECK(validate_model(m).empty());
    auto obl = denote(m, core_anchored("O(p -> q)", "p"));
    CHECK(obl.test(*m.find_world(0b01)));
    auto oq = denote(m, core_anchored("O q", "p"));
    CHECK(!oq.test(*m.find_world(0b01)));
    CHECK(holds_at(m, core_anchored("O(p -> q) & O p & ~O q", "p"), *m.find_world(0b01)));
  }

  TEST_CASE("constants and existential import") {
    Model m = testing::appendix_model();
    CHECK(denote(m, core_anchored("T", "p")) == Proposition::full(m.size()));
    CHECK(denote(m, core_anchored("F", "p")).empty());
    CHECK(denote(m, core_anchored("T >= F", "p")).empty());
    CHECK(denote(m, core_anchored("~(F >= p)", "p")) == Proposition::full(m.size()));
    for (std::uint32_t i = 0; i < m.size(); ++i) {
      CHECK(holds_at(m, core_anchored("T", "p"), i));
      CHECK(!holds_at(m, core_anchored("F", "p"), i));
    }
  }

  TEST_CASE("missing cells and unknown variables are reported") {
    Model m = testing::appendix_model();
    CHECK_THROWS_AS(denote(m, core_anchored("p >= q & p", "p")), MissingSelection);
    CHECK_THROWS_AS(denote(m, core_anchored("z", "p")), UnknownVariable);
  }

  TEST_CASE("validate_model flags bad selections") {
    Model m = testing::appendix_model();
    Model bad = m;
    auto first = bad.selection.begin();
    Proposition outside = first->first.prop.complement();
    first->second = static_cast<std::uint32_t>(outside.first());
    CHECK(!validate_model(bad).empty());

    // sigma(11, [[~q]]) = 00 is not delta-minimal: {p,q} is not minimal when 10 gives {q}.
    Model nonmin = m;
    Proposition notq = denote(m, core_anchored("~q", "p"));
    nonmin.selection[Cell{*m.find_world(0b11), notq}] = *m.find_world(0b00);
    auto problems = validate_model(nonmin);
    REQUIRE(!problems.empty());
    CHECK(problems.front().find("11") != std::string::npos);
  }

  TEST_CASE("model documents round-trip byte for byte") {
    Model m = testing::appendix_model();
    std::string once = dump_model(m);
    std::string twice = dump_model(parse_model(once));
    CHECK(once == twice);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      Model r = i % 2 ? random_delta_model(rng, {"p", "q"}) : random_basic_model(rng, {"p", "q", "r"});
      if (i % 3 == 0) r.weights = random_weighting(rng, r.universe);
      std::string text = dump_model(r);
      REQUIRE(dump_model(parse_model(text)) == text);
    }
  }

  TEST_CASE("format_proposition lists sorted names") {
    Model m = testing::appendix_model();
    CHECK(format_proposition(m, Proposition::full(m.size())) == "{00, 01, 10, 11}");
    CHECK(format_proposition(m, Proposition(m.size())) == "{}");
    CHECK(names(m, denote(m, core_anchored("p", "p"))) == std::vector<std::string>{"10", "11"});
  }

  TEST_CASE("boolean clauses and preference properties on random models") {
    Rng rng(5);
    FormulaShape shape;
    shape.vars = {"p", "q", "r"};
    DesugarOptions d;
    d.anchor = "p";
    for (int i = 0; i < 300; ++i) {
      Model m = i % 2 ? random_delta_model(rng, shape.vars) : random_basic_model(rng, shape.vars);
      Surface f = random_formula(rng, shape), g = random_formula(rng, shape), h = random_formula(rng, shape);
      auto F = denote(m, desugar(f, d)), G = denote(m, desugar(g, d)), H = denote(m, desugar(h, d));
      REQUIRE(denote(m, desugar(Surface::unary(Op::not_, f), d)) == F.complement());
      REQUIRE(denote(m, desugar(Surface::binary(Op::and_, f, g), d)) == (F & G));
      auto fg = denote(m, desugar(Surface::binary(Op::pref_weak, f, g), d));
      if (F.empty() || G.empty()) REQUIRE(fg.empty());
      auto gh = denote(m, desugar(Surface::binary(Op::pref_weak, g, h), d));
      auto fh = denote(m, desugar(Surface::binary(Op::pref_weak, f, h), d));
      REQUIRE((fg & gh).is_subset_of(fh));
      auto ff = denote(m, desugar(Surface::binary(Op::pref_weak, f, f), d));
      REQUIRE(ff == (F.empty() ? Proposition(m.size()) : Proposition::full(m.size())));
    }
  }
}
