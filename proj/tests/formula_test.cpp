#include <doctest.h>

#include "deolog/formula.hpp"
#include "deolog/model.hpp"
#include "deolog/random.hpp"
#include "deolog/syntax.hpp"
#include "helpers.hpp"

using namespace deolog;
using testing::core;

TEST_SUITE("formula") {
  TEST_CASE("parse builds the expected trees") {
    auto p = Surface::var("p"), q = Surface::var("q"), r = Surface::var("r");
    CHECK(parse("C(p, q)") == Surface::binary(Op::cond_oblig, p, q));
    CHECK(parse("p > (q > r)") == Surface::binary(Op::pref_strict, p, Surface::binary(Op::pref_strict, q, r)));
    CHECK(parse("O p -> O (p | q)") ==
          Surface::binary(Op::implies, Surface::unary(Op::oblig, p),
                          Surface::unary(Op::oblig, Surface::binary(Op::or_, p, q))));
    CHECK(parse("p -> q -> r") == Surface::binary(Op::implies, p, Surface::binary(Op::implies, q, r)));
    CHECK(parse("p <-> q <-> r") == Surface::binary(Op::iff, Surface::binary(Op::iff, p, q), r));
    CHECK(parse("~p & q | r") ==
          Surface::binary(Op::or_, Surface::binary(Op::and_, Surface::unary(Op::not_, p), q), r));
    CHECK(parse("p & q >= r") == Surface::binary(Op::pref_weak, Surface::binary(Op::and_, p, q), r));
    CHECK(parse("T >= F") == Surface::binary(Op::pref_weak, Surface::top(), Surface::bot()));
  }

  TEST_CASE("syntax errors carry offsets") {
    auto offset_of = [](const char* text) -> std::size_t {
      try {
        parse(text);
      } catch (const SyntaxError& e) {
        return e.offset();
      }
      FAIL("no syntax error for ", text);
      return 0;
    };
    CHECK(offset_of("p >") == 3);
    CHECK(offset_of("p > q > r") == 6);
    CHECK(offset_of("(p & q") == 6);
    CHECK(offset_of("C(p q)") == 4);
    CHECK(offset_of("p @ q") == 2);
    CHECK(offset_of("") == 0);
    CHECK_THROWS_AS(parse("$phi"), SyntaxError);
    ParseOptions meta;
    meta.allow_metavariables = true;
    CHECK(parse("$phi", meta) == Surface::meta("phi"));
  }

  TEST_CASE("print uses minimal parentheses") {
    auto p = Surface::var("p"), q = Surface::var("q");
    CHECK(print(Surface::binary(Op::cond_oblig, p, q)) == "C(p, q)");
    CHECK(print(Surface::binary(Op::pref_weak, Surface::unary(Op::not_, p), q)) == "~p >= q");
    CHECK(print(parse("(p -> q) -> r")) == "(p -> q) -> r");
    CHECK(print(parse("p -> (q -> r)")) == "p -> q -> r");
    CHECK(print(parse("(p >= q) >= q")) == "(p >= q) >= q");
    CHECK(print(parse("~(p & q)")) == "~(p & q)");
  }

  TEST_CASE("parse(print(f)) == f on random formulas") {
    Rng rng(7);
    FormulaShape shape;
    shape.vars = {"p", "q", "r", "s1"};
    shape.max_modal_depth = 3;
    shape.max_size = 20;
    for (int i = 0; i < 1000; ++i) {
      Surface f = random_formula(rng, shape);
      std::string text = print(f);
      INFO(text);
      REQUIRE(parse(text) == f);
    }
  }

  TEST_CASE("desugar lowers abbreviations") {
    CHECK(core("<>p") == Core::pref(Core::var("p"), Core::var("p")));
    auto np = Core::negate(Core::var("p"));
    CHECK(core("[]p") == Core::negate(Core::pref(np, np)));
    CHECK(core("O p") == core("(T & p) > (T & ~p)"));
    CHECK(core("O p") == core("C(T, p)"));
    CHECK(core("C(p, q)") == core("(p & q) > (p & ~q)"));
    CHECK(core("p > q") == core("((p >= q) & ~(q >= p))"));
    CHECK(core("p ~~ q") == core("((p >= q) & (q >= p))"));
    CHECK(core("p <= q") == core("q >= p"));
    CHECK(core("p < q") == core("q > p"));
    CHECK(core("P p") == core("p >= ~p"));
    DesugarOptions dual;
    dual.permission_as_dual = true;
    CHECK(desugar(parse("P p"), dual) == core("~O~p"));
    CHECK(core("P F") == core("F >= ~F"));
  }

  TEST_CASE("top is anchored on the least variable or _t") {
    CHECK(variables(core("T")) == std::vector<std::string>{"_t"});
    CHECK(variables(core("O p")) == std::vector<std::string>{"p"});
    CHECK(variables(core("O r & q")) == std::vector<std::string>{"q", "r"});
    CHECK(variables(core("p >= q")) == std::vector<std::string>{"p", "q"});
    std::vector<Surface> query = {parse("O r"), parse("q")};
    CHECK(anchor_for(query) == "q");
    CHECK(anchor_for(std::vector<Surface>{parse("T")}) == "_t");
  }

  TEST_CASE("modal depth and operands") {
    CHECK(modal_depth(core("p & ~q")) == 0);
    CHECK(modal_depth(core("O p")) == 1);
    CHECK(modal_depth(core("O O p")) == 2);
    CHECK(pref_operands(core("p >= q")) == std::vector<Core>{Core::var("p"), Core::var("q")});
    auto ops = pref_operands(core("O p"));
    CHECK(ops.size() == 2);
    auto nested = pref_operands(core("O O p"));
    // Operands are ordered innermost first.
    for (std::size_t i = 1; i < nested.size(); ++i) CHECK(nested[i - 1].depth() <= nested[i].depth());
    CHECK(nested.front().depth() == 0);
    CHECK(nested.back().depth() == 1);
  }

  TEST_CASE("desugar is idempotent through embed") {
    Rng rng(11);
    FormulaShape shape;
    shape.vars = {"p", "q", "r"};
    for (int i = 0; i < 500; ++i) {
      Surface f = random_formula(rng, shape);
      DesugarOptions d;
      d.anchor = "p";
      Core c = desugar(f, d);
      REQUIRE(desugar(embed(c), d) == c);
    }
  }

  TEST_CASE("modal connectives always give positive depth") {
    Rng rng(13);
    FormulaShape shape;
    for (int i = 0; i < 500; ++i) {
      Surface f = random_formula(rng, shape);
      if (contains_modal(f)) REQUIRE(modal_depth(desugar(f)) >= 1);
    }
  }

  TEST_CASE("box and not-diamond-not agree on random models") {
    Rng rng(17);
    FormulaShape shape;
    shape.vars = {"p", "q"};
    for (int i = 0; i < 300; ++i) {
      Model m = i % 2 ? random_delta_model(rng, {"p", "q"}) : random_basic_model(rng, {"p", "q"});
      Surface f = random_formula(rng, shape);
      DesugarOptions d;
      d.anchor = "p";
      auto box = desugar(Surface::unary(Op::box, f), d);
      auto dual = desugar(Surface::unary(Op::not_, Surface::unary(Op::diamond, Surface::unary(Op::not_, f))), d);
      REQUIRE(denote(m, box) == denote(m, dual));
    }
  }
}
