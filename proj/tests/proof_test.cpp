#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "deolog/proof.hpp"
#include "deolog/random.hpp"
#include "deolog/syntax.hpp"
#include "helpers.hpp"

using namespace deolog;
namespace fs = std::filesystem;

namespace {

const Schema& schema(const char* id) {
  const Schema* s = find_schema(id);
  REQUIRE(s);
  return *s;
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("proof") {
  TEST_CASE("schema matching") {
    auto m = match_schema(schema("Ax1-trans"), parse("((p >= q) & (q >= r)) -> (p >= r)"));
    REQUIRE(m);
    CHECK(m->at("phi") == parse("p"));
    CHECK(m->at("psi") == parse("q"));
    CHECK(m->at("theta") == parse("r"));
    CHECK(!match_schema(schema("Ax1-trans"), parse("(p >= q) -> (p >= r)")));

    auto ax3 = match_schema(schema("Ax3-subst"),
                            parse("[](p <-> q) -> (((p >= r) <-> (q >= r)) & ((r >= p) <-> (r >= q)))"));
    REQUIRE(ax3);
    CHECK(ax3->at("phi") == parse("p"));
    CHECK(ax3->at("psi") == parse("q"));
    CHECK(ax3->at("theta") == parse("r"));

    // A metavariable must be bound consistently.
    CHECK(!match_schema(schema("T"), parse("[]p -> q")));
    CHECK(match_schema(schema("T"), parse("[](p & O q) -> p & O q")));
    CHECK(!find_schema("B"));
  }

  TEST_CASE("tautology instances") {
    CHECK(is_tautology_instance(parse("(p >= q) -> (p >= q)")));
    CHECK(is_tautology_instance(parse("O p | ~O p")));
    CHECK(!is_tautology_instance(parse("(p >= q) -> (q >= p)")));
    CHECK(is_tautology_instance(parse("p -> q -> p")));
    CHECK(!is_tautology_instance(parse("[]p -> p")));
    CHECK(match_schema(schema("PC-taut"), parse("(p >= q) -> (p >= q)")));
  }

  TEST_CASE("matching recovers random substitutions") {
    Rng rng(51);
    FormulaShape shape;
    shape.vars = {"p", "q", "r"};
    shape.max_size = 6;
    for (const auto& s : schemas()) {
      if (!s.templ) continue;
      for (int i = 0; i < 100; ++i) {
        Substitution sub;
        for (const char* mv : {"phi", "psi", "theta"}) sub.emplace(mv, random_formula(rng, shape));
        Surface inst = instantiate(*s.templ, sub);
        auto back = match_schema(s, inst);
        REQUIRE(back);
        REQUIRE(instantiate(*s.templ, *back) == inst);
        for (const auto& [k, v] : *back) REQUIRE(sub.at(k) == v);
      }
    }
    CHECK_THROWS_AS(instantiate(*schema("T").templ, Substitution{}), std::invalid_argument);
  }

  TEST_CASE("small derivations") {
    Derivation one;
    one.steps.push_back({Step::Kind::axiom, "PC-taut", std::nullopt, parse("(p >= p) -> (p >= p)"), {}});
    auto r = check_derivation(one);
    REQUIRE(r.ok);
    CHECK(*r.theorem == parse("(p >= p) -> (p >= p)"));

    Derivation bad_mp;
    bad_mp.steps.push_back({Step::Kind::axiom, "T", Substitution{{"phi", parse("p")}}, std::nullopt, {}});
    bad_mp.steps.push_back({Step::Kind::axiom, "T", Substitution{{"phi", parse("q")}}, std::nullopt, {}});
    bad_mp.steps.push_back({Step::Kind::mp, "", std::nullopt, std::nullopt, {1, 2}});
    auto e = check_derivation(bad_mp);
    CHECK(!e.ok);
    CHECK(e.failed_step == 3);

    Derivation nec;
    nec.steps.push_back({Step::Kind::axiom, "PC-taut", std::nullopt, parse("p -> p"), {}});
    nec.steps.push_back({Step::Kind::nec, "", std::nullopt, std::nullopt, {1}});
    auto n = check_derivation(nec);
    REQUIRE(n.ok);
    CHECK(*n.theorem == parse("[](p -> p)"));

    Derivation out_of_range;
    out_of_range.steps.push_back({Step::Kind::nec, "", std::nullopt, std::nullopt, {1}});
    CHECK(check_derivation(out_of_range).failed_step == 1);
  }

  TEST_CASE("shipped derivations check") {
    auto files = json_files(testing::data_path("derivations"));
    CHECK(files.size() == 20);
    for (const auto& f : files) {
      INFO(f.string());
      auto r = check_derivation(load_derivation(f.string()));
      CHECK(r.ok);
    }
  }

  TEST_CASE("corrupted derivations fail at the recorded step") {
    auto files = json_files(testing::data_path("derivations/corrupt"));
    CHECK(files.size() == 5);
    for (const auto& f : files) {
      INFO(f.string());
      std::ifstream in(f);
      auto doc = nlohmann::json::parse(in);
      auto r = check_derivation(derivation_from_json(doc));
      CHECK(!r.ok);
      CHECK(r.failed_step == doc.at("expect_failure_step").get<std::size_t>());
    }
  }

  TEST_CASE("malformed derivation documents are rejected") {
    CHECK_THROWS_AS(derivation_from_json(nlohmann::json::parse(R"({"steps": 3})")), DerivationFormatError);
    CHECK_THROWS_AS(derivation_from_json(nlohmann::json::parse(R"({"steps": [{"kind": "jump"}]})")),
                    DerivationFormatError);
  }
}
