#include <doctest.h>

#include <algorithm>

#include "deolog/suite.hpp"
#include "helpers.hpp"

using namespace deolog;

namespace {

SuiteOptions options() {
  SuiteOptions o;
  o.data_dir = DEOLOG_TEST_DATA;
  o.threads = 2;
  return o;
}

}  // namespace

TEST_SUITE("suite") {
  TEST_CASE("manifest ids are unique and selectable") {
    auto all = manifest(options());
    std::vector<std::string> ids;
    for (const auto& c : all) ids.push_back(c.id);
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(select_claims(all, {"Prop4"}).size() == 6);
    CHECK(select_claims(all, {"Prop5"}).size() == 8);
    CHECK(select_claims(all, {"Prop6"}).size() == 13);
    CHECK(select_claims(all, {"Prop7"}).size() == 10);
    CHECK(select_claims(all, {"Prop4.f", "Chisholm"}).size() == 2);
    CHECK(select_claims(all, {}).size() == all.size());
    CHECK(select_claims(all, {"Nope"}).empty());
  }

  TEST_CASE("reports round-trip and their countermodels re-verify") {
    auto o = options();
    auto claims = select_claims(manifest(o), {"Prop4", "Delta", "Rejected", "Chisholm"});
    SuiteReport r = run_suite(claims, o);
    REQUIRE(r.entries.size() == claims.size());
    for (std::size_t i = 0; i < claims.size(); ++i) CHECK(r.entries[i].id == claims[i].id);
    CHECK(r.all_passed());
    auto lines = r.summary_lines();
    CHECK(std::find(lines.begin(), lines.end(), "Prop4: 6/6 valid") != lines.end());

    auto doc = r.to_json();
    SuiteReport back = SuiteReport::from_json(doc);
    CHECK(back.to_json() == doc);
    CHECK(reverify_report(back).empty());

    // Tampering with a countermodel's witness must be caught.
    auto tampered = doc;
    bool changed = false;
    for (auto& e : tampered.at("entries")) {
      if (!e.contains("verdict") || e.at("verdict").at("verdict") != "invalid") continue;
      auto& u = e.at("verdict").at("model").at("utility");
      for (auto& [k, v] : u.items()) v = 0;
      changed = true;
      break;
    }
    REQUIRE(changed);
    CHECK(reverify_report(SuiteReport::from_json(tampered)).size() == 1);
  }
}
