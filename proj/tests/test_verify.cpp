#include <gtest/gtest.h>

#include <set>

#include "folia/properties.hpp"
#include "folia/verify.hpp"

using namespace folia;

namespace {

const Registry& registry() {
  static const Registry r = Registry::load();
  return r;
}

std::set<std::string> ids(const std::vector<const Json*>& cases) {
  std::set<std::string> out;
  for (const auto* c : cases) out.insert(c->at("id").get<std::string>());
  return out;
}

}  // namespace

TEST(Registry, LoadsWithUniqueIdsAndAnchors) {
  const auto& cases = registry().cases();
  EXPECT_GE(cases.size(), 50u);
  std::set<std::string> seen;
  for (const auto& c : cases) {
    EXPECT_TRUE(seen.insert(c.at("id").get<std::string>()).second);
    EXPECT_FALSE(c.at("anchor").get<std::string>().empty());
    std::string tier = c.at("tier");
    EXPECT_TRUE(tier == "fast" || tier == "slow") << c.at("id");
  }
}

TEST(Registry, Filters) {
  EXPECT_EQ(ids(registry().filter("appendix", "all")),
            (std::set<std::string>{"lemma-a3", "lemma-a4", "lemma-a5", "lemma-a6", "lemma-a7", "lemma-a8", "w6-powers"}));
  EXPECT_EQ(ids(registry().filter("", "slow")), (std::set<std::string>{"eq-4.2", "eq-4.3", "eq-4.4"}));
  EXPECT_EQ(registry().filter("", "all").size(), registry().cases().size());
  EXPECT_TRUE(registry().filter("no-such-thing", "all").empty());
  EXPECT_EQ(registry().find("nope"), nullptr);
}

TEST(Registry, RejectsBrokenFiles) { EXPECT_THROW(Registry::load("/nonexistent/cases.json"), std::runtime_error); }

TEST(Verify, AppendixCaseReportsCoefficient) {
  Report r = verify_case(*registry().find("lemma-a3"));
  EXPECT_EQ(r.status(), "pass");
  const Check* c = r.find_check("xi_psi_equals_multiple");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->pass);
  EXPECT_NE(r.find_check("subsum A-B+C"), nullptr);
  EXPECT_TRUE(r.failures().empty());
}

TEST(Verify, ReportsAreDeterministic) {
  const Json* c = registry().find("pencil-integrable");
  Json a = verify_case(*c).to_json(false), b = verify_case(*c).to_json(false);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_FALSE(a.contains("seconds"));
  EXPECT_EQ(a["seed"], 1);
  RunOptions other;
  other.seed = 2;
  EXPECT_EQ(verify_case(*c, other).to_json(false)["seed"], 2);
  EXPECT_TRUE(verify_case(*c).to_json(true).contains("seconds"));
}

TEST(Verify, OverridesPinSweepAxes) {
  RunOptions opt;
  opt.overrides["n"] = 13;
  opt.overrides["unused"] = 4;
  Report r = verify_case(*registry().find("eq-4.1"), opt);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0].params.at("n"), 13);
  EXPECT_EQ(r.runs[0].params.count("unused"), 0u);
  EXPECT_TRUE(r.pass());
}

TEST(Verify, BelowMinimumIsConventionMode) {
  RunOptions opt;
  opt.overrides["n"] = 5;
  Report r = verify_case(*registry().find("eq-4.1"), opt);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_FALSE(r.runs[0].asserted);
  EXPECT_NE(r.status(), "fail");
  EXPECT_EQ(r.to_json(false)["runs"][0]["mode"], "convention");
}

TEST(Verify, MismatchIsReportedWithDiff) {
  Json c = *registry().find("thm-4.2-wedge2");
  c["expected"] = "l2+l3";
  Report r = verify_case(c);
  EXPECT_EQ(r.status(), "fail");
  const Check* chk = r.find_check("expected_equal");
  ASSERT_NE(chk, nullptr);
  EXPECT_NE(chk->detail.find("missing V(l2+l3)"), std::string::npos);
  EXPECT_NE(chk->detail.find("unexpected V(l1+l3)"), std::string::npos);
}

TEST(Verify, UnknownOperationFailsCleanly) {
  Json c = {{"id", "x"}, {"anchor", "a"}, {"tier", "fast"}, {"op", "teleport"}};
  Report r = verify_case(c);
  EXPECT_EQ(r.status(), "fail");
  EXPECT_NE(r.find_check("error"), nullptr);
}

TEST(Verify, PoolOrdersById) {
  std::vector<const Json*> cases{registry().find("lemma-a4"), registry().find("cominuscule-b"), registry().find("lemma-2.2")};
  auto reports = verify_cases(cases, {}, 3);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].id, "cominuscule-b");
  EXPECT_EQ(reports[2].id, "lemma-a4");
  Json j = reports_json(reports, false);
  EXPECT_EQ(j["summary"]["total"], 3);
  EXPECT_EQ(j["summary"]["passed"], 3);
}

TEST(Verify, EmptyReportDocument) {
  Json j = reports_json({}, false);
  EXPECT_TRUE(j["cases"].empty());
  EXPECT_EQ(j["summary"]["total"], 0);
  EXPECT_EQ(j["summary"]["failed"], 0);
}

TEST(Verify, ModuleBuilder) {
  RootSystem rs = RootSystem::parse("A12");
  Module m = build_module(rs, Weight::fundamental(12, 2), {"wedge2"});
  EXPECT_EQ(m.label, "wedge^2 V(l3)");
  EXPECT_EQ(m.formula, binomial(286, 2));
  EXPECT_EQ(m.ch.mass(), m.formula);
  EXPECT_THROW(build_module(rs, Weight::fundamental(12, 0), {"cube"}), std::invalid_argument);
}

TEST(Properties, SuitePasses) {
  PropertyOptions opt;
  opt.multiply_back_trials = 20;
  opt.form_trials = 20;
  Report r = run_properties(opt);
  EXPECT_TRUE(r.pass()) << r.text(false);
  EXPECT_EQ(r.runs.front().checks.size(), 9u);
}
