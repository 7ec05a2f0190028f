#include <set>

#include "doctest.h"
#include "qprim/verify.hpp"

using namespace qprim;

namespace {

Corpus small_corpus() {
  Corpus c;
  c.entries.push_back({"Z/12", RingSpec::zmod(12)});
  c.entries.push_back({"Z/4", RingSpec::zmod(4)});
  c.entries.push_back({"Z/2 x Z/2", RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)})});
  c.entries.push_back({"F2[x]/(x^2)", RingSpec::poly_quotient(RingSpec::zmod(2), {0, 0, 1})});
  return c;
}

}  // namespace

TEST_CASE("check registry is complete and unique") {
  const auto& reg = check_registry();
  CHECK(reg.size() == 22);
  std::set<std::string> ids;
  for (const auto& c : reg) {
    ids.insert(c.id);
    CHECK_FALSE(c.anchor.empty());
  }
  CHECK(ids.size() == 22);
  CHECK(ids.count("C01_VQ_IDENTITIES") == 1);
  CHECK(ids.count("C22_IDEAL_ORACLE") == 1);
}

TEST_CASE("small corpus passes every check") {
  auto verdicts = run_suite(small_corpus());
  CHECK(verdicts.size() == 4 * 22);
  for (const auto& v : verdicts) {
    std::string what = v.check_id + " on " + v.ring_label + ": " + v.counterexample.dump();
    CHECK_MESSAGE(v.status == CheckStatus::Pass, what);
  }
}

TEST_CASE("check filter restricts the run") {
  SuiteOptions opts;
  opts.check_filter = {"C09_CLOSURE_FORMULA"};
  auto verdicts = run_suite(small_corpus(), opts);
  CHECK(verdicts.size() == 4);
  for (const auto& v : verdicts) CHECK(v.check_id == "C09_CLOSURE_FORMULA");
}

TEST_CASE("the ideal oracle is skipped above order 16") {
  Corpus c;
  c.entries.push_back({"Z/24", RingSpec::zmod(24)});
  SuiteOptions opts;
  opts.check_filter = {"C22_IDEAL_ORACLE"};
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].status == CheckStatus::SkippedCap);
  CHECK_FALSE(verdicts[0].hard_cap);  // a designed restriction, not a blowup
  CHECK(status_name(verdicts[0].status) == "skipped(cap)");
}

TEST_CASE("an uncapped build failure becomes skipped verdicts with the hard flag") {
  Corpus c;
  c.entries.push_back({"big", RingSpec::zmod(2048)});
  SuiteOptions opts;
  opts.check_filter = {"C01_VQ_IDENTITIES", "C02_CLOSED_SET_AXIOMS"};
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 2);
  for (const auto& v : verdicts) {
    CHECK(v.status == CheckStatus::SkippedCap);
    CHECK(v.hard_cap);
  }
}

TEST_CASE("C15 reports the product-count comparison on Z/2 x Z/2") {
  Corpus c;
  c.entries.push_back({"Z/2 x Z/2", RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(2)})});
  SuiteOptions opts;
  opts.check_filter = {"C15_PRODUCT_DECOMP"};
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 1);
  const Verdict& v = verdicts[0];
  CHECK(v.status == CheckStatus::Pass);
  REQUIRE(v.info.is_object());
  CHECK(v.info["point_count"] == 2);
  CHECK(v.info["product_count"] == 1);
  CHECK(v.info["disjoint_union_count"] == 2);
  CHECK(v.info["matches_disjoint_union"] == true);
  CHECK(v.info["matches_product"] == false);
}

TEST_CASE("C15 is marked inapplicable off product specs") {
  Corpus c;
  c.entries.push_back({"Z/12", RingSpec::zmod(12)});
  SuiteOptions opts;
  opts.check_filter = {"C15_PRODUCT_DECOMP"};
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].status == CheckStatus::Pass);
  CHECK(verdicts[0].info["applicable"] == false);
}

TEST_CASE("reports are deterministic across runs") {
  SuiteOptions opts;
  Corpus corpus = Corpus::default_corpus();
  std::string a = report_string(run_suite(corpus, opts), opts);
  std::string b = report_string(run_suite(corpus, opts), opts);
  CHECK(a == b);
  CHECK(a.find("\"ms\": 0") != std::string::npos);  // stable timings by default
}

TEST_CASE("report schema carries the required keys") {
  Corpus c;
  c.entries.push_back({"Z/4", RingSpec::zmod(4)});
  SuiteOptions opts;
  opts.check_filter = {"C09_CLOSURE_FORMULA"};
  auto verdicts = run_suite(c, opts);
  nlohmann::json rep = report_json(verdicts, opts);
  REQUIRE(rep.contains("verdicts"));
  REQUIRE(rep["verdicts"].size() == 1);
  const auto& entry = rep["verdicts"][0];
  for (const char* key : {"anchor", "check", "counterexample", "info", "label", "ms", "ring",
                          "sampled", "status"})
    CHECK_MESSAGE(entry.contains(key), key);
  CHECK(entry["status"] == "pass");
  CHECK(entry["counterexample"].is_null());
  CHECK(entry["ring"]["type"] == "zmod");
}

TEST_CASE("a broken table spec produces a replayable failing verdict") {
  std::vector<std::vector<int>> add(2, std::vector<int>(2)), mul(2, std::vector<int>(2, 0));
  add[0] = {0, 1};
  add[1] = {1, 0};
  mul[0] = {0, 0};
  mul[1] = {0, 1};
  mul[1][0] = 1;  // breaks commutativity
  Corpus c;
  c.entries.push_back({"broken", RingSpec::table(add, mul)});
  SuiteOptions opts;
  opts.check_filter = {"C01_VQ_IDENTITIES"};
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].status == CheckStatus::Fail);
  REQUIRE(verdicts[0].counterexample.contains("build_error"));
  // the recorded witness replays against the originating predicate
  std::string err = verdicts[0].counterexample["build_error"].get<std::string>();
  CHECK(err.find("commutative") != std::string::npos);
  CHECK_THROWS_AS(build_ring(c.entries[0].spec), TableNotCommutative);
}

TEST_CASE("corpus JSON parsing") {
  nlohmann::json j = nlohmann::json::parse(R"([
    {"label": "Z/6", "spec": {"type": "zmod", "n": 6}},
    {"spec": {"type": "product", "factors": [{"type": "zmod", "n": 2}, {"type": "zmod", "n": 3}]}}
  ])");
  Corpus c = corpus_from_json(j);
  REQUIRE(c.entries.size() == 2);
  CHECK(c.entries[0].label == "Z/6");
  CHECK(c.entries[1].label == "Z/2 x Z/3");  // label defaults to the spec label
  CHECK_THROWS_AS(corpus_from_json(nlohmann::json{{"not", "an array"}}), InputError);
}

TEST_CASE("every check passes on rings outside the default corpus") {
  Corpus c;
  c.entries.push_back({"Z/49", RingSpec::zmod(49)});
  c.entries.push_back({"F3[x]/(x^3)", RingSpec::poly_quotient(RingSpec::zmod(3), {0, 0, 0, 1})});
  c.entries.push_back(
      {"Z/2 x Z/4 x Z/9",
       RingSpec::product({RingSpec::zmod(2), RingSpec::zmod(4), RingSpec::zmod(9)})});
  c.entries.push_back({"Z/6[x]/(x^2)", RingSpec::poly_quotient(RingSpec::zmod(6), {0, 0, 1})});
  c.entries.push_back({"Z/1", RingSpec::zmod(1)});  // empty spectrum throughout
  auto verdicts = run_suite(c);
  for (const auto& v : verdicts) {
    std::string what = v.check_id + " on " + v.ring_label + ": " + v.counterexample.dump();
    bool ok = v.status == CheckStatus::Pass ||
              (v.status == CheckStatus::SkippedCap && !v.hard_cap);
    CHECK_MESSAGE(ok, what);
  }
}

TEST_CASE("cover truncation is reported and benign on a many-open ring") {
  Corpus c;
  std::vector<RingSpec> factors(5, RingSpec::zmod(2));
  c.entries.push_back({"(Z/2)^5", RingSpec::product(factors)});
  SuiteOptions opts;
  opts.check_filter = {"C19_SHEAF_AXIOMS"};
  opts.cover_cap_log2 = 6;
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].status == CheckStatus::Pass);
  REQUIRE(verdicts[0].info.is_object());
  CHECK(verdicts[0].info["truncated"] == true);
}

TEST_CASE("sampling kicks in above the exhaustive lattice limit") {
  // (Z/2)^7 has 128 ideals, beyond the default exhaustive limit of 64.
  Corpus c;
  std::vector<RingSpec> factors(7, RingSpec::zmod(2));
  c.entries.push_back({"(Z/2)^7", RingSpec::product(factors)});
  SuiteOptions opts;
  opts.check_filter = {"C01_VQ_IDENTITIES"};
  opts.sample_count = 50;
  auto verdicts = run_suite(c, opts);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].status == CheckStatus::Pass);
  CHECK(verdicts[0].sampled);
}
