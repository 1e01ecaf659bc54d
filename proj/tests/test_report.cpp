#include "doctest.h"
#include "support.hpp"

using namespace quartred;
using namespace qtest;

TEST_CASE("job round trip") {
  for (const char* name : {"klein.json", "xns13.json", "fermat.json", "xns13_pinned.json"}) {
    JobSpec a = load_job(name);
    JobSpec b = parse_job(emit_job(a));
    CHECK(emit_job(b) == emit_job(a));
    CHECK(b.p == a.p);
    CHECK(b.precision == a.precision);
    CHECK(b.quartic.terms() == a.quartic.terms());
    CHECK(b.pinned_aronhold.has_value() == a.pinned_aronhold.has_value());
  }
}

TEST_CASE("job parsing accepts a string quartic and rejects bad input") {
  JobSpec j = parse_job(R"({"p": 7, "tower": {"unramified": [0, 1], "eisenstein": [[-7], [1]]},
                            "precision": 10, "quartic": "x1^4 + x2^4 + x3^4", "mode": "classify"})");
  CHECK(j.p == 7);
  CHECK(j.mode == Mode::Classify);
  CHECK(j.quartic.size() == 3);
  CHECK_THROWS(parse_job(R"({"p": 7, "precision": 10, "quartic": "x1^4", "mode": "nonsense"})"));
  CHECK_THROWS(parse_job(R"({"p": 7, "precision": 10})"));
  CHECK_THROWS(parse_job("not json"));
}

TEST_CASE("fermat report: round trip and determinism") {
  JobSpec job = load_job("fermat.json");
  Report r1 = run_pipeline(job);
  Report r2 = run_pipeline(job);
  CHECK(r1.verdict == "not-certified");
  CHECK(exit_code(r1) == 2);
  std::string j1 = emit_report_json(r1);
  CHECK(j1 == emit_report_json(r2));
  Report back = parse_report_json(j1);
  CHECK(back == r1);
  CHECK(emit_report_json(back) == j1);
  CHECK(emit_report_text(r1).find("verdict: not-certified") != std::string::npos);
}

TEST_CASE("singular input is an error") {
  JobSpec job = load_job("fermat.json");
  job.quartic = parse_polynomial("x1^2*x2^2 + x3^4");
  job.quartic_text = "x1^2*x2^2 + x3^4";
  Report r = run_pipeline(job);
  CHECK(r.verdict == "error");
  CHECK(exit_code(r) == 1);
  REQUIRE(r.error);
  CHECK(!r.error->kind.empty());
}

TEST_CASE("count-aronhold mode on the fermat quartic") {
  JobSpec job = load_job("fermat.json");
  job.mode = Mode::CountAronhold;
  Report r = run_pipeline(job);
  REQUIRE(r.aronhold_count);
  CHECK(*r.aronhold_count == 288);
  CHECK(r.syzygetic_triples == 1260);
}

TEST_CASE("bitangents-only mode returns the lines") {
  JobSpec job = load_job("fermat.json");
  job.mode = Mode::BitangentsOnly;
  Report r = run_pipeline(job);
  CHECK(r.bitangent_count == 28);
  CHECK(r.bitangents.size() == 28);
  CHECK(exit_code(r) == 2);
}
