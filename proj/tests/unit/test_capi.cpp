#include <doctest.h>

#include <su22/su22.h>

#include <regex>
#include <string>

namespace {

const char* kTinyConfig = R"({
  "mode": "verify-periodic",
  "seed": 7,
  "chain": {"N": 1, "eta": [0.5, 0.0], "thetas": [[0.17, 0.0]]},
  "boundary": null
})";

std::string strip_timestamp(std::string s) {
    static const std::regex ts("\\\"timestamp\\\": \\\"[^\\\"]*\\\"");
    return std::regex_replace(s, ts, "\"timestamp\": \"\"");
}

}  // namespace

TEST_CASE("campaign via the C interface: run, rows, reports") {
    su22_campaign* c = nullptr;
    REQUIRE(su22_campaign_from_json(kTinyConfig, &c) == SU22_OK);
    int exit_code = -1;
    REQUIRE(su22_campaign_run(c, &exit_code) == SU22_OK);
    CHECK(exit_code == 0);
    const size_t n = su22_campaign_num_checks(c);
    CHECK(n > 10);
    for (size_t i = 0; i < n; ++i) {
        const char* id = nullptr;
        double residual = 0, threshold = 0;
        int pass = 0;
        REQUIRE(su22_campaign_check(c, i, &id, &residual, &threshold, &pass) == SU22_OK);
        CHECK(id != nullptr);
        CHECK(pass == 1);
    }
    const std::string json = su22_campaign_report_json(c);
    CHECK(json.find("\"rows\"") != std::string::npos);
    CHECK(json.find("gybe") != std::string::npos);
    const std::string csv = su22_campaign_report_csv(c);
    CHECK(csv.find("id,residual,threshold,pass,description") != std::string::npos);
    su22_campaign_free(c);
}

TEST_CASE("reports are reproducible modulo the timestamp") {
    std::string first, second;
    for (std::string* out : {&first, &second}) {
        su22_campaign* c = nullptr;
        REQUIRE(su22_campaign_from_json(kTinyConfig, &c) == SU22_OK);
        int exit_code = -1;
        REQUIRE(su22_campaign_run(c, &exit_code) == SU22_OK);
        *out = strip_timestamp(su22_campaign_report_json(c));
        su22_campaign_free(c);
    }
    CHECK(first == second);
}

TEST_CASE("usage errors carry field-level messages") {
    su22_campaign* c = nullptr;
    // malformed JSON
    CHECK(su22_campaign_from_json("{not json", &c) == SU22_ERR_USAGE);
    su22_campaign_free(c);
    c = nullptr;
    // violated boundary constraint named in the message
    const char* bad = R"({
      "mode": "verify-open", "seed": 1,
      "chain": {"N": 1, "eta": 0.5, "thetas": [0.2]},
      "boundary": {"xi": 1.0, "xi_tilde": 1.0,
                   "c": [1.0, 1.0, 0.5, 0.5], "c_tilde": [0, 0, 0, 0]}
    })";
    CHECK(su22_campaign_from_json(bad, &c) == SU22_ERR_USAGE);
    const std::string msg = su22_campaign_error(c);
    CHECK(msg.find("c1*c2") != std::string::npos);
    su22_campaign_free(c);
    c = nullptr;
    // unknown mode is a usage error at run time
    REQUIRE(su22_campaign_from_json(kTinyConfig, &c) == SU22_OK);
    su22_campaign_set_mode(c, "no-such-mode");
    int exit_code = -1;
    CHECK(su22_campaign_run(c, &exit_code) == SU22_ERR_USAGE);
    CHECK(exit_code == 2);
    su22_campaign_free(c);
    c = nullptr;
    // the seed is mandatory
    REQUIRE(su22_campaign_from_json(R"({"mode": "verify-periodic",
      "chain": {"N": 1, "eta": 0.5, "thetas": [0.17]}})", &c) == SU22_OK);
    CHECK(su22_campaign_run(c, &exit_code) == SU22_ERR_USAGE);
    CHECK(std::string(su22_campaign_error(c)).find("seed") != std::string::npos);
    su22_campaign_free(c);
}
