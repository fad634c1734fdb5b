#include "su22/su22.h"

#include "harness/campaign.hpp"

#include <new>
#include <string>

struct su22_campaign {
    su22::Campaign campaign;
    su22::CampaignResult result;
    std::string error;
    bool ran = false;
};

namespace {

su22_status guard(su22_campaign* c, const std::function<su22_status()>& body) {
    if (!c) return SU22_ERR_USAGE;
    try {
        return body();
    } catch (const std::exception& e) {
        c->error = e.what();
        return SU22_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* su22_version(void) { return "0.1.0"; }

su22_status su22_campaign_new(su22_campaign** out) {
    if (!out) return SU22_ERR_USAGE;
    *out = new (std::nothrow) su22_campaign();
    return *out ? SU22_OK : SU22_ERR_INTERNAL;
}

su22_status su22_campaign_from_file(const char* path, su22_campaign** out) {
    if (!out || !path) return SU22_ERR_USAGE;
    auto* c = new (std::nothrow) su22_campaign();
    if (!c) return SU22_ERR_INTERNAL;
    std::string err;
    if (!su22::Campaign::from_json_file(path, &c->campaign, &err)) {
        c->error = err;
        *out = c;  // caller can read the error, then free
        return SU22_ERR_USAGE;
    }
    *out = c;
    return SU22_OK;
}

su22_status su22_campaign_from_json(const char* json_text, su22_campaign** out) {
    if (!out || !json_text) return SU22_ERR_USAGE;
    auto* c = new (std::nothrow) su22_campaign();
    if (!c) return SU22_ERR_INTERNAL;
    std::string err;
    if (!su22::Campaign::from_json_text(json_text, &c->campaign, &err)) {
        c->error = err;
        *out = c;
        return SU22_ERR_USAGE;
    }
    *out = c;
    return SU22_OK;
}

void su22_campaign_free(su22_campaign* c) { delete c; }

const char* su22_campaign_error(const su22_campaign* c) {
    return c ? c->error.c_str() : "null handle";
}

su22_status su22_campaign_set_mode(su22_campaign* c, const char* mode) {
    if (!c || !mode) return SU22_ERR_USAGE;
    c->campaign.mode = mode;
    return SU22_OK;
}

su22_status su22_campaign_set_seed(su22_campaign* c, uint64_t seed) {
    if (!c) return SU22_ERR_USAGE;
    c->campaign.seed = seed;
    c->campaign.has_seed = true;
    return SU22_OK;
}

su22_status su22_campaign_set_tolerance_scale(su22_campaign* c, double scale) {
    if (!c || !(scale > 0)) return SU22_ERR_USAGE;
    c->campaign.tolerance_scale = scale;
    return SU22_OK;
}

su22_status su22_campaign_set_branch(su22_campaign* c, const char* branch) {
    if (!c || !branch) return SU22_ERR_USAGE;
    const std::string b = branch;
    if (b != "plus" && b != "minus" && b != "both") {
        c->error = "branch: expected plus, minus or both";
        return SU22_ERR_USAGE;
    }
    c->campaign.branch = b;
    return SU22_OK;
}

su22_status su22_campaign_set_output_dir(su22_campaign* c, const char* dir) {
    if (!c || !dir) return SU22_ERR_USAGE;
    c->campaign.out_dir = dir;
    return SU22_OK;
}

su22_status su22_campaign_run(su22_campaign* c, int* exit_code) {
    return guard(c, [&]() -> su22_status {
        c->result = su22::run_campaign(c->campaign);
        c->ran = true;
        if (c->result.exit_code == 2) {
            c->error = c->result.error;
            if (exit_code) *exit_code = 2;
            return SU22_ERR_USAGE;
        }
        if (!c->campaign.out_dir.empty()) {
            std::string err;
            if (!su22::write_reports(c->result, c->campaign.out_dir, &err)) {
                c->error = "writing reports: " + err;
                return SU22_ERR_INTERNAL;
            }
        }
        if (exit_code) *exit_code = c->result.exit_code;
        return SU22_OK;
    });
}

const char* su22_campaign_report_json(const su22_campaign* c) {
    return c && c->ran ? c->result.report_json.c_str() : "";
}

const char* su22_campaign_report_csv(const su22_campaign* c) {
    return c && c->ran ? c->result.report_csv.c_str() : "";
}

size_t su22_campaign_num_checks(const su22_campaign* c) {
    return c && c->ran ? c->result.rows.size() : 0;
}

su22_status su22_campaign_check(const su22_campaign* c, size_t index, const char** id,
                                double* residual, double* threshold, int* pass) {
    if (!c || !c->ran || index >= c->result.rows.size()) return SU22_ERR_USAGE;
    const su22::CheckRow& r = c->result.rows[index];
    if (id) *id = r.id.c_str();
    if (residual) *residual = r.residual;
    if (threshold) *threshold = r.threshold;
    if (pass) *pass = r.pass ? 1 : 0;
    return SU22_OK;
}

}  // extern "C"
