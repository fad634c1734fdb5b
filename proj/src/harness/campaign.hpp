#pragma once

#include "su22/open_chain.hpp"
#include "su22/solver.hpp"
#include "su22/spectrum.hpp"

#include <string>
#include <vector>

namespace su22 {

// One verified identity: a stable check id (the tag used throughout the
// report machinery), a residual, and the threshold it was held to.
struct CheckRow {
    std::string id;
    std::string description;
    double residual = 0;
    double threshold = 0;
    bool pass = true;
    std::string note;
};

struct Campaign {
    std::string mode;  // verify-periodic, verify-open, spectrum, solve-bae, match, audit-typos
    ChainConfig chain{2, {0.5, 0.0}, {{0.37, 0.0}, {-0.23, 0.0}}};
    BoundaryConfig boundary = BoundaryConfig::unchecked(
        {1.3, 0.0}, {0.8, 0.0},
        {Cplx{0.6, 0.0}, Cplx{0.5, 0.0}, Cplx{0.3, 0.0}, Cplx{1.0, 0.0}},
        {Cplx{0.4, 0.0}, Cplx{0.7, 0.0}, Cplx{0.35, 0.0}, Cplx{0.8, 0.0}});
    bool has_boundary = true;
    std::uint64_t seed = 0;
    bool has_seed = false;
    double tolerance_scale = 1.0;  // multiplies every default threshold
    std::string out_dir;
    std::string branch = "both";  // plus | minus | both
    int lambda2_reading = 3;

    // Parses the JSON config; returns false and fills err on malformed input.
    static bool from_json_text(const std::string& text, Campaign* out, std::string* err);
    static bool from_json_file(const std::string& path, Campaign* out, std::string* err);
};

struct CampaignResult {
    std::vector<CheckRow> rows;
    int exit_code = 0;          // 0 pass, 1 residual failure, 2 usage error
    std::string error;          // set on usage errors
    std::string report_json;
    std::string report_csv;
};

// Runs the campaign and renders reports. Deterministic given the seed.
CampaignResult run_campaign(const Campaign& c);

// Writes report_json / report_csv under out_dir ("report.json", "report.csv").
bool write_reports(const CampaignResult& r, const std::string& out_dir, std::string* err);

}  // namespace su22
