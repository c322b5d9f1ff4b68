#pragma once

#include <cstdint>
#include <string>

namespace dynmatch {

struct RunReport {
    int n = 0;
    long long updates_applied = 0;
    std::string engine;       // full | boot | naive
    std::string verify_mode;  // none | final | each
    bool verified = false;
    long long final_matching_size = 0;
    std::uint64_t elementary_ops_total = 0;
    double elementary_ops_per_update = 0.0;
    long long wall_time_ns = 0;
};

// Flat JSON object, snake_case keys, sorted.
std::string report_to_json(const RunReport& r);

}  // namespace dynmatch
