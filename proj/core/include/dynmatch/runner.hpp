#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynmatch/report.hpp"
#include "dynmatch/workload.hpp"

namespace dynmatch {

enum class EngineKind { Full, Boot, Naive };
enum class VerifyMode { None, Final, Each };

std::string to_string(EngineKind k);
std::string to_string(VerifyMode m);
EngineKind engine_kind_from_string(const std::string& s);
VerifyMode verify_mode_from_string(const std::string& s);

struct RunResult {
    RunReport report;
    // Populated when a verification failed: the event index, a description,
    // and a shrunk locally minimal failing prefix (replayable workload).
    long long failed_at = -1;
    std::string failure;
    Workload failing_prefix;
};

// Replays a workload through the chosen engine.  Verify modes consult the
// oracle (and the engine's internal coherence checks) after every update
// (each) or once at the end (final).  On failure the run stops and the
// failing prefix is shrunk.
RunResult run_workload(EngineKind kind, const Workload& w, VerifyMode mode);

// Reduces a failing sequence to a locally minimal failing prefix: the run
// still fails, and removing any single event (with the then-invalid suffix
// events dropped) no longer fails.
Workload shrink_failing(EngineKind kind, const Workload& w);

struct FuzzResult {
    long long trials = 0;
    long long failures = 0;
    std::vector<RunResult> failed_runs;
};

// Randomized differential campaign over all workload kinds and a size grid,
// verify=each on the full engine.  Deterministic for a fixed seed.
FuzzResult fuzz(long long trials, std::uint64_t seed);

}  // namespace dynmatch
