#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

enum class WorkloadKind {
    Random,                // mixed insertions/deletions with a given bias
    DecrementalComplete,   // build K_n, then tear it down in canonical order
    InsertThenDelete,      // random build-up phase, then tear-down
    AdaptiveMatchedAttack  // always deletes an edge the engine has matched
};

std::string to_string(WorkloadKind k);
WorkloadKind workload_kind_from_string(const std::string& s);

// A materialized update sequence.  Every event is valid against the graph
// state it is applied to (starting from the empty graph), so any engine can
// replay it.  Adaptive workloads are materialized by attacking a live full
// engine during generation; the recorded trace is then replayable.
struct Workload {
    int n = 0;
    std::vector<UpdateEvent> events;
};

// Deterministic for a fixed (kind, n, length, p_insert, seed).  length = 0
// means the kind's natural length (DecrementalComplete: all of K_n twice).
// p_insert only affects Random.  Errors on impossible requests, e.g. a
// DecrementalComplete longer than its natural length.
Workload gen_workload(WorkloadKind kind, int n, long long length, double p_insert,
                      std::uint64_t seed);

}  // namespace dynmatch
