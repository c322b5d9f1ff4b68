#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dynmatch/bootstrap.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/matcher.hpp"
#include "dynmatch/subgraph_system.hpp"

namespace dynmatch {

enum class PhaseKind { Boot, Type1, Type2 };

// One level of the dense-phase hierarchy: the auxiliary graph G^i, its
// deferred deletions E^i (G^i \ E^i = true graph at the level-phase start),
// and the i-level z_i-system for G^i.
struct LevelTriple {
    DynGraph g;
    EdgeList deferred;
    MultiLevelSystem sys;
};

// Dense-phase machinery: a halving parameter ladder z_1..z_k with coarse
// time unit eta.  A level-i phase spans z_i * eta updates and is split into
// two level-(i+1) phases; at each level-i boundary levels i..k are rebuilt
// (level 1 from scratch, deeper levels by refining a copy of the parent
// triple) and the matcher is re-attached to the level-k triple.
struct HierarchyState {
    std::vector<int> zs;  // zs[i] for 1 <= i <= k; index 0 unused
    int eta = 0;
    int k = 0;
    long long updates_done = 0;  // updates forwarded in this phase
    std::vector<LevelTriple> levels;  // index 0 unused
    MatcherState matcher;
    long long rebuild_count = 0;
    long long attach_count = 0;
};

// Top-level fully dynamic engine.  Routes updates to the opening-stream
// engine, then per phase to either a single matcher on a 1-level sqrt(n)
// system (sparse boundary) or the hierarchy (dense boundary).
struct Engine {
    int n_user = 0;
    int n = 0;  // padded to a power of two; dummy vertices stay isolated
    DynGraph live;
    PhaseKind kind = PhaseKind::Boot;
    BootState boot;
    MatcherState type1;
    HierarchyState type2;
    long long phase_updates_left = 0;
    long long phase_index = 0;
    OpCounter ops;

    // Optional hook run after every applied update (verify mode).
    std::function<void(const Engine&)> post_update_hook;
};

Engine engine_new(int n_user);

// Applies one adversarial update.  Errors on events touching vertices
// outside [0, n_user), self-loops, duplicate insertions, absent deletions.
void apply(Engine& e, const UpdateEvent& ev);

Matching engine_matching(const Engine& e);

// Dense-phase parameter selection, exposed for cross-checking in tests:
// z_1 = the power of two in [d, 2d) for d = 2m/n, z_i halving, eta = the
// power of two in [sqrt(n), 2 sqrt(n)), k = deepest level with z_k >= 2
// (and >= sqrt(n)/(4 log2 n)) subject to k <= log2 n.
struct LadderParams {
    std::vector<int> zs;
    int eta = 0;
    int k = 0;
};
LadderParams choose_ladder(int n, long long m);

// Internal coherence of the active phase plus, for the dense phase, the
// per-level contract: G^i \ E^i equals the live graph edge-for-edge and
// |E^i| <= (i-1) * z_i * eta.  Maximality is the oracle's job.
std::vector<std::string> check_engine(const Engine& e);

}  // namespace dynmatch
