#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/subgraph_system.hpp"

namespace dynmatch {

// Threshold profile for the maintenance engine.  One code path serves both
// the fully dynamic engine (insertions allowed, H~ active) and the
// deletions-only engine attached to a freshly built 1-level system.
struct MatcherProfile {
    long long phase_len = 1;
    double threshold_init = 0;  // unmatched-S budget right after phase init
    double threshold_run = 0;   // unmatched-S budget during a phase
    double index_bound = 0;     // per-class unmatched-S bound for phase repair
    bool insertions_allowed = true;

    // phase floor(n/z); thresholds 12n log2^2(n)/z and 18n log2^2(n)/z;
    // index bound 4n log2(n)/z.
    static MatcherProfile multi_level(int n, int z);
    // For a deletions-only run of up to r deletions, with rho = n + r:
    // phase ceil(r/z); thresholds 32rho/z and 64rho/z; index bound 4rho/z.
    static MatcherProfile basic_decremental(int n, int z, long long r);
};

// Engine state: a decremental graph view G', the inserted-edge set E_I
// (G = G' ∪ E_I), the matching family M_1..M_{z+1}, the maintained maximal
// matching M* ⊇ M_1, and the repair structures: unmatched-S set, the
// digraph H (unmatched U-vertices point at their Λ members) and the digraph
// H~ (unmatched vertices point at bad E_I-partners).
struct MatcherState {
    DynGraph gprime;
    MultiLevelSystem sys;
    MatcherProfile profile;

    std::vector<VertexSet> ei_adj;  // E_I as adjacency sets
    std::vector<VertexId> mstar;             // M* partner map (-1 = unmatched)
    std::vector<std::vector<VertexId>> mi;   // mi[i] = M_i partner map, 1 <= i <= z+1
    std::vector<long long> unmatched_s;      // per class i >= 2: |{v in S unmatched by M_i}|
    long long s_unmatched_m1 = 0;            // same count for M_1
    VertexSet shat;                 // unmatched S-vertices
    std::vector<VertexSet> h_in, h_out;    // H
    std::vector<VertexSet> ht_in, ht_out;  // H~
    std::vector<int> insert_count;                  // per-vertex insertion events
    std::vector<char> bad;                          // bad <=> insert_count >= z

    long long updates_seen = 0;
    long long init_unmatched_s_m1 = 0;  // unmatched-S of the chosen class at attach
    long long r1_breaches = 0;          // times unmatched-S exceeded threshold_run
    long long restore_breaches = 0;     // times phase init left it above threshold_init
    OpCounter* ops = nullptr;

    // Optional per-operation invariant hook (used by verify mode).
    std::function<void(const MatcherState&)> post_op_hook;

    void set_op_counter(OpCounter* c);
};

// Builds the engine on top of a system: colors M into z+1 matchings, swaps
// the class with the fewest unmatched S-vertices to index 1, sets M* = M_1,
// builds the repair structures, and extends M* to a maximal matching.
MatcherState attach(MultiLevelSystem sys, DynGraph g, MatcherProfile profile);

// Resyncs shat / H / H~ rows of v after its matched status changed.
void proc_update(MatcherState& st, VertexId v);

// Tries to rematch an unmatched vertex u in B ∪ U; returns true on success.
// On failure every neighbor of u in G' ∪ E_I is matched.
bool proc_rematch_bu(MatcherState& st, VertexId u);

// Tries to rematch an unmatched vertex v in A_i, possibly stealing one M*
// edge whose displaced endpoint is rematched at a strictly higher level (at
// most one recursive call).  Returns true on success.
bool proc_rematch_a(MatcherState& st, int i, VertexId v);

// Adversary update entry points.  Deletion requires (u,v) in G' ∪ E_I;
// insertion requires the edge absent and an insertion-enabled profile.
// Both count toward the phase clock; a full phase triggers init_phase.
void handle_deletion(MatcherState& st, VertexId u, VertexId v);
void handle_insertion(MatcherState& st, VertexId u, VertexId v);

// Phase-boundary repair: if too many S-vertices are unmatched in M_1, picks
// a lightly damaged class M_i and augments M_1 along alternating paths of
// M_1 ∪ M_i, then re-extends M* to maximal.  No-op when within budget.
void init_phase(MatcherState& st);

Matching current_matching(const MatcherState& st);

// Full recomputation of the engine's internal invariants (unmatched-S set,
// H/H~ coherence, counter coherence, M_1 ⊆ M* ⊆ E(G'∪E_I), class
// disjointness, running unmatched-S budget).  Empty result <=> coherent.
// Maximality itself is checked by the oracle against the mirror graph.
std::vector<std::string> check_matcher(const MatcherState& st);

}  // namespace dynmatch
