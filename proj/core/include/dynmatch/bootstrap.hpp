#pragma once

#include <set>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/oracle.hpp"

namespace dynmatch {

// Opening-stream engine: maintains a maximal matching on an initially empty
// graph with threshold parameter t.  A vertex turns (permanently) bad once
// t+1 insertion events have touched it; each bad vertex b keeps F(b), the
// ordered set of its currently unmatched neighbors, so a rematch after an
// M*-edge deletion costs O(t + |B| log n) instead of a degree scan.
struct BootState {
    DynGraph g;
    std::vector<VertexId> mstar;          // partner map, -1 = unmatched
    int t = 1;
    std::vector<int> insert_count;        // insertion events incident to v
    long long total_insertions = 0;
    VertexSet bad_set;
    std::vector<VertexSet> flist;  // F(b); empty for good vertices
    OpCounter* ops = nullptr;

    void set_op_counter(OpCounter* c) {
        ops = c;
        g.set_op_counter(c);
    }
};

BootState boot_new(int n, int t);

// Update entry points; errors mirror the underlying graph (duplicate edge,
// absent edge, self-loop, bad vertex id).
void boot_insert(BootState& st, VertexId u, VertexId v);
void boot_delete(BootState& st, VertexId u, VertexId v);

Matching boot_matching(const BootState& st);

// Recomputes internal coherence: the bad crossing rule, F-list contents, the
// matching's symmetry/validity, and the bad-set size bound.  Maximality is
// checked externally by the oracle.
std::vector<std::string> check_bootstrap(const BootState& st);

}  // namespace dynmatch
