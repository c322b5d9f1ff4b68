#pragma once

#include <set>
#include <string>
#include <vector>

#include "dynmatch/coloring.hpp"
#include "dynmatch/graph.hpp"

namespace dynmatch {

enum class VClass { A, B, U };

// Multi-level bounded-degree core structure.  Vertices are partitioned into
// S = A_1 ∪ ... ∪ A_k ∪ B and U.  M is a bounded-degree edge set (m(v) <= z)
// with no U-U edges and m(v) >= z-k+1 on S.  Per level i, N_i splits the
// vertices "below" level i into a frozen part and the remainder R_i; the
// adjacency lists Λ (for U) and L (for A) make neighborhood queries into
// B ∪ U and R_i cheap.
struct MultiLevelSystem {
    int n = 0;
    int k = 1;  // number of A-levels
    int z = 0;  // degree parameter

    std::vector<VClass> cls;               // per-vertex class
    std::vector<int> level;                // A-vertices: 1..k; others 0
    std::vector<VertexSet> madj;  // M as symmetric adjacency sets
    std::vector<int> nz;                   // for B: count of U-partners via M
    std::vector<VertexSet> zset;  // for B: the U-partners themselves
    // frozen_n[i] = N_i for 1 <= i <= k-1 (index 0 unused).  N_k is implicit:
    // it is always the current B set.
    std::vector<VertexSet> frozen_n;
    std::vector<VertexSet> lambda;  // for U: N_g(u) ∩ (B ∪ U)
    std::vector<VertexSet> llist;   // for A_i: N_g(v) ∩ R_i

    int m_of(VertexId v) const { return static_cast<int>(madj[v].size()); }
    bool in_s(VertexId v) const { return cls[v] != VClass::U; }
    bool is_a(VertexId v) const { return cls[v] == VClass::A; }

    // Membership in N_i / R_i, 1 <= i <= k.
    bool in_n(VertexId v, int i) const {
        if (i == k) return cls[v] == VClass::B;
        return frozen_n[i].count(v) > 0;
    }
    bool in_r(VertexId v, int i) const {
        if (i == k) return cls[v] == VClass::U;
        // R_i = (A^{>=i+1} ∪ B ∪ U) \ N_i
        bool below = cls[v] != VClass::A || level[v] > i;
        return below && !in_n(v, i);
    }

    EdgeList m_edges() const;  // (u, v) with u < v, lexicographically sorted

    bool operator==(const MultiLevelSystem&) const = default;

    // Deterministic text form (sorted sets) for golden-file comparisons.
    std::string dump() const;
};

// Builds a 1-level system from scratch: greedy bounded-degree maximal edge
// set (canonical lexicographic edge order), S = saturated vertices, then a
// repair pass that promotes U-vertices with more than z B-neighbors.
// Errors if z is outside [1, n].
MultiLevelSystem build_basic(const DynGraph& g, int z);

// Repair step of the basic construction: u in U with |N_g(u) ∩ B| > z gains
// r = z - m(u) M-edges to its smallest-id non-partner B-neighbors via edge
// swaps, then moves to S.  Errors if u is not in U or has too few
// B-neighbors.
void proc_process_u(MultiLevelSystem& sys, const DynGraph& g, VertexId u);

struct RefinementResult {
    EdgeList retained_deletions;  // the deferred deletions kept in the graph
};

// Refines an h-level z-system for g into an (h+1)-level z_new-system,
// in place: g becomes (g ∪ e_ins) \ (e_del \ retained), sys becomes the
// refined system.  M is recolored into z+1 matchings and only the z_new
// classes least damaged by e_del are kept, so at most |e_del| * z_new / z
// of the deletions are retained.  Requires z and z_new powers of two with
// 2 <= z_new < z, e_del ⊆ E(g), e_ins disjoint from E(g), and the result
// depth k+1 <= log2(n).
RefinementResult refine(DynGraph& g, MultiLevelSystem& sys, const EdgeList& e_del,
                        const EdgeList& e_ins, int z_new);

// Moves u (with m(u) >= z-k+1) from U into A_k or B, maintaining L lists,
// Z sets and n counters, and promoting B-vertices whose last U-partner
// disappears.  Only meaningful mid-refinement or on a freshly refined
// system; errors on precondition violation.
void proc_promote(MultiLevelSystem& sys, const DynGraph& g, VertexId u);

// Degree-repair pass of the refinement: tries to bring m(u) up to z via
// edges to U-neighbors, else via swaps through B-neighbors, promoting u on
// success; no-op if u has few neighbors in both.
void proc_process(MultiLevelSystem& sys, const DynGraph& g, VertexId u);

// Full recomputation of every structural property.  Empty result <=> valid.
std::vector<std::string> validate_system(const MultiLevelSystem& sys, const DynGraph& g);

// Deep copy (all members are value types; spelled out for intent).
inline MultiLevelSystem snapshot(const MultiLevelSystem& sys) { return sys; }

}  // namespace dynmatch
