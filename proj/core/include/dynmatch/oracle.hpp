#pragma once

#include <string>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

// Independent ground truth for matching validity and maximality.  Favors
// clarity over speed: every check is a full scan.

struct Violation {
    enum Kind { NotAMatching, NotMaximal, NotInGraph };
    Kind kind;
    VertexId u;  // witness edge (u, v), or witness vertex in u with v = -1
    VertexId v;

    std::string describe() const;
};

using Matching = std::vector<std::pair<VertexId, VertexId>>;

// Empty result <=> M is a subset of E(g), vertex-disjoint, and maximal.
std::vector<Violation> check_matching(const DynGraph& g, const Matching& m);

// True <=> v is matched by m, or every neighbor of v in g is matched by m.
bool is_settled(const DynGraph& g, const Matching& m, VertexId v);

// Baseline maintainer: insert matches greedily, deleting a matched edge makes
// each endpoint rescan its whole neighborhood for a free partner.  Always
// maximal; per-deletion work can reach Theta(n).
class NaiveEngine {
public:
    explicit NaiveEngine(int n) : g_(n), mate_(static_cast<size_t>(n), -1) {}

    void apply(const UpdateEvent& e);
    Matching matching() const;
    const DynGraph& graph() const { return g_; }

    void set_op_counter(OpCounter* c) { ops_ = c; }

private:
    void try_rematch(VertexId x);

    DynGraph g_;
    std::vector<VertexId> mate_;
    OpCounter* ops_ = nullptr;
};

}  // namespace dynmatch
