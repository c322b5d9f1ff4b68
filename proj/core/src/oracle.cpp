#include "dynmatch/oracle.hpp"

#include <sstream>

namespace dynmatch {

std::string Violation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case NotAMatching: os << "not a matching at "; break;
        case NotMaximal: os << "not maximal, free edge "; break;
        case NotInGraph: os << "matched edge absent from graph "; break;
    }
    os << "(" << u << ", " << v << ")";
    return os.str();
}

std::vector<Violation> check_matching(const DynGraph& g, const Matching& m) {
    std::vector<Violation> out;
    std::vector<char> matched(static_cast<size_t>(g.num_vertices()), 0);
    for (auto [u, v] : m) {
        if (u < 0 || u >= g.num_vertices() || v < 0 || v >= g.num_vertices() || u == v) {
            out.push_back({Violation::NotInGraph, u, v});
            continue;
        }
        if (!g.neighbors(u).count(v)) out.push_back({Violation::NotInGraph, u, v});
        if (matched[u] || matched[v]) out.push_back({Violation::NotAMatching, u, v});
        matched[u] = matched[v] = 1;
    }
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
        if (matched[u]) continue;
        for (VertexId v : g.neighbors(u)) {
            if (v > u && !matched[v]) {
                out.push_back({Violation::NotMaximal, u, v});
                break;  // one witness per vertex is enough
            }
        }
    }
    return out;
}

bool is_settled(const DynGraph& g, const Matching& m, VertexId v) {
    std::vector<char> matched(static_cast<size_t>(g.num_vertices()), 0);
    for (auto [a, b] : m) matched[a] = matched[b] = 1;
    if (matched[v]) return true;
    for (VertexId w : g.neighbors(v))
        if (!matched[w]) return false;
    return true;
}

void NaiveEngine::apply(const UpdateEvent& e) {
    if (e.kind == UpdateEvent::Insert) {
        g_.insert_edge(e.u, e.v);
        if (ops_) ops_->bump(2);
        if (mate_[e.u] == -1 && mate_[e.v] == -1) {
            mate_[e.u] = e.v;
            mate_[e.v] = e.u;
        }
    } else {
        g_.delete_edge(e.u, e.v);
        if (ops_) ops_->bump(2);
        if (mate_[e.u] == e.v) {
            mate_[e.u] = -1;
            mate_[e.v] = -1;
            try_rematch(e.u);
            try_rematch(e.v);
        }
    }
}

void NaiveEngine::try_rematch(VertexId x) {
    for (VertexId y : g_.neighbors(x)) {
        if (ops_) ops_->bump();
        if (mate_[y] == -1) {
            mate_[x] = y;
            mate_[y] = x;
            return;
        }
    }
}

Matching NaiveEngine::matching() const {
    Matching m;
    for (VertexId v = 0; v < g_.num_vertices(); ++v)
        if (mate_[v] > v) m.emplace_back(v, mate_[v]);
    return m;
}

}  // namespace dynmatch
