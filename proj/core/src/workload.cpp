#include "dynmatch/workload.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynmatch/rng.hpp"
#include "dynmatch/scheduler.hpp"

namespace dynmatch {

std::string to_string(WorkloadKind k) {
    switch (k) {
        case WorkloadKind::Random: return "random";
        case WorkloadKind::DecrementalComplete: return "decremental_complete";
        case WorkloadKind::InsertThenDelete: return "insert_then_delete";
        case WorkloadKind::AdaptiveMatchedAttack: return "adaptive_matched_attack";
    }
    return "?";
}

WorkloadKind workload_kind_from_string(const std::string& s) {
    if (s == "random") return WorkloadKind::Random;
    if (s == "decremental_complete") return WorkloadKind::DecrementalComplete;
    if (s == "insert_then_delete") return WorkloadKind::InsertThenDelete;
    if (s == "adaptive_matched_attack") return WorkloadKind::AdaptiveMatchedAttack;
    throw std::invalid_argument("unknown workload kind: " + s);
}

namespace {

// Picks a uniformly random absent pair, or returns false if the graph is
// complete.  Rejection sampling with a deterministic scan fallback.
bool random_non_edge(const DynGraph& g, Rng& rng, VertexId& u, VertexId& v) {
    int n = g.num_vertices();
    long long full = static_cast<long long>(n) * (n - 1) / 2;
    if (g.num_edges() >= full) return false;
    for (int tries = 0; tries < 64; ++tries) {
        VertexId a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
        VertexId b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
        if (a == b || g.neighbors(a).count(b)) continue;
        u = std::min(a, b);
        v = std::max(a, b);
        return true;
    }
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            if (!g.neighbors(a).count(b)) {
                u = a;
                v = b;
                return true;
            }
    return false;
}

bool random_edge(const DynGraph& g, Rng& rng, VertexId& u, VertexId& v) {
    EdgeList es = g.edges();
    if (es.empty()) return false;
    auto [a, b] = es[rng.below(es.size())];
    u = a;
    v = b;
    return true;
}

Workload gen_random(int n, long long length, double p_insert, std::uint64_t seed) {
    Rng rng(seed);
    Workload w;
    w.n = n;
    DynGraph g(n);
    for (long long i = 0; i < length; ++i) {
        bool ins = rng.chance(p_insert);
        VertexId u, v;
        if (ins ? random_non_edge(g, rng, u, v) : random_edge(g, rng, u, v)) {
            // chosen move possible
        } else if (ins ? random_edge(g, rng, u, v) : random_non_edge(g, rng, u, v)) {
            ins = !ins;
        } else {
            break;  // n == 1: no moves at all
        }
        if (ins) {
            g.insert_edge(u, v);
            w.events.push_back({UpdateEvent::Insert, u, v});
        } else {
            g.delete_edge(u, v);
            w.events.push_back({UpdateEvent::Delete, u, v});
        }
    }
    return w;
}

Workload gen_decremental_complete(int n, long long length) {
    Workload w;
    w.n = n;
    long long full = static_cast<long long>(n) * (n - 1);  // insert + delete each edge
    if (length == 0) length = full;
    if (length > full)
        throw std::invalid_argument("gen_workload: decremental_complete longer than 2*|E(K_n)|");
    for (VertexId u = 0; u < n && static_cast<long long>(w.events.size()) < length; ++u)
        for (VertexId v = u + 1; v < n && static_cast<long long>(w.events.size()) < length; ++v)
            w.events.push_back({UpdateEvent::Insert, u, v});
    for (VertexId u = 0; u < n && static_cast<long long>(w.events.size()) < length; ++u)
        for (VertexId v = u + 1; v < n && static_cast<long long>(w.events.size()) < length; ++v)
            w.events.push_back({UpdateEvent::Delete, u, v});
    return w;
}

Workload gen_insert_then_delete(int n, long long length, std::uint64_t seed) {
    Rng rng(seed);
    Workload w;
    w.n = n;
    DynGraph g(n);
    long long builds = length / 2;
    for (long long i = 0; i < builds; ++i) {
        VertexId u, v;
        if (!random_non_edge(g, rng, u, v)) break;
        g.insert_edge(u, v);
        w.events.push_back({UpdateEvent::Insert, u, v});
    }
    EdgeList es = g.edges();
    for (size_t i = es.size(); i > 1; --i) std::swap(es[i - 1], es[rng.below(i)]);
    for (auto [u, v] : es) {
        if (static_cast<long long>(w.events.size()) >= length) break;
        w.events.push_back({UpdateEvent::Delete, u, v});
    }
    return w;
}

// Materializes an adaptive trace by attacking a live full engine: each step
// deletes the currently matched edge whose higher-degree endpoint is
// maximal (ties by smallest edge), falling back to random insertions when
// the matching is empty.
Workload gen_adaptive_attack(int n, long long length, std::uint64_t seed) {
    Rng rng(seed);
    Workload w;
    w.n = n;
    Engine e = engine_new(n);
    DynGraph mirror(n);  // user-range view; e.live is padded to a power of two
    for (long long i = 0; i < length; ++i) {
        Matching m = engine_matching(e);
        UpdateEvent ev;
        if (!m.empty()) {
            std::pair<VertexId, VertexId> best = {-1, -1};
            int best_deg = -1;
            for (auto [u, v] : m) {
                int d = std::max(e.live.degree(u), e.live.degree(v));
                if (d > best_deg || (d == best_deg && std::make_pair(u, v) < best)) {
                    best = {u, v};
                    best_deg = d;
                }
            }
            ev = {UpdateEvent::Delete, best.first, best.second};
        } else {
            VertexId u, v;
            if (!random_non_edge(mirror, rng, u, v)) break;
            ev = {UpdateEvent::Insert, u, v};
        }
        apply(e, ev);
        if (ev.kind == UpdateEvent::Insert)
            mirror.insert_edge(ev.u, ev.v);
        else
            mirror.delete_edge(ev.u, ev.v);
        w.events.push_back(ev);
    }
    return w;
}

}  // namespace

Workload gen_workload(WorkloadKind kind, int n, long long length, double p_insert,
                      std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_workload: n must be >= 1");
    if (length < 0) throw std::invalid_argument("gen_workload: negative length");
    switch (kind) {
        case WorkloadKind::Random:
            return gen_random(n, length, p_insert, seed);
        case WorkloadKind::DecrementalComplete:
            return gen_decremental_complete(n, length);
        case WorkloadKind::InsertThenDelete:
            return gen_insert_then_delete(n, length, seed);
        case WorkloadKind::AdaptiveMatchedAttack:
            return gen_adaptive_attack(n, length, seed);
    }
    throw std::logic_error("gen_workload: unreachable");
}

}  // namespace dynmatch
