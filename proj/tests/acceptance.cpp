// Acceptance gate: one criterion per function, one pass/fail line each.
// Run with no arguments for all criteria, or with a single number 1..8.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "dynmatch/coloring.hpp"
#include "dynmatch/matcher.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/rng.hpp"
#include "dynmatch/runner.hpp"
#include "dynmatch/scheduler.hpp"
#include "dynmatch/subgraph_system.hpp"
#include "dynmatch/workload.hpp"

using namespace dynmatch;

namespace {

DynGraph random_graph(int n, double p, Rng& rng) {
    DynGraph g(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng.chance(p)) g.insert_edge(u, v);
    return g;
}

int ceil_sqrt(int n) {
    int s = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (s * s < n) ++s;
    return s;
}

// 1. Differential correctness: 200 fuzz trials, verify=each, zero failures.
bool criterion_1() {
    FuzzResult res = fuzz(200, 1);
    if (res.failures) {
        for (const RunResult& r : res.failed_runs)
            std::printf("    fuzz failure: %s\n", r.failure.c_str());
    }
    return res.trials == 200 && res.failures == 0;
}

// 2. Adaptive adversary at n=128, 5000 events, verify=each; the running
// unmatched-S budget is never breached inside matcher phases.
bool criterion_2() {
    Workload w = gen_workload(WorkloadKind::AdaptiveMatchedAttack, 128, 5000, 0.5, 2);
    Engine e = engine_new(128);
    DynGraph truth(128);
    for (size_t i = 0; i < w.events.size(); ++i) {
        const UpdateEvent& ev = w.events[i];
        apply(e, ev);
        if (ev.kind == UpdateEvent::Insert)
            truth.insert_edge(ev.u, ev.v);
        else
            truth.delete_edge(ev.u, ev.v);
        if (!check_engine(e).empty() || !check_matching(truth, engine_matching(e)).empty()) {
            std::printf("    verification failed at event %zu\n", i);
            return false;
        }
        long long breaches = 0;
        if (e.kind == PhaseKind::Type1) breaches = e.type1.r1_breaches;
        if (e.kind == PhaseKind::Type2) breaches = e.type2.matcher.r1_breaches;
        if (breaches) {
            std::printf("    running budget breached at event %zu\n", i);
            return false;
        }
    }
    return w.events.size() == 5000;
}

// 3. From-scratch construction valid across n, p, z; adjacency lists short.
bool criterion_3() {
    Rng rng(3);
    for (int n : {50, 200, 500}) {
        for (double p : {0.05, 0.3, 0.8}) {
            DynGraph g = random_graph(n, p, rng);
            for (int z : {2, 4, 8, ceil_sqrt(n)}) {
                MultiLevelSystem sys = build_basic(g, z);
                auto viol = validate_system(sys, g);
                if (!viol.empty()) {
                    std::printf("    n=%d p=%.2f z=%d: %s\n", n, p, z, viol[0].c_str());
                    return false;
                }
                for (VertexId u = 0; u < n; ++u)
                    if (sys.cls[u] == VClass::U &&
                        static_cast<int>(sys.lambda[u].size()) > 3 * z) {
                        std::printf("    n=%d p=%.2f z=%d: long adjacency list\n", n, p, z);
                        return false;
                    }
            }
        }
    }
    return true;
}

// 4. Refinement chain 32 -> 16 -> 8 -> 4 on G(300, 0.4) with randomized
// deferred deletions and window insertions.
bool criterion_4() {
    Rng rng(4);
    DynGraph g = random_graph(300, 0.4, rng);
    MultiLevelSystem sys = build_basic(g, 32);
    if (!validate_system(sys, g).empty()) return false;
    int z = 32;
    while (z > 4) {
        int z_new = z / 2;
        EdgeList all = g.edges(), e_del, e_ins;
        for (size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
        size_t want_del = 100 + rng.below(401);  // up to 500
        for (size_t i = 0; i < all.size() && e_del.size() < want_del; ++i) e_del.push_back(all[i]);
        size_t want_ins = 50 + rng.below(151);  // up to 200
        while (e_ins.size() < want_ins) {
            VertexId a = static_cast<VertexId>(rng.below(300));
            VertexId b = static_cast<VertexId>(rng.below(300));
            if (a == b || g.neighbors(a).count(b)) continue;
            auto key = edge_key(a, b);
            bool dup = false;
            for (auto e : e_ins)
                if (e == key) dup = true;
            if (!dup) e_ins.push_back(key);
        }
        DynGraph before = g;
        RefinementResult res = refine(g, sys, e_del, e_ins, z_new);
        if (res.retained_deletions.size() * static_cast<size_t>(z) >
            e_del.size() * static_cast<size_t>(z_new)) {
            std::printf("    retained-deletion budget exceeded at z=%d\n", z);
            return false;
        }
        auto viol = validate_system(sys, g);
        if (!viol.empty()) {
            std::printf("    z=%d -> %d: %s\n", z, z_new, viol[0].c_str());
            return false;
        }
        DynGraph expect = before;
        for (auto [a, b] : e_ins) expect.insert_edge(a, b);
        EdgeList retained = res.retained_deletions;
        std::sort(retained.begin(), retained.end());
        for (auto e : e_del)
            if (!std::binary_search(retained.begin(), retained.end(), e))
                expect.delete_edge(e.first, e.second);
        if (!(g == expect)) {
            std::printf("    refined graph mismatch at z=%d\n", z);
            return false;
        }
        z = z_new;
    }
    return true;
}

// 5. Coloring: proper, at most max-degree + 1 colors, odd cycles tight; the
// least-damaged-class pigeonhole bound holds on every attached engine.
bool criterion_5() {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 10 + static_cast<int>(rng.below(291));
        DynGraph g = random_graph(n, 0.05 + 0.3 * (trial % 3), rng);
        EdgeColoring col = color_edges(g, g.edges());
        int maxdeg = 0;
        for (VertexId v = 0; v < n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
        if (col.num_colors > maxdeg + 1) return false;
        std::vector<std::vector<char>> seen(static_cast<size_t>(n),
                                            std::vector<char>(static_cast<size_t>(col.num_colors) + 1, 0));
        for (auto [e, c] : col.colors) {
            if (c < 1 || c > col.num_colors) return false;
            if (seen[e.first][c] || seen[e.second][c]) {
                std::printf("    improper coloring at trial %d\n", trial);
                return false;
            }
            seen[e.first][c] = seen[e.second][c] = 1;
        }
    }
    for (int n : {5, 9, 15, 101}) {
        DynGraph g(n);
        for (VertexId v = 0; v < n; ++v) g.insert_edge(v, (v + 1) % n);
        EdgeColoring col = color_edges(g, g.edges());
        int used = 0;
        for (auto [e, c] : col.colors) used = std::max(used, c);
        if (used != 3) {
            std::printf("    odd cycle n=%d used %d colors\n", n, used);
            return false;
        }
    }
    // pigeonhole bound at attach time, over a spread of systems
    for (int n : {32, 64, 128}) {
        for (int z : {2, 4, 8}) {
            DynGraph g = random_graph(n, 0.4, rng);
            MultiLevelSystem sys = build_basic(g, z);
            long long s_count = 0;
            for (VertexId v = 0; v < n; ++v)
                if (sys.in_s(v)) ++s_count;
            MatcherState st = attach(sys, g, MatcherProfile::multi_level(n, z));
            double bound =
                static_cast<double>(s_count) * (std::log2(static_cast<double>(n)) + 1.0) / (z + 1);
            if (static_cast<double>(st.init_unmatched_s_m1) > bound) {
                std::printf("    class-selection bound violated at n=%d z=%d\n", n, z);
                return false;
            }
        }
    }
    return true;
}

// 6. Dense hierarchy bookkeeping at n=256: the level contract is enforced
// at every phase start (the engine throws on violation) and the parameter
// identities hold whenever the hierarchy is active.
bool criterion_6() {
    const int n = 256;
    const double dense = std::pow(static_cast<double>(n), 1.5);  // 4096
    Engine e = engine_new(n);
    Rng rng(6);
    // push well past the dense threshold
    while (e.live.num_edges() < 5000) {
        VertexId u = static_cast<VertexId>(rng.below(n));
        VertexId v = static_cast<VertexId>(rng.below(n));
        if (u == v || e.live.neighbors(u).count(v)) continue;
        apply(e, {UpdateEvent::Insert, u, v});
    }
    long long m0 = e.live.num_edges();
    long long budget = 4 * m0;
    bool saw_hierarchy = false;
    for (long long i = 0; i < budget; ++i) {
        bool ins = e.live.num_edges() < static_cast<long long>(dense) || rng.below(2) == 0;
        if (ins) {
            VertexId u = static_cast<VertexId>(rng.below(n));
            VertexId v = static_cast<VertexId>(rng.below(n));
            if (u == v || e.live.neighbors(u).count(v)) {
                --i;
                continue;
            }
            apply(e, {UpdateEvent::Insert, u, v});
        } else {
            auto es = e.live.edges();
            auto [u, v] = es[rng.below(es.size())];
            apply(e, {UpdateEvent::Delete, u, v});
        }
        if (e.kind == PhaseKind::Type2) {
            saw_hierarchy = true;
            const HierarchyState& h = e.type2;
            double d = 0;  // d is fixed at phase entry; re-check ladder shape only
            (void)d;
            for (int l = 2; l <= h.k; ++l)
                if (h.zs[l] * 2 != h.zs[l - 1]) return false;
            if (h.eta * h.eta < n || h.eta * h.eta >= 4 * n) return false;
            if ((h.zs[1] & (h.zs[1] - 1)) || (h.eta & (h.eta - 1))) return false;
            for (int l = 1; l <= h.k; ++l) {
                long long cap = static_cast<long long>(l - 1) * h.zs[l] * h.eta;
                if (static_cast<long long>(h.levels[l].deferred.size()) > cap) return false;
            }
        }
        if (i % 200 == 0) {
            if (!check_engine(e).empty()) {
                std::printf("    engine coherence failed at event %lld\n", i);
                return false;
            }
            if (!check_matching(e.live, engine_matching(e)).empty()) {
                std::printf("    maximality failed at event %lld\n", i);
                return false;
            }
        }
    }
    if (!saw_hierarchy) {
        std::printf("    the dense hierarchy was never entered\n");
        return false;
    }
    return true;
}

// 7. Scaling proxy on adaptive decremental teardowns: measure mean
// elementary ops per deletion for the full engine and the naive baseline.
bool criterion_7() {
    double full_prev = 0;
    bool ok = true;
    for (int n : {128, 256, 512}) {
        double per[2] = {0, 0};
        for (int which = 0; which < 2; ++which) {
            EngineKind kind = which == 0 ? EngineKind::Full : EngineKind::Naive;
            Engine full = engine_new(n);
            NaiveEngine naive(n);
            OpCounter naive_ops;
            naive.set_op_counter(&naive_ops);
            auto matching = [&] {
                return kind == EngineKind::Full ? engine_matching(full) : naive.matching();
            };
            auto graph = [&]() -> const DynGraph& {
                return kind == EngineKind::Full ? full.live : naive.graph();
            };
            auto step = [&](const UpdateEvent& ev) {
                if (kind == EngineKind::Full)
                    apply(full, ev);
                else
                    naive.apply(ev);
            };
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = u + 1; v < n; ++v) step({UpdateEvent::Insert, u, v});
            std::uint64_t ops0 = kind == EngineKind::Full ? full.ops.count : naive_ops.count;
            long long deletions = 0;
            while (graph().num_edges() > 0) {
                Matching m = matching();
                UpdateEvent ev;
                if (!m.empty()) {
                    std::pair<VertexId, VertexId> best = {-1, -1};
                    int best_deg = -1;
                    for (auto [a, b] : m) {
                        int d = std::max(graph().degree(a), graph().degree(b));
                        if (d > best_deg ||
                            (d == best_deg && std::make_pair(a, b) < best)) {
                            best = {a, b};
                            best_deg = d;
                        }
                    }
                    ev = {UpdateEvent::Delete, best.first, best.second};
                } else {
                    ev = {UpdateEvent::Delete, graph().edges()[0].first,
                          graph().edges()[0].second};
                }
                step(ev);
                ++deletions;
            }
            std::uint64_t ops1 = kind == EngineKind::Full ? full.ops.count : naive_ops.count;
            per[which] = static_cast<double>(ops1 - ops0) / static_cast<double>(deletions);
        }
        std::printf("    n=%d: full %.1f ops/deletion, naive %.1f ops/deletion\n", n, per[0],
                    per[1]);
        if (n == 512 && per[0] >= per[1]) {
            std::printf("    full engine not below the naive baseline at n=512\n");
            ok = false;
        }
        if (full_prev > 0 && per[0] > 3.0 * full_prev) {
            std::printf("    growth factor %.2f exceeds 3.0 per doubling\n", per[0] / full_prev);
            ok = false;
        }
        full_prev = per[0];
    }
    return ok;
}

// 8. Opening-stream engine: 100 random short sequences per size with the
// square-root threshold, maximality and F-coherence after every update.
bool criterion_8() {
    Rng rng(8);
    for (int n : {16, 64, 256}) {
        for (int trial = 0; trial < 100; ++trial) {
            Workload w = gen_workload(WorkloadKind::Random, n,
                                      1 + static_cast<long long>(rng.below(n)), 0.6, rng.next());
            RunResult res = run_workload(EngineKind::Boot, w, VerifyMode::Each);
            if (!res.report.verified) {
                std::printf("    n=%d trial=%d: %s\n", n, trial, res.failure.c_str());
                return false;
            }
        }
    }
    return true;
}

struct Criterion {
    int id;
    const char* what;
    bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "differential fuzzing, 200 trials, verify=each", criterion_1},
    {2, "adaptive adversary n=128, 5000 events, budget monitored", criterion_2},
    {3, "from-scratch construction valid across n, p, z", criterion_3},
    {4, "refinement chain 32->16->8->4 with budgets and graph equality", criterion_4},
    {5, "edge coloring proper and tight; class-selection bound", criterion_5},
    {6, "dense hierarchy level contract and parameter identities", criterion_6},
    {7, "scaling proxy vs naive baseline on adaptive teardowns", criterion_7},
    {8, "opening-stream engine, 100 sequences per size", criterion_8},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only && c.id != only) continue;
        bool ok = c.fn();
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, c.what);
        if (!ok) ++failures;
    }
    return failures ? 1 : 0;
}
