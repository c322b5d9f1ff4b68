#include "dynmatch/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dynmatch {

namespace {

int next_pow2(int x) {
    int p = 1;
    while (p < x) p *= 2;
    return p;
}

int ceil_sqrt(int n) {
    int s = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (s * s < n) ++s;
    while ((s - 1) * (s - 1) >= n) --s;
    return s;
}

void sync_counters(Engine& e) {
    e.live.set_op_counter(&e.ops);
    e.boot.set_op_counter(&e.ops);
    e.type1.set_op_counter(&e.ops);
    e.type2.matcher.set_op_counter(&e.ops);
}

EdgeList edge_difference(const DynGraph& a, const DynGraph& b) {
    EdgeList ea = a.edges(), eb = b.edges(), out;
    std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return out;
}

// Rebuilds levels from..k of the hierarchy against the live graph, then
// re-attaches the matcher to the level-k triple.
void rebuild_levels(Engine& e, int from) {
    HierarchyState& h = e.type2;
    const int first_rebuilt = from;
    if (from == 1) {
        LevelTriple t;
        t.g = e.live;
        t.sys = build_basic(t.g, h.zs[1]);
        h.levels[1] = std::move(t);
        from = 2;
        ++h.rebuild_count;
    }
    for (int i = from; i <= h.k; ++i) {
        LevelTriple t = h.levels[static_cast<size_t>(i) - 1];  // parent copy
        EdgeList e_del = edge_difference(t.g, e.live);
        EdgeList e_ins = edge_difference(e.live, t.g);
        RefinementResult res = refine(t.g, t.sys, e_del, e_ins, h.zs[static_cast<size_t>(i)]);
        t.deferred = std::move(res.retained_deletions);
        long long bound = static_cast<long long>(i - 1) * h.zs[static_cast<size_t>(i)] * h.eta;
        if (static_cast<long long>(t.deferred.size()) > bound)
            throw std::logic_error("rebuild: deferred-deletion budget exceeded");
        h.levels[static_cast<size_t>(i)] = std::move(t);
        ++h.rebuild_count;
    }
    // The level contract at a phase start: each rebuilt triple's graph minus
    // its deferred deletions must equal the live graph edge-for-edge.
    for (int i = first_rebuilt; i <= h.k; ++i) {
        const LevelTriple& t = h.levels[static_cast<size_t>(i)];
        EdgeList expect = t.g.edges(), deferred = t.deferred, reduced;
        std::sort(deferred.begin(), deferred.end());
        std::set_difference(expect.begin(), expect.end(), deferred.begin(), deferred.end(),
                            std::back_inserter(reduced));
        if (reduced != e.live.edges())
            throw std::logic_error("rebuild: level graph minus deferred deletions differs from live graph");
    }
    // Attach the matcher and replay the deferred deletions so its graph
    // catches up with the live one before adversarial traffic resumes.
    const LevelTriple& top = h.levels[static_cast<size_t>(h.k)];
    long long span = static_cast<long long>(h.zs[static_cast<size_t>(h.k)]) * h.eta;
    if (static_cast<long long>(top.deferred.size()) + span > e.n)
        throw std::logic_error("attach: replay + phase budget exceeds n");
    h.matcher = attach(top.sys, top.g, MatcherProfile::multi_level(e.n, top.sys.z));
    h.matcher.set_op_counter(&e.ops);
    for (auto [a, b] : top.deferred) handle_deletion(h.matcher, a, b);
    ++h.attach_count;
}

void type2_enter(Engine& e) {
    HierarchyState h;
    LadderParams p = choose_ladder(e.n, e.live.num_edges());
    h.zs = p.zs;
    h.eta = p.eta;
    h.k = p.k;
    h.levels.resize(static_cast<size_t>(h.k) + 1);
    e.type2 = std::move(h);
    rebuild_levels(e, 1);
}

void start_phase(Engine& e) {
    long long m = e.live.num_edges();
    ++e.phase_index;
    if (static_cast<double>(m) <= std::pow(static_cast<double>(e.n), 1.5)) {
        e.kind = PhaseKind::Type1;
        int z = std::max(2, ceil_sqrt(e.n));
        MultiLevelSystem sys = build_basic(e.live, z);
        e.type1 = attach(std::move(sys), e.live, MatcherProfile::multi_level(e.n, z));
        e.type1.set_op_counter(&e.ops);
        e.phase_updates_left = e.n;
    } else {
        e.kind = PhaseKind::Type2;
        type2_enter(e);
        e.phase_updates_left = m;
    }
}

void hierarchy_forward(Engine& e, const UpdateEvent& ev) {
    HierarchyState& h = e.type2;
    if (h.updates_done > 0) {
        int from = 0;
        for (int i = 1; i <= h.k; ++i) {
            long long span = static_cast<long long>(h.zs[static_cast<size_t>(i)]) * h.eta;
            if (h.updates_done % span == 0) {
                from = i;
                break;
            }
        }
        if (from > 0) rebuild_levels(e, from);
    }
    if (ev.kind == UpdateEvent::Insert)
        handle_insertion(h.matcher, ev.u, ev.v);
    else
        handle_deletion(h.matcher, ev.u, ev.v);
    ++h.updates_done;
}

}  // namespace

Engine engine_new(int n_user) {
    if (n_user < 1) throw std::invalid_argument("engine_new: need at least one vertex");
    Engine e;
    e.n_user = n_user;
    e.n = next_pow2(n_user);
    e.live = DynGraph(e.n);
    e.boot = boot_new(e.n, std::max(1, ceil_sqrt(e.n)));
    e.kind = PhaseKind::Boot;
    e.phase_updates_left = e.n;
    return e;
}

void apply(Engine& e, const UpdateEvent& ev) {
    if (ev.u < 0 || ev.u >= e.n_user || ev.v < 0 || ev.v >= e.n_user || ev.u == ev.v)
        throw std::invalid_argument("apply: event outside the user vertex range");
    bool present = e.live.neighbors(ev.u).count(ev.v) > 0;
    if (ev.kind == UpdateEvent::Insert && present)
        throw std::invalid_argument("apply: inserting a present edge");
    if (ev.kind == UpdateEvent::Delete && !present)
        throw std::invalid_argument("apply: deleting an absent edge");

    sync_counters(e);
    if (e.phase_updates_left == 0) start_phase(e);

    switch (e.kind) {
        case PhaseKind::Boot:
            if (ev.kind == UpdateEvent::Insert)
                boot_insert(e.boot, ev.u, ev.v);
            else
                boot_delete(e.boot, ev.u, ev.v);
            break;
        case PhaseKind::Type1:
            if (ev.kind == UpdateEvent::Insert)
                handle_insertion(e.type1, ev.u, ev.v);
            else
                handle_deletion(e.type1, ev.u, ev.v);
            break;
        case PhaseKind::Type2:
            hierarchy_forward(e, ev);
            break;
    }

    if (ev.kind == UpdateEvent::Insert)
        e.live.insert_edge(ev.u, ev.v);
    else
        e.live.delete_edge(ev.u, ev.v);
    --e.phase_updates_left;
    if (e.post_update_hook) e.post_update_hook(e);
}

Matching engine_matching(const Engine& e) {
    switch (e.kind) {
        case PhaseKind::Boot:
            return boot_matching(e.boot);
        case PhaseKind::Type1:
            return current_matching(e.type1);
        case PhaseKind::Type2:
            return current_matching(e.type2.matcher);
    }
    return {};
}

LadderParams choose_ladder(int n, long long m) {
    LadderParams p;
    double d = 2.0 * static_cast<double>(m) / n;
    int z1 = 1;
    while (z1 < d) z1 *= 2;
    p.eta = 1;
    while (p.eta * p.eta < n) p.eta *= 2;
    double lg = std::log2(static_cast<double>(n));
    double thr = std::max(std::sqrt(static_cast<double>(n)) / (4.0 * lg), 2.0);
    p.zs = {0, z1};
    p.k = 1;
    for (int i = 2;; ++i) {
        int zi = z1 >> (i - 1);
        if (zi < thr || (1 << i) > n) break;
        p.zs.push_back(zi);
        p.k = i;
    }
    return p;
}

std::vector<std::string> check_engine(const Engine& e) {
    std::vector<std::string> out;
    auto failf = [&out](auto&&... parts) {
        std::ostringstream o;
        (o << ... << parts);
        out.push_back(o.str());
    };
    auto check_mirror = [&](const MatcherState& st, const char* tag) {
        EdgeList got = st.gprime.edges();
        for (VertexId v = 0; v < st.sys.n; ++v)
            for (VertexId w : st.ei_adj[v])
                if (v < w) got.emplace_back(v, w);
        std::sort(got.begin(), got.end());
        if (got != e.live.edges()) failf(tag, ": engine graph differs from live graph");
    };
    switch (e.kind) {
        case PhaseKind::Boot: {
            for (const std::string& s : check_bootstrap(e.boot)) out.push_back(s);
            if (e.boot.g.edges() != e.live.edges()) failf("boot: engine graph differs from live graph");
            break;
        }
        case PhaseKind::Type1: {
            for (const std::string& s : check_matcher(e.type1)) out.push_back(s);
            check_mirror(e.type1, "type1");
            break;
        }
        case PhaseKind::Type2: {
            const HierarchyState& h = e.type2;
            for (int i = 1; i <= h.k; ++i) {
                const LevelTriple& t = h.levels[static_cast<size_t>(i)];
                long long bound = static_cast<long long>(i - 1) * h.zs[static_cast<size_t>(i)] * h.eta;
                if (static_cast<long long>(t.deferred.size()) > bound)
                    failf("level ", i, ": deferred-deletion budget exceeded");
                // The triple is a snapshot from its phase start (live has
                // drifted since), so only structural facts are checked here;
                // rebuild_levels verifies the live-graph equality at each
                // phase start, and the matcher mirror covers level k.
                for (auto edge : t.deferred)
                    if (!t.g.neighbors(edge.first).count(edge.second))
                        failf("level ", i, ": deferred edge missing from level graph");
            }
            for (const std::string& s : check_matcher(h.matcher)) out.push_back(s);
            check_mirror(h.matcher, "type2");
            break;
        }
    }
    return out;
}

}  // namespace dynmatch
