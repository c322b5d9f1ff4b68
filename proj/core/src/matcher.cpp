#include "dynmatch/matcher.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dynmatch {

namespace {

void bump(MatcherState& st, std::uint64_t k = 1) {
    if (st.ops) st.ops->bump(k);
}

void mstar_link(MatcherState& st, VertexId a, VertexId b) {
    assert(st.mstar[a] == -1 && st.mstar[b] == -1);
    st.mstar[a] = b;
    st.mstar[b] = a;
    bump(st);
}

void mstar_unlink(MatcherState& st, VertexId a, VertexId b) {
    assert(st.mstar[a] == b && st.mstar[b] == a);
    st.mstar[a] = -1;
    st.mstar[b] = -1;
    bump(st);
}

void m1_link(MatcherState& st, VertexId a, VertexId b) {
    assert(st.mi[1][a] == -1 && st.mi[1][b] == -1);
    st.mi[1][a] = b;
    st.mi[1][b] = a;
    if (st.sys.in_s(a)) --st.s_unmatched_m1;
    if (st.sys.in_s(b)) --st.s_unmatched_m1;
}

void m1_unlink(MatcherState& st, VertexId a, VertexId b) {
    assert(st.mi[1][a] == b && st.mi[1][b] == a);
    st.mi[1][a] = -1;
    st.mi[1][b] = -1;
    if (st.sys.in_s(a)) ++st.s_unmatched_m1;
    if (st.sys.in_s(b)) ++st.s_unmatched_m1;
}

void finish_op(MatcherState& st) {
    if (static_cast<double>(st.s_unmatched_m1) > st.profile.threshold_run) ++st.r1_breaches;
    if (st.post_op_hook) st.post_op_hook(st);
}

void init_phase_impl(MatcherState& st);

void rematch(MatcherState& st, VertexId x) {
    if (st.sys.cls[x] == VClass::A)
        proc_rematch_a(st, st.sys.level[x], x);
    else
        proc_rematch_bu(st, x);
}

}  // namespace

MatcherProfile MatcherProfile::multi_level(int n, int z) {
    MatcherProfile p;
    double lg = std::log2(static_cast<double>(n));
    p.phase_len = std::max<long long>(1, n / z);
    p.threshold_init = 12.0 * n * lg * lg / z;
    p.threshold_run = 18.0 * n * lg * lg / z;
    p.index_bound = 4.0 * n * lg / z;
    p.insertions_allowed = true;
    return p;
}

MatcherProfile MatcherProfile::basic_decremental(int n, int z, long long r) {
    MatcherProfile p;
    double rho = static_cast<double>(n) + static_cast<double>(r);
    p.phase_len = std::max<long long>(1, (r + z - 1) / z);
    p.threshold_init = 32.0 * rho / z;
    p.threshold_run = 64.0 * rho / z;
    p.index_bound = 4.0 * rho / z;
    p.insertions_allowed = false;
    return p;
}

void MatcherState::set_op_counter(OpCounter* c) {
    ops = c;
    gprime.set_op_counter(c);
}

MatcherState attach(MultiLevelSystem sys, DynGraph g, MatcherProfile profile) {
    const int n = sys.n;
    if (g.num_vertices() != n) throw std::invalid_argument("attach: graph/system size mismatch");
    if ((1 << sys.k) > std::max(n, 2)) throw std::invalid_argument("attach: k exceeds log2(n)");

    MatcherState st;
    st.gprime = std::move(g);
    st.sys = std::move(sys);
    st.profile = profile;
    const int z = st.sys.z;

    st.ei_adj.assign(static_cast<size_t>(n), {});
    st.mstar.assign(static_cast<size_t>(n), -1);
    st.mi.assign(static_cast<size_t>(z) + 2, std::vector<VertexId>(static_cast<size_t>(n), -1));
    st.unmatched_s.assign(static_cast<size_t>(z) + 2, 0);
    st.h_in.assign(static_cast<size_t>(n), {});
    st.h_out.assign(static_cast<size_t>(n), {});
    st.ht_in.assign(static_cast<size_t>(n), {});
    st.ht_out.assign(static_cast<size_t>(n), {});
    st.insert_count.assign(static_cast<size_t>(n), 0);
    st.bad.assign(static_cast<size_t>(n), 0);

    // Color M into z+1 matchings and move the class with the fewest
    // unmatched S-vertices to index 1.
    EdgeColoring col = color_edges(st.gprime, st.sys.m_edges());
    std::vector<EdgeList> classes = matchings_from_coloring(col, z + 1);
    for (int i = 1; i <= z + 1; ++i)
        for (auto [a, b] : classes[static_cast<size_t>(i) - 1]) {
            st.mi[i][a] = b;
            st.mi[i][b] = a;
        }
    std::vector<long long> counts(static_cast<size_t>(z) + 2, 0);
    for (int i = 1; i <= z + 1; ++i)
        for (VertexId v = 0; v < n; ++v)
            if (st.sys.in_s(v) && st.mi[i][v] == -1) ++counts[static_cast<size_t>(i)];
    int best = 1;
    for (int i = 2; i <= z + 1; ++i)
        if (counts[static_cast<size_t>(i)] < counts[static_cast<size_t>(best)]) best = i;
    if (best != 1) {
        std::swap(st.mi[1], st.mi[static_cast<size_t>(best)]);
        std::swap(counts[1], counts[static_cast<size_t>(best)]);
    }
    st.s_unmatched_m1 = counts[1];
    st.init_unmatched_s_m1 = counts[1];
    for (int i = 2; i <= z + 1; ++i) st.unmatched_s[static_cast<size_t>(i)] = counts[static_cast<size_t>(i)];

    // M* starts as M_1; build the repair structures, then extend to maximal.
    st.mstar = st.mi[1];
    for (VertexId v = 0; v < n; ++v) proc_update(st, v);
    for (VertexId x = 0; x < n; ++x)
        if (st.mstar[x] == -1) rematch(st, x);

    if (static_cast<double>(st.s_unmatched_m1) > st.profile.threshold_init) ++st.restore_breaches;
    finish_op(st);
    return st;
}

void proc_update(MatcherState& st, VertexId v) {
    if (st.mstar[v] != -1) {
        st.shat.erase(v);
        if (st.sys.cls[v] == VClass::U) {
            for (VertexId w : st.h_out[v]) st.h_in[w].erase(v);
            bump(st, st.h_out[v].size() + 1);
            st.h_out[v].clear();
        }
        for (VertexId w : st.ht_out[v]) st.ht_in[w].erase(v);
        bump(st, st.ht_out[v].size() + 1);
        st.ht_out[v].clear();
    } else {
        if (st.sys.in_s(v)) st.shat.insert(v);
        if (st.sys.cls[v] == VClass::U) {
            for (VertexId w : st.sys.lambda[v]) {
                st.h_out[v].insert(w);
                st.h_in[w].insert(v);
            }
            bump(st, st.sys.lambda[v].size() + 1);
        }
        for (VertexId w : st.ei_adj[v]) {
            if (st.bad[w]) {
                st.ht_out[v].insert(w);
                st.ht_in[w].insert(v);
            }
        }
        bump(st, st.ei_adj[v].size() + 1);
    }
}

bool proc_rematch_bu(MatcherState& st, VertexId u) {
    if (st.mstar[u] != -1) throw std::logic_error("proc_rematch_bu: u is matched");
    if (st.sys.cls[u] == VClass::A) throw std::logic_error("proc_rematch_bu: u is an A-vertex");
    // (1) an unmatched U-neighbor recorded in H.
    bump(st);
    if (!st.h_in[u].empty()) {
        VertexId v = *st.h_in[u].begin();
        mstar_link(st, u, v);
        proc_update(st, u);
        proc_update(st, v);
        return true;
    }
    // (2) an unmatched S-vertex adjacent in G'.
    VertexId sv = -1;
    for (VertexId w : st.shat) {
        if (st.gprime.has_edge(u, w)) {
            sv = w;
            break;
        }
    }
    if (sv != -1) {
        mstar_link(st, u, sv);
        proc_update(st, u);
        proc_update(st, sv);
        return true;
    }
    if (!st.bad[u]) {
        // (3) good vertex: scan its few inserted edges.
        VertexId c = -1;
        for (VertexId w : st.ei_adj[u]) {
            bump(st);
            if (st.mstar[w] == -1) {
                c = w;
                break;
            }
        }
        if (c != -1) {
            mstar_link(st, u, c);
            proc_update(st, u);
            proc_update(st, c);
            return true;
        }
    } else {
        // (4) bad vertex: an unmatched inserted-edge partner recorded in H~.
        bump(st);
        if (!st.ht_in[u].empty()) {
            VertexId c = *st.ht_in[u].begin();
            mstar_link(st, u, c);
            proc_update(st, u);
            proc_update(st, c);
            return true;
        }
    }
    return false;
}

bool proc_rematch_a(MatcherState& st, int i, VertexId v) {
    if (st.mstar[v] != -1) throw std::logic_error("proc_rematch_a: v is matched");
    if (st.sys.cls[v] != VClass::A || st.sys.level[v] != i)
        throw std::logic_error("proc_rematch_a: v not in the stated level class");
    // (1) scan the L(v) prefix for a vertex that is unmatched or matched
    // below this level's reach.
    const long long limit = static_cast<long long>(std::floor(st.profile.threshold_run)) + 1;
    long long seen = 0;
    VertexId pick = -1;
    for (VertexId u : st.sys.llist[v]) {
        if (seen++ == limit) break;
        bump(st);
        VertexId up = st.mstar[u];
        if (up == -1 || !(st.sys.cls[up] == VClass::A && st.sys.level[up] <= i)) {
            pick = u;
            break;
        }
    }
    if (pick != -1) {
        VertexId u = pick, up = st.mstar[u];
        if (up != -1) {
            mstar_unlink(st, u, up);
            if (st.mi[1][u] == up) m1_unlink(st, u, up);
            mstar_link(st, u, v);
            proc_update(st, up);
            proc_update(st, v);
            if (st.sys.cls[up] == VClass::A)
                proc_rematch_a(st, st.sys.level[up], up);
            else
                proc_rematch_bu(st, up);
        } else {
            mstar_link(st, u, v);
            proc_update(st, u);
            proc_update(st, v);
        }
        return true;
    }
    // (2) an unmatched S-vertex adjacent in G'.
    VertexId sv = -1;
    for (VertexId w : st.shat) {
        if (w != v && st.gprime.has_edge(v, w)) {
            sv = w;
            break;
        }
    }
    if (sv != -1) {
        mstar_link(st, v, sv);
        proc_update(st, v);
        proc_update(st, sv);
        return true;
    }
    if (!st.bad[v]) {
        VertexId c = -1;
        for (VertexId w : st.ei_adj[v]) {
            bump(st);
            if (st.mstar[w] == -1) {
                c = w;
                break;
            }
        }
        if (c != -1) {
            mstar_link(st, v, c);
            proc_update(st, v);
            proc_update(st, c);
            return true;
        }
    } else {
        bump(st);
        if (!st.ht_in[v].empty()) {
            VertexId c = *st.ht_in[v].begin();
            mstar_link(st, v, c);
            proc_update(st, v);
            proc_update(st, c);
            return true;
        }
    }
    return false;
}

void handle_deletion(MatcherState& st, VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    auto& sys = st.sys;
    if (st.ei_adj[u].count(v)) {
        st.ei_adj[u].erase(v);
        st.ei_adj[v].erase(u);
        st.ht_out[u].erase(v);
        st.ht_in[v].erase(u);
        st.ht_out[v].erase(u);
        st.ht_in[u].erase(v);
        bump(st, 4);
    } else if (st.gprime.has_edge(u, v)) {
        st.gprime.delete_edge(u, v);
        if (sys.cls[u] == VClass::U) sys.lambda[u].erase(v);
        if (sys.cls[v] == VClass::U) sys.lambda[v].erase(u);
        if (sys.cls[u] == VClass::A) sys.llist[u].erase(v);
        if (sys.cls[v] == VClass::A) sys.llist[v].erase(u);
        st.h_out[u].erase(v);
        st.h_in[v].erase(u);
        st.h_out[v].erase(u);
        st.h_in[u].erase(v);
        sys.madj[u].erase(v);
        sys.madj[v].erase(u);
        bump(st, 8);
        for (int i = 2; i <= sys.z + 1; ++i) {
            if (st.mi[static_cast<size_t>(i)][u] == v) {
                st.mi[static_cast<size_t>(i)][u] = -1;
                st.mi[static_cast<size_t>(i)][v] = -1;
                if (sys.in_s(u)) ++st.unmatched_s[static_cast<size_t>(i)];
                if (sys.in_s(v)) ++st.unmatched_s[static_cast<size_t>(i)];
            }
        }
        bump(st);
    } else {
        throw std::invalid_argument("handle_deletion: edge not present");
    }

    if (st.mstar[u] == v) {
        mstar_unlink(st, u, v);
        if (st.mi[1][u] == v) m1_unlink(st, u, v);
        proc_update(st, u);
        proc_update(st, v);
        for (VertexId x : {u, v})
            if (st.mstar[x] == -1) rematch(st, x);
    }

    ++st.updates_seen;
    if (st.updates_seen % st.profile.phase_len == 0) init_phase_impl(st);
    finish_op(st);
}

void handle_insertion(MatcherState& st, VertexId u, VertexId v) {
    if (!st.profile.insertions_allowed)
        throw std::invalid_argument("handle_insertion: profile is deletions-only");
    if (u > v) std::swap(u, v);
    st.gprime.check_vertex(u);
    st.gprime.check_vertex(v);
    if (u == v || st.gprime.has_edge(u, v) || st.ei_adj[u].count(v))
        throw std::invalid_argument("handle_insertion: edge present or invalid");

    st.ei_adj[u].insert(v);
    st.ei_adj[v].insert(u);
    if (st.mstar[u] == -1 && st.bad[v]) {
        st.ht_out[u].insert(v);
        st.ht_in[v].insert(u);
    }
    if (st.mstar[v] == -1 && st.bad[u]) {
        st.ht_out[v].insert(u);
        st.ht_in[u].insert(v);
    }
    bump(st, 4);
    if (st.mstar[u] == -1 && st.mstar[v] == -1) {
        mstar_link(st, u, v);
        proc_update(st, u);
        proc_update(st, v);
    }
    for (VertexId x : {u, v}) {
        ++st.insert_count[x];
        if (!st.bad[x] && st.insert_count[x] >= st.sys.z) {
            st.bad[x] = 1;
            for (VertexId y : st.ei_adj[x]) {
                bump(st);
                if (st.mstar[y] == -1) {
                    st.ht_out[y].insert(x);
                    st.ht_in[x].insert(y);
                }
            }
        }
    }

    ++st.updates_seen;
    if (st.updates_seen % st.profile.phase_len == 0) init_phase_impl(st);
    finish_op(st);
}

namespace {

void init_phase_impl(MatcherState& st) {
    auto& sys = st.sys;
    const int n = sys.n;
    if (static_cast<double>(st.s_unmatched_m1) <= st.profile.threshold_init) return;

    // Frozen list of S-vertices currently unmatched in M_1.
    std::vector<VertexId> sprime;
    for (VertexId v = 0; v < n; ++v)
        if (sys.in_s(v) && st.mi[1][v] == -1) sprime.push_back(v);
    // Smallest lightly damaged class.
    int idx = -1;
    for (int i = 2; i <= sys.z + 1; ++i) {
        if (static_cast<double>(st.unmatched_s[static_cast<size_t>(i)]) <= st.profile.index_bound) {
            idx = i;
            break;
        }
    }
    if (idx == -1) throw std::logic_error("init_phase: no augmentation class within bound");

    std::vector<char> was_matched(static_cast<size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v) was_matched[v] = (st.mstar[v] != -1);
    VertexSet displaced;

    for (VertexId v : sprime) {
        if (st.mi[1][v] != -1) continue;  // matched by an earlier augmentation
        // Walk the alternating path of M_1 ∪ M_idx starting at v.
        struct PathEdge {
            VertexId a, b;
            bool in_m1;
        };
        std::vector<PathEdge> path;
        VertexId prev = -1, cur = v;
        bool use_m1 = false, last_was_m1 = false;
        while (true) {
            VertexId nxt = use_m1 ? st.mi[1][cur] : st.mi[static_cast<size_t>(idx)][cur];
            bump(st);
            if (nxt == -1 || nxt == prev) break;
            path.push_back({cur, nxt, use_m1});
            last_was_m1 = use_m1;
            prev = cur;
            cur = nxt;
            use_m1 = !use_m1;
        }
        VertexId vend = cur;
        bool problematic = (vend == v) || (sys.in_s(vend) && last_was_m1);
        if (problematic) continue;

        // Augment M_1: path edges alternate (class edge, M_1 edge, ...).
        for (const PathEdge& e : path)
            if (e.in_m1) m1_unlink(st, e.a, e.b);
        for (const PathEdge& e : path)
            if (!e.in_m1) m1_link(st, e.a, e.b);
        // Sync M*: removed M_1 edges leave M*; added ones displace any
        // conflicting non-M_1 edge.
        for (const PathEdge& e : path)
            if (e.in_m1) mstar_unlink(st, e.a, e.b);
        for (const PathEdge& e : path) {
            if (e.in_m1) continue;
            if (st.mstar[e.a] == e.b) continue;  // already present in M*
            for (VertexId x : {e.a, e.b}) {
                if (st.mstar[x] != -1) {
                    VertexId y = st.mstar[x];
                    mstar_unlink(st, x, y);
                    displaced.insert(y);
                }
            }
            mstar_link(st, e.a, e.b);
        }
        if (st.mstar[vend] == -1) displaced.insert(vend);
    }

    // Resync repair structures for every vertex whose status flipped.
    for (VertexId v = 0; v < n; ++v)
        if (was_matched[v] != (st.mstar[v] != -1)) proc_update(st, v);
    // Extend M* back to a maximal matching.
    for (VertexId x : displaced)
        if (st.mstar[x] == -1) rematch(st, x);

    if (static_cast<double>(st.s_unmatched_m1) > st.profile.threshold_init) ++st.restore_breaches;
}

}  // namespace

void init_phase(MatcherState& st) {
    init_phase_impl(st);
    finish_op(st);
}

Matching current_matching(const MatcherState& st) {
    Matching m;
    for (VertexId v = 0; v < st.sys.n; ++v)
        if (st.mstar[v] > v) m.emplace_back(v, st.mstar[v]);
    return m;
}

std::vector<std::string> check_matcher(const MatcherState& st) {
    std::vector<std::string> out;
    auto failf = [&out](auto&&... parts) {
        std::ostringstream o;
        (o << ... << parts);
        out.push_back(o.str());
    };
    const auto& sys = st.sys;
    const int n = sys.n;

    auto check_partner_map = [&](const std::vector<VertexId>& pm, const std::string& name) {
        for (VertexId v = 0; v < n; ++v) {
            VertexId w = pm[v];
            if (w == -1) continue;
            if (w < 0 || w >= n || pm[w] != v) failf(name, ": asymmetric at ", v);
        }
    };
    check_partner_map(st.mstar, "M*");
    for (int i = 1; i <= sys.z + 1; ++i)
        check_partner_map(st.mi[static_cast<size_t>(i)], "M_i");

    for (VertexId v = 0; v < n; ++v) {
        VertexId w = st.mstar[v];
        if (w > v && !st.gprime.neighbors(v).count(w) && !st.ei_adj[v].count(w))
            failf("M*: edge (", v, ",", w, ") not in G' ∪ E_I");
        VertexId w1 = st.mi[1][v];
        if (w1 != -1 && st.mstar[v] != w1) failf("M_1 ⊄ M* at ", v);
        if (w1 > v && !sys.madj[v].count(w1)) failf("M_1 ⊄ M at ", v);
    }
    // Classes i >= 2 remain pairwise disjoint.
    std::map<Edge, int> owner;
    for (int i = 2; i <= sys.z + 1; ++i)
        for (VertexId v = 0; v < n; ++v) {
            VertexId w = st.mi[static_cast<size_t>(i)][v];
            if (w > v && !owner.emplace(Edge{v, w}, i).second)
                failf("classes: edge (", v, ",", w, ") in two classes");
        }
    // Unmatched-S bookkeeping.
    long long um1 = 0;
    for (VertexId v = 0; v < n; ++v)
        if (sys.in_s(v) && st.mi[1][v] == -1) ++um1;
    if (um1 != st.s_unmatched_m1) failf("counter: unmatched-S of M_1 stored ", st.s_unmatched_m1, " actual ", um1);
    for (int i = 2; i <= sys.z + 1; ++i) {
        long long c = 0;
        for (VertexId v = 0; v < n; ++v)
            if (sys.in_s(v) && st.mi[static_cast<size_t>(i)][v] == -1) ++c;
        if (c != st.unmatched_s[static_cast<size_t>(i)]) failf("counter: unmatched-S of class ", i, " incoherent");
    }
    if (static_cast<double>(st.s_unmatched_m1) > st.profile.threshold_run)
        failf("R1: unmatched-S in M_1 = ", st.s_unmatched_m1, " exceeds ", st.profile.threshold_run);
    // Q1.
    VertexSet shat_expect;
    for (VertexId v = 0; v < n; ++v)
        if (sys.in_s(v) && st.mstar[v] == -1) shat_expect.insert(v);
    if (shat_expect != st.shat) failf("Q1: unmatched-S set incoherent");
    // Q2: H rows mirror the lambda lists of unmatched U-vertices; lambda
    // itself must mirror the graph.
    for (VertexId u = 0; u < n; ++u) {
        if (sys.cls[u] == VClass::U) {
            VertexSet lam_expect;
            for (VertexId w : st.gprime.neighbors(u))
                if (sys.cls[w] != VClass::A) lam_expect.insert(w);
            if (lam_expect != sys.lambda[u]) failf("Q2: lambda at ", u, " incoherent");
            const VertexSet empty;
            const VertexSet& expect = (st.mstar[u] == -1) ? sys.lambda[u] : empty;
            if (st.h_out[u] != expect) failf("Q2: H out-row at ", u, " incoherent");
        } else if (!st.h_out[u].empty()) {
            failf("Q2: H out-row at non-U vertex ", u);
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        VertexSet in_expect;
        for (VertexId u = 0; u < n; ++u)
            if (st.h_out[u].count(v)) in_expect.insert(u);
        if (in_expect != st.h_in[v]) failf("Q2: H in-row at ", v, " incoherent");
    }
    // Q3.
    for (VertexId v = 0; v < n; ++v) {
        if (st.bad[v]) {
            VertexSet in_expect;
            for (VertexId u : st.ei_adj[v])
                if (st.mstar[u] == -1) in_expect.insert(u);
            if (in_expect != st.ht_in[v]) failf("Q3: H~ in-row at bad vertex ", v, " incoherent");
        } else if (!st.ht_in[v].empty()) {
            failf("Q3: H~ in-row at good vertex ", v);
        }
        VertexSet out_expect;
        if (st.mstar[v] == -1)
            for (VertexId w : st.ei_adj[v])
                if (st.bad[w]) out_expect.insert(w);
        if (out_expect != st.ht_out[v]) failf("Q3: H~ out-row at ", v, " incoherent");
        bool should_be_bad = st.insert_count[v] >= sys.z;
        if (static_cast<bool>(st.bad[v]) != should_be_bad) failf("bad flag incoherent at ", v);
    }
    return out;
}

}  // namespace dynmatch
