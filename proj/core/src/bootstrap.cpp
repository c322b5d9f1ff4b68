#include "dynmatch/bootstrap.hpp"

#include <sstream>
#include <stdexcept>

namespace dynmatch {

namespace {

void bump(BootState& st, std::uint64_t k = 1) {
    if (st.ops) st.ops->bump(k);
}

// Part 2: after x's matched status changed, fix every F(b) it belongs in.
void sync_flists(BootState& st, VertexId x, bool now_matched) {
    for (VertexId b : st.bad_set) {
        bump(st);
        if (b == x || !st.g.neighbors(x).count(b)) continue;
        if (now_matched)
            st.flist[b].erase(x);
        else
            st.flist[b].insert(x);
    }
}

}  // namespace

BootState boot_new(int n, int t) {
    if (t < 1) throw std::invalid_argument("boot_new: t must be >= 1");
    BootState st;
    st.g = DynGraph(n);
    st.mstar.assign(static_cast<size_t>(n), -1);
    st.t = t;
    st.insert_count.assign(static_cast<size_t>(n), 0);
    st.flist.assign(static_cast<size_t>(n), {});
    return st;
}

void boot_insert(BootState& st, VertexId u, VertexId v) {
    st.g.insert_edge(u, v);
    ++st.total_insertions;
    bool u_was = st.mstar[u] != -1, v_was = st.mstar[v] != -1;

    // Part 1: extend the matching if both endpoints are free, then run the
    // per-endpoint F bookkeeping and the bad-crossing check.
    if (!u_was && !v_was) {
        st.mstar[u] = v;
        st.mstar[v] = u;
        bump(st);
    }
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
        if (st.bad_set.count(y) && st.mstar[x] == -1) st.flist[y].insert(x);
        ++st.insert_count[x];
        bump(st);
        if (!st.bad_set.count(x) && st.insert_count[x] >= st.t + 1) {
            st.bad_set.insert(x);
            for (VertexId w : st.g.neighbors(x)) {
                bump(st);
                if (st.mstar[w] == -1) st.flist[x].insert(w);
            }
        }
    }
    // Part 2.
    if (st.mstar[u] != -1 && !u_was) sync_flists(st, u, true);
    if (st.mstar[v] != -1 && !v_was) sync_flists(st, v, true);
}

void boot_delete(BootState& st, VertexId u, VertexId v) {
    st.g.delete_edge(u, v);
    if (st.bad_set.count(u)) st.flist[u].erase(v);
    if (st.bad_set.count(v)) st.flist[v].erase(u);
    bump(st, 2);
    if (st.mstar[u] != v) return;

    st.mstar[u] = -1;
    st.mstar[v] = -1;
    bump(st);
    std::vector<std::pair<VertexId, bool>> changed = {{u, true}, {v, true}};
    for (VertexId x : {u, v}) {
        VertexId pick = -1;
        if (!st.bad_set.count(x)) {
            for (VertexId w : st.g.neighbors(x)) {
                bump(st);
                if (st.mstar[w] == -1) {
                    pick = w;
                    break;
                }
            }
        } else {
            // F(x) is coherent except for the one vertex possibly matched
            // while rematching the other endpoint, so skip matched entries.
            for (VertexId w : st.flist[x]) {
                bump(st);
                if (st.mstar[w] == -1) {
                    pick = w;
                    break;
                }
            }
        }
        if (pick != -1) {
            st.mstar[x] = pick;
            st.mstar[pick] = x;
            bump(st);
            changed.emplace_back(pick, false);
        }
    }
    // Part 2: net status changes only.
    for (auto [x, was] : changed)
        if ((st.mstar[x] != -1) != was) sync_flists(st, x, st.mstar[x] != -1);
}

Matching boot_matching(const BootState& st) {
    Matching m;
    for (VertexId v = 0; v < st.g.num_vertices(); ++v)
        if (st.mstar[v] > v) m.emplace_back(v, st.mstar[v]);
    return m;
}

std::vector<std::string> check_bootstrap(const BootState& st) {
    std::vector<std::string> out;
    auto failf = [&out](auto&&... parts) {
        std::ostringstream o;
        (o << ... << parts);
        out.push_back(o.str());
    };
    const int n = st.g.num_vertices();
    for (VertexId v = 0; v < n; ++v) {
        VertexId w = st.mstar[v];
        if (w != -1) {
            if (w < 0 || w >= n || st.mstar[w] != v) failf("M*: asymmetric at ", v);
            else if (w > v && !st.g.neighbors(v).count(w)) failf("M*: edge (", v, ",", w, ") not in g");
        }
        bool should_be_bad = st.insert_count[v] >= st.t + 1;
        if (st.bad_set.count(v) != static_cast<size_t>(should_be_bad)) failf("bad flag incoherent at ", v);
        VertexSet expect;
        if (should_be_bad)
            for (VertexId y : st.g.neighbors(v))
                if (st.mstar[y] == -1) expect.insert(y);
        if (expect != st.flist[v]) failf("F-list incoherent at ", v);
    }
    if (static_cast<long long>(st.bad_set.size()) * st.t > 2 * st.total_insertions)
        failf("bad-set size ", st.bad_set.size(), " exceeds 2*insertions/t");
    return out;
}

}  // namespace dynmatch
