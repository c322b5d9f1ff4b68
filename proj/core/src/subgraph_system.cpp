#include "dynmatch/subgraph_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dynmatch {

namespace {

char cls_char(VClass c) {
    switch (c) {
        case VClass::A: return 'A';
        case VClass::B: return 'B';
        default: return 'U';
    }
}

// Promotes v from B to A at the current top level; callers have already
// established that v has no U-partners left.
void promote_b_to_a(MultiLevelSystem& sys, VertexId v) {
    sys.cls[v] = VClass::A;
    sys.level[v] = sys.k;
    sys.zset[v].clear();
    sys.nz[v] = 0;
    // llist[v] is kept as-is: for a former B-vertex it already equals the
    // working list N(v) ∩ U, which is exactly L(v) at the top level.
}

// Canonicalizes, sorts and deduplicates an edge list.
EdgeList canonical_edges(const EdgeList& edges) {
    EdgeList out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) out.push_back(edge_key(u, v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_pow2(int x) { return x >= 1 && (x & (x - 1)) == 0; }

}  // namespace

EdgeList MultiLevelSystem::m_edges() const {
    EdgeList out;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v : madj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::string MultiLevelSystem::dump() const {
    std::ostringstream os;
    os << "n=" << n << " k=" << k << " z=" << z << "\n";
    for (VertexId v = 0; v < n; ++v)
        os << "v" << v << " cls=" << cls_char(cls[v]) << " level=" << level[v]
           << " m=" << m_of(v) << " nz=" << nz[v] << "\n";
    os << "M:";
    for (auto [u, v] : m_edges()) os << " (" << u << "," << v << ")";
    os << "\n";
    auto dump_sets = [&os](const char* name, const std::vector<VertexSet>& sets) {
        for (size_t v = 0; v < sets.size(); ++v) {
            if (sets[v].empty()) continue;
            os << name << "[" << v << "]:";
            for (VertexId w : sets[v]) os << " " << w;
            os << "\n";
        }
    };
    dump_sets("lambda", lambda);
    dump_sets("L", llist);
    dump_sets("Z", zset);
    for (int i = 1; i < k; ++i) {
        os << "N[" << i << "]:";
        for (VertexId w : frozen_n[i]) os << " " << w;
        os << "\n";
    }
    return os.str();
}

MultiLevelSystem build_basic(const DynGraph& g, int z) {
    const int n = g.num_vertices();
    if (z < 1 || z > n) throw std::invalid_argument("build_basic: z out of [1, n]");

    MultiLevelSystem sys;
    sys.n = n;
    sys.k = 1;
    sys.z = z;
    sys.cls.assign(static_cast<size_t>(n), VClass::U);
    sys.level.assign(static_cast<size_t>(n), 0);
    sys.madj.assign(static_cast<size_t>(n), {});
    sys.nz.assign(static_cast<size_t>(n), 0);
    sys.zset.assign(static_cast<size_t>(n), {});
    sys.frozen_n.assign(1, {});
    sys.lambda.assign(static_cast<size_t>(n), {});
    sys.llist.assign(static_cast<size_t>(n), {});

    // Step 1: greedy bounded-degree maximal edge set over the canonical
    // edge order.
    for (auto [u, v] : g.edges()) {
        if (sys.m_of(u) < z && sys.m_of(v) < z) {
            sys.madj[u].insert(v);
            sys.madj[v].insert(u);
        }
    }
    // Saturated vertices form S; U-U edges are dropped from M.
    std::vector<char> sat(static_cast<size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v) sat[v] = (sys.m_of(v) == z);
    for (VertexId u = 0; u < n; ++u) {
        if (sat[u]) continue;
        for (auto it = sys.madj[u].begin(); it != sys.madj[u].end();) {
            if (!sat[*it]) {
                sys.madj[*it].erase(u);
                it = sys.madj[u].erase(it);
            } else {
                ++it;
            }
        }
    }
    // A/B split of S; Z sets and counters for B.
    for (VertexId v = 0; v < n; ++v) {
        if (!sat[v]) continue;
        bool all_s = true;
        for (VertexId u : sys.madj[v])
            if (!sat[u]) all_s = false;
        if (all_s) {
            sys.cls[v] = VClass::A;
            sys.level[v] = 1;
        } else {
            sys.cls[v] = VClass::B;
            for (VertexId u : sys.madj[v])
                if (!sat[u]) sys.zset[v].insert(u);
            sys.nz[v] = static_cast<int>(sys.zset[v].size());
        }
    }

    // Step 2: repair U-vertices crowded by B-neighbors.
    for (VertexId u = 0; u < n; ++u) {
        if (sys.cls[u] != VClass::U) continue;
        int cntb = 0;
        for (VertexId v : g.neighbors(u))
            if (sys.cls[v] == VClass::B) ++cntb;
        if (cntb > z) proc_process_u(sys, g, u);
    }

    // Final lists.
    for (VertexId v = 0; v < n; ++v) {
        if (sys.cls[v] == VClass::U) {
            for (VertexId w : g.neighbors(v))
                if (sys.cls[w] != VClass::A) sys.lambda[v].insert(w);
        } else if (sys.cls[v] == VClass::A) {
            for (VertexId w : g.neighbors(v))
                if (sys.cls[w] == VClass::U) sys.llist[v].insert(w);
        }
    }
    return sys;
}

void proc_process_u(MultiLevelSystem& sys, const DynGraph& g, VertexId u) {
    const int z = sys.z;
    if (sys.cls[u] != VClass::U) throw std::invalid_argument("proc_process_u: u not in U");
    int cntb = 0;
    for (VertexId v : g.neighbors(u))
        if (sys.cls[v] == VClass::B) ++cntb;
    if (cntb <= z) throw std::invalid_argument("proc_process_u: u has at most z B-neighbors");

    const int r = z - sys.m_of(u);
    // r smallest-id B-neighbors not already M-partners of u.
    std::vector<VertexId> vs;
    for (VertexId v : g.neighbors(u)) {
        if (static_cast<int>(vs.size()) == r) break;
        if (sys.cls[v] == VClass::B && !sys.madj[u].count(v)) vs.push_back(v);
    }
    if (static_cast<int>(vs.size()) != r)
        throw std::logic_error("proc_process_u: fewer than r swap candidates");
    std::vector<VertexId> as;
    for (VertexId v : vs) {
        if (sys.zset[v].empty()) throw std::logic_error("proc_process_u: empty Z set in B");
        as.push_back(*sys.zset[v].begin());
    }
    for (int i = 0; i < r; ++i) {
        VertexId v = vs[static_cast<size_t>(i)], a = as[static_cast<size_t>(i)];
        sys.madj[v].insert(u);
        sys.madj[u].insert(v);
        sys.madj[v].erase(a);
        sys.madj[a].erase(v);
        sys.zset[v].erase(a);
    }
    // u joins S.
    bool all_s = true;
    for (VertexId v : sys.madj[u])
        if (sys.cls[v] == VClass::U) all_s = false;
    if (all_s) {
        sys.cls[u] = VClass::A;
        sys.level[u] = sys.k;
    } else {
        sys.cls[u] = VClass::B;
        sys.zset[u].clear();
        sys.nz[u] = 0;
    }
    // u is no longer a U-partner of its former B-partners.
    for (VertexId v : g.neighbors(u)) {
        if (sys.cls[v] == VClass::B && sys.zset[v].count(u)) {
            sys.zset[v].erase(u);
            if (--sys.nz[v] == 0) promote_b_to_a(sys, v);
        }
    }
    // Each swap removed one U-partner from v_i.
    for (VertexId v : vs) {
        if (sys.cls[v] != VClass::B) throw std::logic_error("proc_process_u: swap target left B");
        if (--sys.nz[v] == 0) promote_b_to_a(sys, v);
    }
}

void proc_promote(MultiLevelSystem& sys, const DynGraph&, VertexId u) {
    if (sys.cls[u] != VClass::U) throw std::invalid_argument("proc_promote: u not in U");
    if (sys.m_of(u) < sys.z - (sys.k - 1))
        throw std::invalid_argument("proc_promote: m(u) below promotion threshold");

    bool all_s = true;
    for (VertexId v : sys.madj[u])
        if (sys.cls[v] == VClass::U) all_s = false;
    if (all_s) {
        sys.cls[u] = VClass::A;
        sys.level[u] = sys.k;
    } else {
        sys.cls[u] = VClass::B;
        sys.zset[u].clear();
        for (VertexId v : sys.madj[u])
            if (sys.cls[v] == VClass::U) sys.zset[u].insert(v);
        sys.nz[u] = static_cast<int>(sys.zset[u].size());
    }
    // u's own working list: its U-neighbors, read off the extended lambda.
    sys.llist[u].clear();
    for (VertexId w : sys.lambda[u])
        if (sys.cls[w] == VClass::U) sys.llist[u].insert(w);
    // Remove u from top-level L lists; update Z/n of its B-partners.
    for (VertexId v : sys.lambda[u]) {
        bool top = (sys.cls[v] == VClass::B) || (sys.cls[v] == VClass::A && sys.level[v] == sys.k);
        if (!top || !sys.llist[v].count(u)) continue;
        sys.llist[v].erase(u);
        if (sys.cls[v] == VClass::B && sys.madj[v].count(u)) {
            sys.zset[v].erase(u);
            if (--sys.nz[v] == 0) promote_b_to_a(sys, v);
        }
    }
    sys.lambda[u].clear();
}

void proc_process(MultiLevelSystem& sys, const DynGraph& g, VertexId u) {
    if (sys.cls[u] != VClass::U) throw std::invalid_argument("proc_process: u not in U");
    const int z = sys.z;
    const int thr = z - (sys.k - 1);
    const int r = z - sys.m_of(u);

    std::vector<VertexId> uu;
    for (VertexId w : sys.lambda[u])
        if (sys.cls[w] == VClass::U) uu.push_back(w);
    if (static_cast<int>(uu.size()) >= r) {
        std::vector<VertexId> chosen(uu.begin(), uu.begin() + std::max(r, 0));
        for (VertexId w : chosen) {
            sys.madj[u].insert(w);
            sys.madj[w].insert(u);
        }
        proc_promote(sys, g, u);
        for (VertexId w : chosen)
            if (sys.cls[w] == VClass::U && sys.m_of(w) >= thr) proc_promote(sys, g, w);
        return;
    }

    std::vector<VertexId> bb;
    for (VertexId v : sys.lambda[u])
        if (sys.cls[v] == VClass::B) bb.push_back(v);
    if (static_cast<int>(bb.size()) < z) return;  // no-op: u stays in U

    std::vector<VertexId> vs;
    for (VertexId v : bb) {
        if (static_cast<int>(vs.size()) == r) break;
        if (!sys.madj[u].count(v)) vs.push_back(v);
    }
    if (static_cast<int>(vs.size()) != r)
        throw std::logic_error("proc_process: fewer than r swap candidates");
    std::vector<VertexId> as;
    for (VertexId v : vs) {
        if (sys.zset[v].empty()) throw std::logic_error("proc_process: empty Z set in B");
        as.push_back(*sys.zset[v].begin());
    }
    for (int i = 0; i < r; ++i) {
        VertexId v = vs[static_cast<size_t>(i)], a = as[static_cast<size_t>(i)];
        sys.madj[v].insert(u);
        sys.madj[u].insert(v);
        sys.zset[v].insert(u);
        ++sys.nz[v];
        sys.madj[v].erase(a);
        sys.madj[a].erase(v);
        sys.zset[v].erase(a);
        --sys.nz[v];
    }
    proc_promote(sys, g, u);  // cleans u back out of the Z sets
}

RefinementResult refine(DynGraph& g, MultiLevelSystem& sys, const EdgeList& e_del,
                        const EdgeList& e_ins, int z_new) {
    const int n = sys.n;
    const int h = sys.k;
    if (!is_pow2(sys.z) || !is_pow2(z_new) || z_new < 2 || z_new >= sys.z)
        throw std::invalid_argument("refine: need powers of two with 2 <= z_new < z");
    if ((1 << (h + 1)) > n) throw std::invalid_argument("refine: depth exceeds log2(n)");

    const EdgeList del = canonical_edges(e_del);
    const EdgeList ins = canonical_edges(e_ins);
    for (auto [u, v] : del)
        if (!g.neighbors(u).count(v)) throw std::invalid_argument("refine: e_del edge not in graph");
    for (auto [u, v] : ins)
        if (g.neighbors(u).count(v)) throw std::invalid_argument("refine: e_ins edge already in graph");

    // --- Step 1: choose the least-damaged part of M, mutate the graph. ---
    const EdgeList m_all = sys.m_edges();
    EdgeColoring col = color_edges(g, m_all);
    std::vector<EdgeList> classes = matchings_from_coloring(col, sys.z + 1);
    std::set<Edge> del_set(del.begin(), del.end());
    std::vector<std::pair<int, int>> order;  // (damage, original index)
    for (int i = 0; i <= sys.z; ++i) {
        int w = 0;
        for (const Edge& e : classes[static_cast<size_t>(i)])
            if (del_set.count(e)) ++w;
        order.emplace_back(w, i);
    }
    std::stable_sort(order.begin(), order.end());
    std::set<Edge> mhat;
    for (int j = 0; j < z_new; ++j)
        for (const Edge& e : classes[static_cast<size_t>(order[static_cast<size_t>(j)].second)])
            mhat.insert(e);

    RefinementResult res;
    EdgeList removed;
    for (const Edge& e : del)
        (mhat.count(e) ? res.retained_deletions : removed).push_back(e);
    for (auto [u, v] : removed) g.delete_edge(u, v);
    for (auto [u, v] : ins) g.insert_edge(u, v);

    // Trim M down to the retained classes.
    for (auto [u, v] : m_all) {
        if (!mhat.count({u, v})) {
            sys.madj[u].erase(v);
            sys.madj[v].erase(u);
        }
    }

    // Freeze the old B set as the new next-to-top N, then split it.
    sys.frozen_n.resize(static_cast<size_t>(h) + 1);
    for (VertexId v = 0; v < n; ++v)
        if (sys.cls[v] == VClass::B) sys.frozen_n[h].insert(v);
    sys.k = h + 1;
    sys.z = z_new;
    for (VertexId v : sys.frozen_n[h]) {
        bool all_s = true;
        for (VertexId u : sys.madj[v])
            if (sys.cls[u] == VClass::U) all_s = false;
        if (all_s) {
            sys.cls[v] = VClass::A;
            sys.level[v] = sys.k;
            sys.zset[v].clear();
            sys.nz[v] = 0;
        } else {
            sys.zset[v].clear();
            for (VertexId u : sys.madj[v])
                if (sys.cls[u] == VClass::U) sys.zset[v].insert(u);
            sys.nz[v] = static_cast<int>(sys.zset[v].size());
        }
    }

    // Build working L lists for the split vertices from the (stale) lambda
    // lists, which at this point hold N_G(u) ∩ (A_k ∪ B ∪ U).
    for (VertexId v = 0; v < n; ++v)
        if (sys.cls[v] == VClass::B || (sys.cls[v] == VClass::A && sys.level[v] == sys.k))
            sys.llist[v].clear();
    for (VertexId u = 0; u < n; ++u) {
        if (sys.cls[u] != VClass::U) continue;
        for (VertexId v : sys.lambda[u])
            if (sys.cls[v] == VClass::B || (sys.cls[v] == VClass::A && sys.level[v] == sys.k))
                sys.llist[v].insert(u);
    }
    // Patch every list against the performed deletions and insertions.
    auto patch_remove = [&sys](VertexId x, VertexId y) {
        if (sys.cls[x] == VClass::U) {
            sys.lambda[x].erase(y);
        } else if (sys.cls[x] == VClass::A && sys.level[x] < sys.k) {
            sys.llist[x].erase(y);
        } else {
            sys.llist[x].erase(y);  // top-level A or B working list
        }
    };
    for (auto [x, y] : removed) {
        patch_remove(x, y);
        patch_remove(y, x);
    }
    auto patch_insert = [&sys](VertexId x, VertexId y) {
        if (sys.cls[x] == VClass::U) {
            if (!(sys.cls[y] == VClass::A && sys.level[y] < sys.k)) sys.lambda[x].insert(y);
        } else if (sys.cls[x] == VClass::A && sys.level[x] < sys.k) {
            if (sys.in_r(y, sys.level[x])) sys.llist[x].insert(y);
        } else {
            if (sys.cls[y] == VClass::U) sys.llist[x].insert(y);
        }
    };
    for (auto [x, y] : ins) {
        patch_insert(x, y);
        patch_insert(y, x);
    }

    // --- Step 2: promote heavy U-vertices, then repair the rest. ---
    const int thr = sys.z - (sys.k - 1);
    std::vector<VertexId> heavy;
    for (VertexId u = 0; u < n; ++u)
        if (sys.cls[u] == VClass::U && sys.m_of(u) >= thr) heavy.push_back(u);
    for (VertexId u : heavy) proc_promote(sys, g, u);
    for (VertexId u = 0; u < n; ++u)
        if (sys.cls[u] == VClass::U) proc_process(sys, g, u);

    // Strip top-level A members out of the remaining lambda lists, and drop
    // the working lists of B-vertices.
    for (VertexId u = 0; u < n; ++u) {
        if (sys.cls[u] == VClass::U) {
            for (auto it = sys.lambda[u].begin(); it != sys.lambda[u].end();)
                it = (sys.cls[*it] == VClass::A) ? sys.lambda[u].erase(it) : std::next(it);
        } else if (sys.cls[u] == VClass::B) {
            sys.llist[u].clear();
        }
    }
    return res;
}

std::vector<std::string> validate_system(const MultiLevelSystem& sys, const DynGraph& g) {
    std::vector<std::string> out;
    auto failf = [&out](auto&&... parts) {
        std::ostringstream o;
        (o << ... << parts);
        out.push_back(o.str());
    };

    const int n = sys.n;
    if (g.num_vertices() != n) {
        failf("shape: system n=", n, " vs graph n=", g.num_vertices());
        return out;
    }
    if (sys.k < 1 || sys.z < 1) failf("shape: bad k=", sys.k, " or z=", sys.z);
    if (static_cast<int>(sys.cls.size()) != n || static_cast<int>(sys.madj.size()) != n ||
        static_cast<int>(sys.lambda.size()) != n || static_cast<int>(sys.llist.size()) != n ||
        static_cast<int>(sys.zset.size()) != n || static_cast<int>(sys.nz.size()) != n ||
        static_cast<int>(sys.frozen_n.size()) != sys.k) {
        failf("shape: member vector sizes inconsistent");
        return out;
    }

    for (VertexId v = 0; v < n; ++v) {
        bool is_a = sys.cls[v] == VClass::A;
        if (is_a && (sys.level[v] < 1 || sys.level[v] > sys.k))
            failf("shape: A-vertex ", v, " has level ", sys.level[v]);
        if (!is_a && sys.level[v] != 0) failf("shape: non-A vertex ", v, " has nonzero level");
        if (sys.cls[v] != VClass::U && !sys.lambda[v].empty())
            failf("shape: non-U vertex ", v, " has nonempty lambda");
        if (!is_a && !sys.llist[v].empty()) failf("shape: non-A vertex ", v, " has nonempty L");
        if (sys.cls[v] != VClass::B && (sys.nz[v] != 0 || !sys.zset[v].empty()))
            failf("shape: non-B vertex ", v, " has Z/n residue");
    }

    // M: symmetric, subset of E(g).
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v : sys.madj[u]) {
            if (!sys.madj[v].count(u)) failf("M: asymmetric edge (", u, ",", v, ")");
            if (u < v && !g.neighbors(u).count(v)) failf("M: edge (", u, ",", v, ") not in graph");
            if (u < v && sys.cls[u] == VClass::U && sys.cls[v] == VClass::U)
                failf("P2-companion: M edge (", u, ",", v, ") has both endpoints in U");
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (sys.m_of(v) > sys.z) failf("P1: m(", v, ")=", sys.m_of(v), " exceeds z=", sys.z);
        if (sys.in_s(v) && sys.m_of(v) < sys.z - sys.k + 1)
            failf("P2: S-vertex ", v, " has m=", sys.m_of(v), " < z-k+1=", sys.z - sys.k + 1);
    }
    for (VertexId u = 0; u < n; ++u) {
        if (sys.cls[u] != VClass::U) continue;
        int cu = 0, cb = 0;
        for (VertexId w : g.neighbors(u)) {
            if (sys.cls[w] == VClass::U) ++cu;
            if (sys.cls[w] == VClass::B) ++cb;
        }
        if (cu > sys.z) failf("P3: U-vertex ", u, " has ", cu, " U-neighbors > z");
        if (cb > 2 * sys.z) failf("P4: U-vertex ", u, " has ", cb, " B-neighbors > 2z");
    }
    // P5: M-partners of A_i lie in N_i ∪ A^{<=i}.
    for (VertexId v = 0; v < n; ++v) {
        if (sys.cls[v] != VClass::A) continue;
        int i = sys.level[v];
        for (VertexId u : sys.madj[v]) {
            bool ok = sys.in_n(u, i) || (sys.cls[u] == VClass::A && sys.level[u] <= i);
            if (!ok) failf("P5: A_", i, " vertex ", v, " has M-partner ", u, " outside N_i ∪ A^{<=i}");
        }
    }
    // P6: N_i below level i; R-chain containment with R_k = U.
    for (int i = 1; i < sys.k; ++i) {
        for (VertexId v : sys.frozen_n[i]) {
            bool below = sys.cls[v] != VClass::A || sys.level[v] > i;
            bool not_u = sys.cls[v] != VClass::U;
            if (!(below && not_u)) failf("P6: N_", i, " member ", v, " not in A^{>=i+1} ∪ B");
        }
    }
    for (int i = 1; i < sys.k; ++i)
        for (VertexId v = 0; v < n; ++v)
            if (sys.in_r(v, i + 1) && !sys.in_r(v, i))
                failf("P6: R_", i + 1, " member ", v, " missing from R_", i);
    // Lambda coherence and length budget.
    for (VertexId u = 0; u < n; ++u) {
        if (sys.cls[u] != VClass::U) continue;
        VertexSet expect;
        for (VertexId w : g.neighbors(u))
            if (sys.cls[w] != VClass::A) expect.insert(w);
        if (expect != sys.lambda[u]) failf("lambda: list at U-vertex ", u, " incoherent");
        if (static_cast<int>(sys.lambda[u].size()) > 3 * sys.z)
            failf("lambda: list at ", u, " longer than 3z");
    }
    // L coherence.
    for (VertexId v = 0; v < n; ++v) {
        if (sys.cls[v] != VClass::A) continue;
        VertexSet expect;
        for (VertexId w : g.neighbors(v))
            if (sys.in_r(w, sys.level[v])) expect.insert(w);
        if (expect != sys.llist[v]) failf("L: list at A-vertex ", v, " incoherent");
    }
    // Z/n coherence; B-vertices keep at least one U-partner.
    for (VertexId v = 0; v < n; ++v) {
        if (sys.cls[v] != VClass::B) continue;
        VertexSet expect;
        for (VertexId u : sys.madj[v])
            if (sys.cls[u] == VClass::U) expect.insert(u);
        if (expect != sys.zset[v]) failf("Z: set at B-vertex ", v, " incoherent");
        if (sys.nz[v] != static_cast<int>(expect.size())) failf("n: counter at B-vertex ", v, " incoherent");
        if (expect.empty()) failf("B: vertex ", v, " has no U-partner via M");
    }
    return out;
}

}  // namespace dynmatch
