#include "dynmatch/coloring.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dynmatch {

namespace {

// Working state for one coloring run.  at[v][c] is the partner of v along its
// color-c edge, or -1.  Colors are 1-based; index 0 is unused.
struct Palette {
    int num_colors;
    std::vector<std::vector<VertexId>> at;
    // M-adjacency (sorted ascending) used for fan extension, and the color of
    // each incident edge aligned with it (0 = uncolored), so edge_color is a
    // binary search instead of a scan over the whole palette.
    std::vector<std::vector<VertexId>> madj;
    std::vector<std::vector<int>> col;

    Palette(int n, int num_colors_, const EdgeList& edges)
        : num_colors(num_colors_),
          at(static_cast<size_t>(n), std::vector<VertexId>(static_cast<size_t>(num_colors_) + 1, -1)),
          madj(static_cast<size_t>(n)),
          col(static_cast<size_t>(n)) {
        for (auto [u, v] : edges) {
            madj[u].push_back(v);
            madj[v].push_back(u);
        }
        for (auto& a : madj) std::sort(a.begin(), a.end());
        for (size_t v = 0; v < madj.size(); ++v) col[v].assign(madj[v].size(), 0);
    }

    bool is_free(VertexId v, int c) const { return at[v][c] == -1; }

    int free_color(VertexId v) const {
        // v has deg(v) incident edges, so one of the first deg(v)+1 colors
        // is always free; never scan the full palette.
        int limit = static_cast<int>(madj[v].size()) + 1;
        for (int c = 1; c <= limit; ++c)
            if (at[v][c] == -1) return c;
        throw std::logic_error("color_edges: no free color (impossible under Delta+1)");
    }

    size_t slot(VertexId u, VertexId v) const {
        auto it = std::lower_bound(madj[u].begin(), madj[u].end(), v);
        assert(it != madj[u].end() && *it == v);
        return static_cast<size_t>(it - madj[u].begin());
    }

    int edge_color(VertexId u, VertexId v) const { return col[u][slot(u, v)]; }

    void set_color(VertexId u, VertexId v, int c) {
        at[u][c] = v;
        at[v][c] = u;
        col[u][slot(u, v)] = c;
        col[v][slot(v, u)] = c;
    }

    void clear_color(VertexId u, VertexId v, int c) {
        assert(at[u][c] == v && at[v][c] == u);
        at[u][c] = -1;
        at[v][c] = -1;
        col[u][slot(u, v)] = 0;
        col[v][slot(v, u)] = 0;
    }

    // Maximal fan of u starting at f0 = v: each next vertex w is an
    // M-neighbor of u whose edge (u, w) is colored with a color free at the
    // current last fan vertex; the smallest eligible id extends the fan.
    std::vector<VertexId> maximal_fan(VertexId u, VertexId v) const {
        std::vector<VertexId> fan{v};
        std::vector<char> in_fan(at.size(), 0);
        in_fan[v] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            VertexId last = fan.back();
            for (size_t i = 0; i < madj[u].size(); ++i) {
                VertexId w = madj[u][i];
                if (in_fan[w]) continue;
                int c = col[u][i];
                if (c != 0 && is_free(last, c)) {
                    fan.push_back(w);
                    in_fan[w] = 1;
                    grew = true;
                    break;
                }
            }
        }
        return fan;
    }

    // Swap colors c and d along the maximal cd-path starting at u.  c is free
    // at u, so the path leaves u along its d-edge (if any); the component of
    // u in the union of the c- and d-matchings is a simple path.
    void invert_cd_path(VertexId u, int c, int d) {
        std::vector<VertexId> path{u};
        int col = d;
        VertexId cur = at[u][d];
        while (cur != -1) {
            path.push_back(cur);
            col = (col == d) ? c : d;
            cur = at[cur][col];
        }
        for (size_t i = 0; i + 1 < path.size(); ++i)
            clear_color(path[i], path[i + 1], (i % 2 == 0) ? d : c);
        for (size_t i = 0; i + 1 < path.size(); ++i)
            set_color(path[i], path[i + 1], (i % 2 == 0) ? c : d);
    }

    // True if fan[0..j] is a valid fan of u: (u, fan[0]) uncolored and each
    // (u, fan[i]) colored with a color free at fan[i-1].
    bool is_fan_prefix(VertexId u, const std::vector<VertexId>& fan, size_t j) const {
        if (edge_color(u, fan[0]) != 0) return false;
        for (size_t i = 1; i <= j; ++i) {
            int c = edge_color(u, fan[i]);
            if (c == 0 || !is_free(fan[i - 1], c)) return false;
        }
        return true;
    }
};

}  // namespace

EdgeColoring color_edges(const DynGraph& g, const EdgeList& edges) {
    std::vector<int> deg(static_cast<size_t>(g.num_vertices()), 0);
    EdgeList sorted;
    sorted.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (!g.neighbors(u).count(v)) throw std::invalid_argument("color_edges: edge not in graph");
        sorted.push_back(edge_key(u, v));
        ++deg[u];
        ++deg[v];
    }
    std::sort(sorted.begin(), sorted.end());
    int delta = 0;
    for (int d : deg) delta = std::max(delta, d);

    EdgeColoring out;
    out.num_colors = delta + 1;
    if (sorted.empty()) return out;

    Palette p(g.num_vertices(), delta + 1, sorted);

    for (auto [u, v] : sorted) {
        std::vector<VertexId> fan = p.maximal_fan(u, v);
        int c = p.free_color(u);
        int d = p.free_color(fan.back());
        if (c != d) p.invert_cd_path(u, c, d);
        // d is now free at u.  Rotate the shortest fan prefix whose last
        // vertex has d free and which is still a fan after the inversion.
        size_t j = fan.size();
        for (size_t i = 0; i < fan.size(); ++i) {
            if (p.is_free(fan[i], d) && p.is_fan_prefix(u, fan, i)) {
                j = i;
                break;
            }
        }
        if (j == fan.size()) throw std::logic_error("color_edges: fan rotation failed");
        for (size_t i = 0; i < j; ++i) {
            int ci = p.edge_color(u, fan[i + 1]);
            p.clear_color(u, fan[i + 1], ci);
            p.set_color(u, fan[i], ci);
        }
        p.set_color(u, fan[j], d);
    }

    for (auto [u, v] : sorted) {
        int c = p.edge_color(u, v);
        assert(c != 0);
        out.colors[{u, v}] = c;
    }
    return out;
}

std::vector<EdgeList> matchings_from_coloring(const EdgeColoring& coloring, int num_classes) {
    int used = 0;
    for (const auto& [e, c] : coloring.colors) used = std::max(used, c);
    if (num_classes < used)
        throw std::invalid_argument("matchings_from_coloring: fewer classes than colors used");
    std::vector<EdgeList> out(static_cast<size_t>(num_classes));
    for (const auto& [e, c] : coloring.colors) out[static_cast<size_t>(c) - 1].push_back(e);
    return out;
}

}  // namespace dynmatch
