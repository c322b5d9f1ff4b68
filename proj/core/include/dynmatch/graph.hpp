#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dynmatch {

using VertexId = int;

// Sorted vector of vertex ids with a set-like interface.  Lookups are binary
// searches and mutations shift the tail, but copies are flat memcpy-style
// moves — the structures here are snapshotted far more often than they are
// mutated, so this is the right trade.
class VertexSet {
public:
    using const_iterator = std::vector<VertexId>::const_iterator;

    const_iterator begin() const { return data_.begin(); }
    const_iterator end() const { return data_.end(); }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    void clear() { data_.clear(); }

    size_t count(VertexId v) const {
        return std::binary_search(data_.begin(), data_.end(), v) ? 1 : 0;
    }

    void insert(VertexId v) {
        auto it = std::lower_bound(data_.begin(), data_.end(), v);
        if (it == data_.end() || *it != v) data_.insert(it, v);
    }

    size_t erase(VertexId v) {
        auto it = std::lower_bound(data_.begin(), data_.end(), v);
        if (it == data_.end() || *it != v) return 0;
        data_.erase(it);
        return 1;
    }

    const_iterator erase(const_iterator it) { return data_.erase(it); }

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<VertexId> data_;
};

// Tally of elementary operations (adjacency probes, scan reads, partner-map
// lookups) used as the proxy for amortized update time in benchmarks.
struct OpCounter {
    std::uint64_t count = 0;
    void bump(std::uint64_t k = 1) { count += k; }
};

struct UpdateEvent {
    enum Kind { Insert, Delete };
    Kind kind;
    VertexId u;
    VertexId v;

    bool operator==(const UpdateEvent&) const = default;
};

// Undirected simple graph on a fixed vertex set [0, n).  Adjacency sets are
// sorted, so neighbor iteration is ascending by vertex id (the canonical
// deterministic order used everywhere a procedure says "arbitrary" or
// "first").
class DynGraph {
public:
    DynGraph() = default;

    explicit DynGraph(int n) : n_(n), adj_(static_cast<size_t>(n)) {
        if (n < 1) throw std::invalid_argument("DynGraph: n must be >= 1");
    }

    int num_vertices() const { return n_; }
    long long num_edges() const { return m_; }

    void check_vertex(VertexId v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("DynGraph: vertex id out of range");
    }

    bool has_edge(VertexId u, VertexId v) const {
        check_vertex(u);
        check_vertex(v);
        if (ops_) ops_->bump();
        return adj_[u].count(v) > 0;
    }

    void insert_edge(VertexId u, VertexId v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("DynGraph: self-loop rejected");
        if (adj_[u].count(v)) throw std::invalid_argument("DynGraph: duplicate edge rejected");
        adj_[u].insert(v);
        adj_[v].insert(u);
        ++m_;
        if (ops_) ops_->bump();
    }

    void delete_edge(VertexId u, VertexId v) {
        check_vertex(u);
        check_vertex(v);
        if (!adj_[u].count(v)) throw std::invalid_argument("DynGraph: deleting absent edge");
        adj_[u].erase(v);
        adj_[v].erase(u);
        --m_;
        if (ops_) ops_->bump();
    }

    const VertexSet& neighbors(VertexId v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(VertexId v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v].size());
    }

    // All edges as (u, v) pairs with u < v, in lexicographically ascending
    // order: the canonical edge scan order.
    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(static_cast<size_t>(m_));
        for (VertexId u = 0; u < n_; ++u)
            for (VertexId v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const DynGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    void set_op_counter(OpCounter* c) { ops_ = c; }
    OpCounter* op_counter() const { return ops_; }

private:
    int n_ = 0;
    long long m_ = 0;
    std::vector<VertexSet> adj_;
    OpCounter* ops_ = nullptr;
};

inline DynGraph new_graph(int n) { return DynGraph(n); }

// Canonical undirected edge key.
inline std::pair<VertexId, VertexId> edge_key(VertexId u, VertexId v) {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

}  // namespace dynmatch
