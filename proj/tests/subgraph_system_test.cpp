#include <doctest.h>

#include <algorithm>

#include "dynmatch/rng.hpp"
#include "dynmatch/subgraph_system.hpp"

using namespace dynmatch;

namespace {

DynGraph random_graph(int n, int pct, Rng& rng) {
    DynGraph g(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng.below(100) < static_cast<std::uint64_t>(pct)) g.insert_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("build_basic on a star honors the degree cap") {
    DynGraph g(6);
    for (VertexId v = 1; v <= 5; ++v) g.insert_edge(0, v);
    MultiLevelSystem sys = build_basic(g, 2);
    CHECK(validate_system(sys, g).empty());
    CHECK(sys.m_of(0) <= 2);
    CHECK(sys.k == 1);
}

TEST_CASE("build_basic is valid across densities and degree parameters") {
    Rng rng(17);
    for (int n : {20, 50, 120}) {
        for (int pct : {5, 30, 80}) {
            DynGraph g = random_graph(n, pct, rng);
            for (int z : {2, 4, 8}) {
                MultiLevelSystem sys = build_basic(g, z);
                auto viol = validate_system(sys, g);
                CAPTURE(n);
                CAPTURE(pct);
                CAPTURE(z);
                CHECK(viol.empty());
                for (VertexId u = 0; u < n; ++u)
                    if (sys.cls[u] == VClass::U)
                        CHECK(static_cast<int>(sys.lambda[u].size()) <= 3 * z);
            }
        }
    }
}

TEST_CASE("build_basic rejects out-of-range degree parameters") {
    DynGraph g(4);
    CHECK_THROWS_AS(build_basic(g, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_basic(g, 5), std::invalid_argument);
}

TEST_CASE("dump is deterministic for identical inputs") {
    Rng rng(29);
    DynGraph g = random_graph(30, 40, rng);
    MultiLevelSystem a = build_basic(g, 4);
    MultiLevelSystem b = build_basic(g, 4);
    CHECK(a == b);
    CHECK(a.dump() == b.dump());
}

TEST_CASE("refinement keeps only a z'/z fraction of the deferred deletions") {
    Rng rng(41);
    DynGraph g = random_graph(100, 40, rng);
    MultiLevelSystem sys = build_basic(g, 16);
    REQUIRE(validate_system(sys, g).empty());

    EdgeList e_del;
    for (auto e : g.edges())
        if (rng.below(10) == 0) e_del.push_back(e);
    EdgeList e_ins;
    while (e_ins.size() < 25) {
        VertexId a = static_cast<VertexId>(rng.below(100));
        VertexId b = static_cast<VertexId>(rng.below(100));
        if (a == b || g.neighbors(a).count(b)) continue;
        auto key = edge_key(a, b);
        if (std::find(e_ins.begin(), e_ins.end(), key) != e_ins.end()) continue;
        e_ins.push_back(key);
    }

    DynGraph before = g;
    RefinementResult res = refine(g, sys, e_del, e_ins, 8);
    CHECK(validate_system(sys, g).empty());
    CHECK(sys.k == 2);
    CHECK(sys.z == 8);
    CHECK(res.retained_deletions.size() * 16 <= e_del.size() * 8);

    // refined graph == (before ∪ e_ins) \ (e_del \ retained)
    DynGraph expect = before;
    for (auto [a, b] : e_ins) expect.insert_edge(a, b);
    EdgeList retained = res.retained_deletions;
    std::sort(retained.begin(), retained.end());
    for (auto e : e_del)
        if (!std::binary_search(retained.begin(), retained.end(), e))
            expect.delete_edge(e.first, e.second);
    CHECK(g == expect);
}

TEST_CASE("refinement rejects malformed requests") {
    Rng rng(43);
    DynGraph g = random_graph(40, 50, rng);
    MultiLevelSystem sys = build_basic(g, 8);
    EdgeList none;
    {
        auto s2 = sys;
        auto g2 = g;
        CHECK_THROWS_AS(refine(g2, s2, none, none, 6), std::invalid_argument);  // not a power of two
    }
    {
        auto s2 = sys;
        auto g2 = g;
        CHECK_THROWS_AS(refine(g2, s2, none, none, 8), std::invalid_argument);  // not smaller
    }
    {
        auto s2 = sys;
        auto g2 = g;
        EdgeList ins = {g.edges().front()};
        CHECK_THROWS_AS(refine(g2, s2, none, ins, 4), std::invalid_argument);  // already present
    }
}

TEST_CASE("chained refinement stays valid level after level") {
    Rng rng(57);
    DynGraph g = random_graph(120, 40, rng);
    MultiLevelSystem sys = build_basic(g, 16);
    int z = 16;
    while (z > 4) {
        EdgeList e_del;
        for (auto e : g.edges())
            if (rng.below(12) == 0) e_del.push_back(e);
        refine(g, sys, e_del, {}, z / 2);
        CHECK(validate_system(sys, g).empty());
        z /= 2;
        CHECK(sys.z == z);
    }
    CHECK(sys.k == 3);
}
