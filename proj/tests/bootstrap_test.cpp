#include <doctest.h>

#include <cmath>

#include "dynmatch/bootstrap.hpp"
#include "dynmatch/rng.hpp"

using namespace dynmatch;

TEST_CASE("fresh state is empty and rejects t = 0") {
    BootState st = boot_new(8, 2);
    CHECK(boot_matching(st).empty());
    CHECK(check_bootstrap(st).empty());
    CHECK_THROWS_AS(boot_new(8, 0), std::invalid_argument);
}

TEST_CASE("first insertion is matched immediately") {
    BootState st = boot_new(8, 2);
    boot_insert(st, 0, 1);
    Matching m = boot_matching(st);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == std::make_pair(0, 1));
}

TEST_CASE("deletion triggers an endpoint rescan") {
    BootState st = boot_new(8, 2);
    boot_insert(st, 0, 1);
    boot_insert(st, 1, 2);
    boot_delete(st, 0, 1);
    Matching m = boot_matching(st);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == std::make_pair(1, 2));
    CHECK(check_matching(st.g, m).empty());
}

TEST_CASE("heavy insertion traffic turns a vertex bad") {
    BootState st = boot_new(8, 1);
    boot_insert(st, 0, 1);
    CHECK(st.bad_set.empty());  // one event: below the t+1 crossing
    boot_insert(st, 0, 2);
    CHECK(st.bad_set.count(0));  // second event reaches t+1 = 2
    boot_insert(st, 0, 3);
    CHECK(st.bad_set.count(0));  // bad is monotone
    CHECK(check_bootstrap(st).empty());
}

TEST_CASE("random streams: maximality, F-coherence, size and cost bounds") {
    Rng rng(67);
    for (int n : {16, 64}) {
        int t = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
        BootState st = boot_new(n, t);
        OpCounter ops;
        st.set_op_counter(&ops);
        double logn = std::log2(static_cast<double>(n));
        for (int i = 0; i < 5 * n; ++i) {
            std::uint64_t before = ops.count;
            bool ins = st.g.num_edges() == 0 || rng.below(3) != 0;
            if (ins) {
                VertexId u = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
                VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
                if (u == v || st.g.neighbors(u).count(v)) {
                    --i;
                    continue;
                }
                boot_insert(st, u, v);
            } else {
                auto es = st.g.edges();
                auto [u, v] = es[rng.below(es.size())];
                boot_delete(st, u, v);
            }
            CHECK(check_bootstrap(st).empty());
            CHECK(check_matching(st.g, boot_matching(st)).empty());
            CHECK(static_cast<long long>(st.bad_set.size()) * t <= 2 * st.total_insertions);
            // per-update elementary work stays within c * (t + |B|) * log n
            double budget = 40.0 * (t + static_cast<double>(st.bad_set.size()) + 1) * (logn + 1);
            CHECK(static_cast<double>(ops.count - before) <= budget);
        }
    }
}
