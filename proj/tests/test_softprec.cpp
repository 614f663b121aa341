#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fsp/consistency.hpp"
#include "fsp/oracle.hpp"
#include "fsp/softprec.hpp"
#include "support.hpp"

using namespace fsp;

TEST_CASE("initial state copies the hard precedences") {
    auto sub = Subscription::make(3, {1, 2, 3}, {{1, 2}}, {{{2, 3}, 1}});
    SoftprecModel m(sub);
    auto s = m.initial_state();
    CHECK(s.order.size() == 3);
    CHECK(s.order.at(0, 0) == Tri::Out);
    CHECK(s.ub == sub.total_weight());
    CHECK(m.num_booleans() == 4);
}

TEST_CASE("mutex pair becomes an incompatibility edge and lowers the bound") {
    auto sub = Subscription::make(2, {1, 2}, {{1, 2}, {2, 1}}, {}, {{1, 3}, {2, 5}});
    SoftprecModel m(sub);
    auto s = m.initial_state();
    REQUIRE(m.propagate(s));
    REQUIRE(s.incompatible.edges.size() == 1);
    CHECK(s.incompatible.edges[0] == std::pair<int, int>{0, 1});
    CHECK(m.upper_bound(s) == 5);
}

TEST_CASE("including one side of a mutex excludes the other") {
    auto sub = Subscription::make(2, {1, 2}, {{1, 2}, {2, 1}});
    SoftprecModel m(sub);
    auto s = m.initial_state();
    m.assign(s, 0, true);
    REQUIRE(softprec_propagate(s, sub));
    CHECK(s.bf[1] == Tri::Out);
    auto t = m.initial_state();
    t.bf[0] = Tri::In;
    t.bf[1] = Tri::In;
    CHECK_FALSE(softprec_propagate(t, sub));
}

TEST_CASE("a fully kept three-cycle fails") {
    auto sub = test::three_cycle_instance();
    SoftprecModel m(sub);
    auto s = m.initial_state();
    for (int b = 0; b < m.num_booleans(); ++b) m.assign(s, b, true);
    CHECK_FALSE(m.propagate(s));
}

TEST_CASE("two kept cycle edges force the third out") {
    auto sub = test::three_cycle_instance();
    SoftprecModel m(sub);
    auto s = m.initial_state();
    for (int f = 0; f < 3; ++f) m.assign(s, f, true);
    m.assign(s, 3, true);  // 1<2
    m.assign(s, 4, true);  // 2<3
    REQUIRE(m.propagate(s));
    CHECK(m.boolean(s, 5) == Tri::Out);
    CHECK(s.order.at(0, 2) == Tri::In);  // transitivity
}

TEST_CASE("value bound forces the heavy feature in") {
    auto sub = Subscription::make(2, {1, 2}, {{1, 2}, {2, 1}}, {}, {{1, 3}, {2, 5}});
    SoftprecModel m(sub);
    auto s = m.initial_state();
    s.lb = 5;
    REQUIRE(m.propagate(s));
    CHECK(s.bf[1] == Tri::In);
    CHECK(s.bf[0] == Tri::Out);
}

TEST_CASE("the bound never drops below an achievable completion") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto sub = test::random_subscription(seed + 300, 9, 18, true, 6, 4, 4);
        auto best = brute_force_optimal_serial(sub).value;
        SoftprecModel m(sub);
        auto s = m.initial_state();
        s.lb = best;
        CAPTURE(seed);
        REQUIRE(m.propagate(s));
        CHECK(m.upper_bound(s) >= best);
        auto t = m.initial_state();
        t.lb = best + 1;
        // a root that survives an unreachable bound must still report it
        if (m.propagate(t)) CHECK(m.upper_bound(t) >= best + 1);
    }
}

TEST_CASE("softprec search matches the exhaustive optimum") {
    SolverConfig c;
    c.softprec = true;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto sub = test::random_subscription(seed + 900, 10, 22, seed % 2 == 1, 7, 5, 4);
        CAPTURE(seed);
        auto r = solve(sub, c);
        CHECK(r.completed);
        CHECK(r.relaxation.value == brute_force_optimal_serial(sub).value);
        CHECK(std::holds_alternative<VerifyOk>(verify_relaxation(sub, r.relaxation)));
    }
}
