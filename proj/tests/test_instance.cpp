#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fsp/consistency.hpp"
#include "fsp/instance.hpp"
#include "fsp/rng.hpp"
#include "support.hpp"

using namespace fsp;

TEST_CASE("rng matches reference xoshiro256** values") {
    std::uint64_t x = 0;
    CHECK(Rng::splitmix64(x) == 0xe220a8397b1dcdafULL);
    Rng a(0);
    CHECK(a.next() == 0x99ec5f36cb75f2b4ULL);
    CHECK(a.next() == 0xbf6e1f784956452aULL);
    CHECK(a.next() == 0x1a5f849d4933e6e0ULL);
    Rng b(12345);
    CHECK(b.next() == 0xbe6a36374160d49bULL);
    CHECK(b.next() == 0x214aaa0637a688c6ULL);
}

TEST_CASE("bounded draws stay in range") {
    Rng r(9);
    std::set<std::int64_t> seen;
    for (int k = 0; k < 2000; ++k) {
        auto v = r.between(-2, 3);
        CHECK(v >= -2);
        CHECK(v <= 3);
        seen.insert(v);
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("pair index is colexicographic and invertible") {
    CHECK(pair_index(1, 2) == 0);
    CHECK(pair_index(1, 3) == 1);
    CHECK(pair_index(2, 3) == 2);
    CHECK(pair_index(1, 4) == 3);
    std::int64_t t = 0;
    for (int j = 2; j <= 60; ++j)
        for (int i = 1; i < j; ++i, ++t) {
            CHECK(pair_index(i, j) == t);
            CHECK(pair_from_index(t) == std::pair<int, int>{i, j});
        }
}

TEST_CASE("sampling without replacement") {
    Rng r(3);
    auto s = sample_without_replacement(r, 20, 20);
    CHECK(std::set<std::int64_t>(s.begin(), s.end()).size() == 20);
}

TEST_CASE("generated catalogues respect the spec") {
    CatalogueSpec spec{12, 30, {PairType::Before, PairType::After, PairType::Mutex}};
    auto cat = gen_catalogue(spec, 11);
    CHECK(cat->n_features == 12);
    std::set<std::pair<int, int>> pairs;
    for (const auto& p : cat->hard) pairs.insert({std::min(p.before, p.after), std::max(p.before, p.after)});
    CHECK(pairs.size() == 30);
    auto again = gen_catalogue(spec, 11);
    CHECK(again->hard == cat->hard);
    CHECK_FALSE(gen_catalogue(spec, 12)->hard == cat->hard);

    auto before_only = gen_catalogue({10, 20, {PairType::Before}}, 1);
    for (const auto& p : before_only->hard) CHECK(p.before < p.after);
    CHECK_THROWS_AS(gen_catalogue({4, 7, {PairType::Before}}, 1), Error);
}

TEST_CASE("generated subscriptions respect the spec") {
    auto cat = gen_catalogue({20, 40, {PairType::Before, PairType::After}}, 5);
    auto sub = gen_subscription(cat, {8, 6, 4}, 6);
    CHECK(sub.size() == 8);
    CHECK(sub.user().size() == 6);
    for (const auto& [f, w] : sub.feature_weights()) {
        CHECK(w >= 1);
        CHECK(w <= 4);
    }
    for (const auto& p : sub.user()) CHECK_FALSE(sub.user().contains(p.reversed()));
    auto same = gen_subscription(cat, {8, 6, 4}, 6);
    CHECK(same.feature_weights() == sub.feature_weights());
    CHECK(same.prec_weights() == sub.prec_weights());
    CHECK_THROWS_AS(gen_subscription(cat, {4, 7, 1}, 1), Error);
}

TEST_CASE("fsp text round-trips") {
    auto sub = test::random_subscription(8, 10, 20, true, 6, 4, 4);
    auto inst = Instance::from(sub);
    auto text = write_fsp(inst);
    auto back = parse_fsp(text);
    CHECK(back.catalogue->hard == sub.catalogue().hard);
    CHECK(back.features == sub.feature_weights());
    CHECK(back.user == sub.prec_weights());
    CHECK(write_fsp(back) == text);
}

TEST_CASE("fsp parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_fsp(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("feature 1 1\n") == 1);
    CHECK(line_of("catalogue 3\nfeature 4 1\n") == 2);
    CHECK(line_of("catalogue 3\nfeature 1 1\nfeature 1 2\n") == 3);
    CHECK(line_of("catalogue 3\n# comment\nhard 1 2\nhard 1 2\n") == 4);
    CHECK(line_of("catalogue 3\nfeature 1 0\n") == 2);
    CHECK(line_of("catalogue 3\nbogus\n") == 2);
    CHECK(line_of("catalogue 3\nfeature 1 x\n") == 2);
    CHECK(line_of("catalogue 3\nhard 2 2\n") == 2);
    CHECK(line_of("catalogue 3\nsource 1\n") != -1);
    CHECK(line_of("catalogue 3\nfeature 1 1\nuprec 1 2 1\n") != -1);
    CHECK(line_of("catalogue 3\nfeature 1 1\n") == -1);
}

TEST_CASE("two-region instances") {
    auto inst = parse_fsp(
        "catalogue 4\nhard 1 2\nhard 3 4\n"
        "feature 1 1\nfeature 2 1\nfeature 3 1\nfeature 4 1\n"
        "source 1 2 3\ntarget 2 3 4\n");
    auto bi = inst.bi_region();
    auto expect = test::table1_instance();
    CHECK(bi.source.features == expect.source.features);
    CHECK(bi.target.features == expect.target.features);
    CHECK(bi.source.hard == expect.source.hard);
    CHECK(bi.target.hard == expect.target.hard);
}

TEST_CASE("relaxation text round-trips") {
    auto sub = test::three_cycle_instance();
    auto r = make_relaxation(sub, {1, 2, 3}, {{1, 2}, {2, 3}});
    auto back = parse_relaxation(write_relaxation(r));
    CHECK(back == r);
    CHECK_THROWS_AS(parse_relaxation("value 3\nfeature\n"), Error);
}
