// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fsp/consistency.hpp"
#include "fsp/encoders.hpp"
#include "fsp/enumeration.hpp"
#include "fsp/instance.hpp"
#include "fsp/oracle.hpp"
#include "fsp/solver.hpp"
#include "support.hpp"

using namespace fsp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <typename T>
T median(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome oracle_equivalence() {
    struct Config {
        const char* name;
        SolverConfig cfg;
    };
    std::vector<Config> configs;
    for (auto l : {Level::AC, Level::RSAC, Level::SAC})
        for (auto h : {Heuristic::DomDeg, Heuristic::DomWdeg}) {
            SolverConfig c;
            c.level = l;
            c.heuristic = h;
            configs.push_back({"basic", c});
        }
    SolverConfig sp;
    sp.softprec = true;
    configs.push_back({"softprec", sp});

    const std::vector<CatalogueSpec> cats{{12, 20, {PairType::Before, PairType::After}},
                                          {12, 30, {PairType::Before, PairType::After, PairType::Mutex}}};
    int instances = 0, mismatches = 0;
    std::string first;
    for (std::size_t c = 0; c < cats.size(); ++c) {
        const std::uint64_t seed = 1000 + c;
        auto cat = gen_catalogue(cats[c], seed);
        for (int k = 0; k < 110; ++k) {
            const int fu = 4 + k % 5;
            const int pu = 2 + (k / 5) % 5;
            auto sub = gen_subscription(cat, {fu, pu, 4}, seed + k + 1);
            const Weight expect = brute_force_optimal(sub).value;
            ++instances;
            for (std::size_t q = 0; q < configs.size(); ++q) {
                auto r = solve(sub, configs[q].cfg);
                bool ok = r.completed && r.relaxation.value == expect &&
                          std::holds_alternative<VerifyOk>(verify_relaxation(sub, r.relaxation));
                if (!ok) {
                    ++mismatches;
                    if (first.empty())
                        first = fmt(" first: catalogue %zu instance %d config %zu got %lld want %lld", c, k, q,
                                    static_cast<long long>(r.relaxation.value), static_cast<long long>(expect));
                }
            }
        }
    }
    return {instances >= 200 && mismatches == 0,
            fmt("%d instances x %zu configurations, %d mismatches", instances, configs.size(), mismatches) +
                first};
}

Outcome table_one() {
    auto bi = test::table1_instance();
    auto ref = reformulate(bi);
    auto ext = linear_extensions(ref.subscription.hard(), ref.subscription.features());
    std::set<TotalOrder> want_ext{{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 3, 4, 2},
                                  {3, 1, 2, 4}, {3, 1, 4, 2}, {3, 4, 1, 2}};
    auto pairs = get_solutions(bi);
    std::set<OrderPair> want_pairs{{{1, 2, 3}, {4, 3, 2}}, {{1, 3, 2}, {4, 2, 3}}, {{1, 3, 2}, {2, 4, 3}},
                                   {{3, 1, 2}, {4, 2, 3}}, {{3, 1, 2}, {2, 4, 3}}};
    bool ok = ext.size() == 6 && std::set<TotalOrder>(ext.begin(), ext.end()) == want_ext &&
              pairs.size() == 5 && std::set<OrderPair>(pairs.begin(), pairs.end()) == want_pairs;
    return {ok, fmt("%zu extensions, %zu pairs", ext.size(), pairs.size())};
}

Outcome clause_census() {
    auto sub = test::three_mutex_instance();
    auto full = encode_atom(sub, false);
    auto red = encode_atom(sub, true);
    auto t1 = full.count(ClauseKind::Transitivity), a1 = full.count(ClauseKind::Asymmetry);
    auto t2 = red.count(ClauseKind::Transitivity), a2 = red.count(ClauseKind::Asymmetry);
    return {t1 == 120 && a1 == 15 && t2 == 0 && a2 == 3,
            fmt("unreduced %zu transitivity + %zu asymmetry, reduced %zu + %zu", t1, a1, t2, a2)};
}

Outcome unit_propagation() {
    auto sub = test::three_cycle_instance();
    auto assume = [](const WeightedClauseSet& w) {
        return std::vector<Lit>{w.prec_var.at({1, 2}), w.prec_var.at({2, 3}), w.prec_var.at({3, 1})};
    };
    auto atom = encode_atom(sub, false);
    auto binary = encode_symbol_binary(sub);
    bool atom_conflict = unit_propagate(atom, assume(atom)).conflict;
    bool binary_conflict = unit_propagate(binary, assume(binary)).conflict;
    return {atom_conflict && !binary_conflict,
            fmt("atom %s, binary %s", atom_conflict ? "conflict" : "fixpoint",
                binary_conflict ? "conflict" : "fixpoint")};
}

Outcome encoding_optima() {
    int instances = 0, failures = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        ++failures;
        if (first.empty()) first = " first: instance " + std::to_string(instances) + " " + what;
    };
    const std::vector<CatalogueSpec> cats{{10, 15, {PairType::Before, PairType::After}},
                                          {10, 20, {PairType::Before, PairType::After, PairType::Mutex}}};
    for (int k = 0; k < 50; ++k) {
        auto cat = gen_catalogue(cats[k % 2], 2000 + k % 2);
        const int fu = 3 + k % 4;                           // 3..6
        const int pu = std::min(k % 5, fu * (fu - 1) / 2);  // 0..4
        auto sub = gen_subscription(cat, {fu, pu, 4}, 2000 + k + 1);
        ++instances;
        auto best = brute_force_optimal(sub);
        const Weight loss = sub.total_weight() - best.value;
        if (test::maxsat_optimum(encode_atom(sub, false), sub) != loss) fail("wcnf-atom");
        if (test::maxsat_optimum(encode_atom(sub, true), sub) != loss) fail("wcnf-atom reduced");
        if (test::maxsat_optimum(encode_symbol_unary(sub), sub) != loss) fail("wcnf-unary");
        if (test::maxsat_optimum(encode_symbol_binary(sub), sub) != loss) fail("wcnf-binary");
        if (test::wcsp_optimum(encode_wcsp(sub)) != loss) fail("wcsp");
        auto mip = encode_mip(sub);
        if (!test::mip_point_feasible(mip, test::mip_point_of(sub, best))) fail("mip infeasible at optimum");
        if (test::mip_optimum(mip) != best.value) fail("mip admits a higher value");
    }
    return {failures == 0, fmt("%d instances, %d failures", instances, failures) + first};
}

Outcome consistency_rate() {
    const std::vector<CatalogueSpec> cats{{50, 250, {PairType::Before, PairType::After}},
                                          {50, 500, {PairType::Before, PairType::After, PairType::Mutex}},
                                          {50, 750, {PairType::Before, PairType::After}}};
    const std::vector<SubscriptionSpec> classes{{10, 5, 4},  {15, 20, 4}, {20, 10, 4},
                                                {25, 40, 4}, {30, 20, 4}, {35, 35, 4},
                                                {40, 40, 4}, {45, 90, 4}, {50, 5, 4}};
    int total = 0, consistent = 0, disagree = 0;
    for (std::size_t c = 0; c < cats.size(); ++c) {
        const std::uint64_t seed = 3000 + 100 * c;
        auto cat = gen_catalogue(cats[c], seed);
        for (std::size_t q = 0; q < classes.size(); ++q)
            for (int k = 0; k < 10; ++k) {
                auto sub = gen_subscription(cat, classes[q], seed + 10 * q + k + 1);
                ++total;
                bool ok = is_consistent(sub).consistent;
                consistent += ok;
                std::vector<std::pair<int, int>> edges;
                for (const auto& p : sub.hard()) edges.emplace_back(sub.index_of(p.before), sub.index_of(p.after));
                for (const auto& p : sub.user()) edges.emplace_back(sub.index_of(p.before), sub.index_of(p.after));
                disagree += ok != test::closure_acyclic(static_cast<int>(sub.size()), edges);
            }
    }
    return {total == 270 && consistent <= 10 && disagree == 0,
            fmt("%d of %d consistent, %d disagreements with the closure check", consistent, total, disagree)};
}

Outcome propagation_trend() {
    auto cat = gen_catalogue({50, 250, {PairType::Before, PairType::After}}, 4000);
    std::vector<std::uint64_t> nodes_ac, nodes_rsac, nodes_sac;
    double worst_rsac_ms = 0;
    int incomplete = 0, disagreements = 0;
    for (int k = 0; k < 30; ++k) {
        auto sub = gen_subscription(cat, {20, 10, 4}, 4000 + k + 1);
        std::vector<Weight> values;
        for (auto l : {Level::AC, Level::RSAC, Level::SAC}) {
            SolverConfig c;
            c.level = l;
            c.heuristic = Heuristic::DomWdeg;
            c.time_limit = std::chrono::milliseconds(60'000);
            auto r = solve(sub, c);
            incomplete += !r.completed;
            values.push_back(r.relaxation.value);
            (l == Level::AC ? nodes_ac : l == Level::RSAC ? nodes_rsac : nodes_sac).push_back(r.stats.nodes);
            if (l == Level::RSAC) worst_rsac_ms = std::max(worst_rsac_ms, r.stats.milliseconds);
        }
        disagreements += !(values[0] == values[1] && values[1] == values[2]);
    }
    auto ma = median(nodes_ac), mr = median(nodes_rsac), ms = median(nodes_sac);
    bool ok = ms <= mr && mr <= ma && incomplete == 0 && disagreements == 0 && worst_rsac_ms <= 60'000;
    return {ok, fmt("median nodes SAC %llu, RSAC %llu, AC %llu; slowest RSAC %.1f ms; %d incomplete, "
                    "%d disagreements",
                    static_cast<unsigned long long>(ms), static_cast<unsigned long long>(mr),
                    static_cast<unsigned long long>(ma), worst_rsac_ms, incomplete, disagreements)};
}

Outcome bi_region_property() {
    Rng rng(5000);
    int agree = 0, consistent = 0;
    for (int k = 0; k < 500; ++k) {
        auto bi = test::random_bi_region(rng, 8);
        bool reformulated = is_consistent(reformulate(bi).subscription).consistent;
        bool direct = test::bi_region_consistent_direct(bi);
        agree += reformulated == direct;
        consistent += direct;
    }
    return {agree == 500, fmt("%d of 500 agree (%d consistent)", agree, consistent)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"two-region example orders", table_one},
        {"clause census", clause_census},
        {"unit propagation on the three-cycle", unit_propagation},
        {"encoding optima", encoding_optima},
        {"consistency rate", consistency_rate},
        {"propagation strength trend", propagation_trend},
        {"two-region reformulation", bi_region_property},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
