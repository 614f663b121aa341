#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>

#include "fsp/consistency.hpp"
#include "fsp/instance.hpp"

namespace fsp::test {

BiRegionSubscription table1_instance() {
    auto cat = std::make_shared<BiRegionCatalogue>();
    cat->source_features = {1, 2, 3};
    cat->target_features = {2, 3, 4};
    cat->source_hard = {{1, 2}};
    cat->target_hard = {{4, 3}};
    return BiRegionSubscription::create(cat, {1, 2, 3}, {2, 3, 4}, {}, {});
}

Subscription three_mutex_instance() {
    return Subscription::make(6, {1, 2, 3, 4, 5, 6}, {{1, 2}, {2, 1}, {3, 4}, {4, 3}, {5, 6}, {6, 5}});
}

Subscription three_cycle_instance() {
    return Subscription::make(3, {1, 2, 3}, {}, {{{1, 2}, 1}, {{2, 3}, 1}, {{3, 1}, 1}});
}

Subscription two_mutex_instance() {
    return Subscription::make(4, {1, 2, 3, 4}, {{1, 2}, {2, 1}, {3, 4}, {4, 3}});
}

Subscription random_subscription(std::uint64_t seed, int fc, int bc, bool mutexes, int fu, int pu,
                                 Weight w) {
    CatalogueSpec cs{fc, bc, {PairType::Before, PairType::After}};
    if (mutexes) cs.types.push_back(PairType::Mutex);
    auto cat = gen_catalogue(cs, seed * 7919 + 17);
    return gen_subscription(cat, {fu, pu, w}, seed * 104729 + 3);
}

BiRegionSubscription random_bi_region(Rng& rng, int max_region) {
    while (true) {
        std::set<FeatureId> fs, ft;
        for (FeatureId f = 1; f <= 8; ++f) {
            switch (rng.below(4)) {
                case 0: fs.insert(f); break;
                case 1: ft.insert(f); break;
                case 2: fs.insert(f); ft.insert(f); break;
                default: break;
            }
        }
        if (static_cast<int>(fs.size()) > max_region || static_cast<int>(ft.size()) > max_region)
            continue;
        auto cat = std::make_shared<BiRegionCatalogue>();
        cat->source_features = fs;
        cat->target_features = ft;
        auto random_pairs = [&](const std::set<FeatureId>& ids, std::uint64_t per_mille) {
            PrecSet out;
            for (FeatureId i : ids)
                for (FeatureId j : ids)
                    if (i != j && rng.below(1000) < per_mille) out.insert(i, j);
            return out;
        };
        cat->source_hard = random_pairs(fs, 120);
        cat->target_hard = random_pairs(ft, 120);
        auto user = [&](const std::set<FeatureId>& ids) {
            std::map<Precedence, Weight> out;
            for (const auto& p : random_pairs(ids, 60)) out[p] = rng.between(1, 3);
            return out;
        };
        std::map<FeatureId, Weight> fw;
        for (FeatureId f : fs) fw[f] = rng.between(1, 3);
        for (FeatureId f : ft) fw[f] = rng.between(1, 3);
        return BiRegionSubscription::create(cat, fs, ft, user(fs), user(ft), fw);
    }
}

bool closure_acyclic(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (auto [a, b] : edges) r[a][b] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (r[i][k])
                for (int j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = 1;
    for (int i = 0; i < n; ++i)
        if (r[i][i]) return false;
    return true;
}

int min_feedback_vertex_set(const Subscription& sub) {
    const int m = static_cast<int>(sub.size());
    int best = m;
    for (std::uint32_t removed = 0; removed < (1u << m); ++removed) {
        int size = __builtin_popcount(removed);
        if (size >= best) continue;
        std::vector<std::pair<int, int>> edges;
        for (const auto& p : sub.hard()) {
            int a = sub.index_of(p.before), b = sub.index_of(p.after);
            if (!(removed >> a & 1u) && !(removed >> b & 1u)) edges.emplace_back(a, b);
        }
        if (closure_acyclic(m, edges)) best = size;
    }
    return best;
}

namespace {

std::vector<TotalOrder> valid_orders(const Region& r) {
    std::vector<FeatureId> perm(r.features.begin(), r.features.end());
    std::vector<TotalOrder> out;
    do {
        std::map<FeatureId, int> pos;
        for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = static_cast<int>(k);
        bool ok = true;
        for (const auto& p : r.hard) ok = ok && pos[p.before] < pos[p.after];
        for (const auto& [p, w] : r.user) ok = ok && pos[p.before] < pos[p.after];
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

bool bi_region_consistent_direct(const BiRegionSubscription& bi) {
    auto rev = bi.reversible();
    std::set<std::vector<FeatureId>> from_source;
    for (const auto& s : valid_orders(bi.source)) {
        std::vector<FeatureId> seq;
        for (FeatureId f : s)
            if (rev.count(f)) seq.push_back(f);
        from_source.insert(seq);
    }
    for (const auto& t : valid_orders(bi.target)) {
        std::vector<FeatureId> seq;
        for (FeatureId f : t)
            if (rev.count(f)) seq.push_back(f);
        std::reverse(seq.begin(), seq.end());
        if (from_source.count(seq)) return true;
    }
    return false;
}

bool dpll(const WeightedClauseSet& cnf, std::vector<std::int8_t> value) {
    auto val = [&](Lit l) -> int {
        int v = value[static_cast<std::size_t>(std::abs(l))];
        return v < 0 ? -1 : (l > 0 ? v : 1 - v);
    };
    // unit propagation
    while (true) {
        bool changed = false;
        for (const auto& c : cnf.clauses) {
            if (!c.hard()) continue;
            int free = 0;
            Lit last = 0;
            bool sat = false;
            for (Lit l : c.lits) {
                int v = val(l);
                if (v == 1) { sat = true; break; }
                if (v < 0) { ++free; last = l; }
            }
            if (sat) continue;
            if (free == 0) return false;
            if (free == 1) {
                value[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : 0;
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (const auto& c : cnf.clauses) {
        if (!c.hard()) continue;
        bool sat = false;
        Lit pick = 0;
        for (Lit l : c.lits) {
            int v = val(l);
            if (v == 1) { sat = true; break; }
            if (v < 0 && !pick) pick = l;
        }
        if (sat) continue;
        const auto var = static_cast<std::size_t>(std::abs(pick));
        for (std::int8_t b : {std::int8_t{1}, std::int8_t{0}}) {
            auto next = value;
            next[var] = b;
            if (dpll(cnf, next)) return true;
        }
        return false;
    }
    return true;
}

std::optional<Weight> maxsat_optimum(const WeightedClauseSet& cnf, const Subscription& sub) {
    std::vector<int> problem;
    for (const auto& [f, v] : cnf.feature_var) problem.push_back(v);
    for (const auto& p : sub.user()) problem.push_back(cnf.prec_var.at(p));
    std::optional<Weight> best;
    for (std::uint32_t mask = 0; mask < (1u << problem.size()); ++mask) {
        std::vector<std::int8_t> value(static_cast<std::size_t>(cnf.num_vars) + 1, -1);
        for (std::size_t k = 0; k < problem.size(); ++k) value[problem[k]] = (mask >> k) & 1u;
        Weight soft = 0;
        for (const auto& c : cnf.clauses) {
            if (c.hard()) continue;
            bool sat = false;
            for (Lit l : c.lits) {
                int v = value[static_cast<std::size_t>(std::abs(l))];
                if (v < 0) throw Error("maxsat_optimum: soft clause over a non-problem variable");
                sat = sat || (l > 0 ? v == 1 : v == 0);
            }
            if (!sat) soft += *c.weight;
        }
        if (best && soft >= *best) continue;
        if (dpll(cnf, value)) best = soft;
    }
    return best;
}

Weight wcsp_optimum(const WcspModel& m) {
    const std::size_t n = m.domains.size();
    std::vector<int> values(n, 0);
    Weight best = std::numeric_limits<Weight>::max();
    while (true) {
        best = std::min(best, m.cost(values));
        std::size_t k = 0;
        while (k < n && ++values[k] == m.domains[k]) values[k++] = 0;
        if (k == n) break;
    }
    return best;
}

std::optional<std::int64_t> pb_optimum(const PbModel& pb) {
    std::optional<std::int64_t> best;
    const auto n = static_cast<std::size_t>(pb.num_vars);
    if (n > 26) throw Error("pb_optimum: too many variables");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> a(n + 1, false);
        for (std::size_t v = 1; v <= n; ++v) a[v] = (mask >> (v - 1)) & 1u;
        auto c = pb.cost(a);
        if (c && (!best || *c < *best)) best = c;
    }
    return best;
}

namespace {

// Substitutes binaries into each row; returns false if some row without
// positions is violated. Difference rows go to `edges` as (from, to, w)
// meaning pos[to] <= pos[from] + w.
bool difference_system(const MipModel& mip, const std::map<std::string, int>& bin,
                       std::vector<std::tuple<int, int, std::int64_t>>& edges,
                       std::map<std::string, int>& index) {
    for (const auto& p : mip.positions) index.emplace(p, static_cast<int>(index.size()) + 1);
    for (const auto& row : mip.rows) {
        std::int64_t rhs = row.rhs;
        std::vector<std::pair<std::int64_t, int>> pos;
        for (const auto& t : row.terms) {
            if (auto it = bin.find(t.var); it != bin.end()) rhs -= t.coef * it->second;
            else pos.emplace_back(t.coef, index.at(t.var));
        }
        if (pos.empty()) {
            if (0 > rhs) return false;
        } else if (pos.size() == 2 && pos[0].first == 1 && pos[1].first == -1) {
            // pos_a - pos_b <= rhs
            edges.emplace_back(pos[1].second, pos[0].second, rhs);
        } else {
            throw Error("mip check: unexpected row shape " + row.name);
        }
    }
    return true;
}

}  // namespace

bool mip_feasible(const MipModel& mip, const std::map<std::string, int>& binaries) {
    std::vector<std::tuple<int, int, std::int64_t>> edges;
    std::map<std::string, int> index;
    if (!difference_system(mip, binaries, edges, index)) return false;
    const int nodes = static_cast<int>(index.size()) + 1;  // node 0 anchors the bounds
    for (int v = 1; v < nodes; ++v) {
        edges.emplace_back(0, v, mip.n);   // pos_v - z <= n
        edges.emplace_back(v, 0, -1);      // z - pos_v <= -1
    }
    std::vector<std::int64_t> dist(nodes, 0);
    for (int it = 0; it < nodes; ++it) {
        bool changed = false;
        for (auto [a, b, w] : edges)
            if (dist[a] + w < dist[b]) {
                dist[b] = dist[a] + w;
                changed = true;
            }
        if (!changed) return true;
    }
    for (auto [a, b, w] : edges)
        if (dist[a] + w < dist[b]) return false;
    return true;
}

std::int64_t mip_objective(const MipModel& mip, const std::map<std::string, int>& binaries) {
    std::int64_t total = 0;
    for (const auto& t : mip.objective) total += t.coef * binaries.at(t.var);
    return total;
}

std::int64_t mip_optimum(const MipModel& mip) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    const auto nb = mip.binaries.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nb); ++mask) {
        std::map<std::string, int> bin;
        for (std::size_t k = 0; k < nb; ++k) bin[mip.binaries[k]] = (mask >> k) & 1u;
        auto obj = mip_objective(mip, bin);
        if (obj > best && mip_feasible(mip, bin)) best = obj;
    }
    return best;
}

bool mip_point_feasible(const MipModel& mip, const std::map<std::string, double>& point) {
    for (const auto& row : mip.rows) {
        double lhs = 0;
        for (const auto& t : row.terms) lhs += static_cast<double>(t.coef) * point.at(t.var);
        if (lhs > static_cast<double>(row.rhs) + 1e-9) return false;
    }
    for (const auto& p : mip.positions)
        if (point.at(p) < 1 - 1e-9 || point.at(p) > mip.n + 1e-9) return false;
    return true;
}

std::map<std::string, double> mip_point_of(const Subscription& sub, const Relaxation& r) {
    std::map<std::string, double> point;
    std::set<FeatureId> kept(r.kept_features.begin(), r.kept_features.end());
    for (FeatureId f : sub.features()) {
        point[bf_name(f)] = kept.count(f) ? 1 : 0;
        point[pf_name(f)] = 1;
    }
    for (const auto& p : sub.user()) point[bp_name(p)] = 0;
    for (const auto& p : r.kept_precs) point[bp_name(p)] = 1;
    PrecSet edges = sub.hard().restricted([&](FeatureId f) { return kept.count(f) != 0; });
    for (const auto& p : r.kept_precs) edges.insert(p);
    auto order = topological_order(r.kept_features, edges);
    if (!order) throw Error("mip_point_of: relaxation is inconsistent");
    for (std::size_t k = 0; k < order->size(); ++k) point[pf_name((*order)[k])] = static_cast<double>(k + 1);
    return point;
}

}  // namespace fsp::test
