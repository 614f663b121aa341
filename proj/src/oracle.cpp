#include "fsp/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "fsp/consistency.hpp"

namespace fsp {

bool dfs_acyclic(const std::vector<std::uint32_t>& succ, std::uint32_t alive) {
    const int n = static_cast<int>(succ.size());
    std::vector<char> color(n, 0);  // 0 white, 1 grey, 2 black
    std::vector<std::pair<int, int>> stack;
    for (int root = 0; root < n; ++root) {
        if (!(alive >> root & 1u) || color[root]) continue;
        stack.emplace_back(root, 0);
        color[root] = 1;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            std::uint32_t out = succ[u] & alive;
            int v = next;
            while (v < n && !(out >> v & 1u)) ++v;
            if (v == n) {
                color[u] = 2;
                stack.pop_back();
                continue;
            }
            next = v + 1;
            if (color[v] == 1) return false;
            if (color[v] == 0) {
                color[v] = 1;
                stack.emplace_back(v, 0);
            }
        }
    }
    return true;
}

namespace {

struct Candidate {
    Weight value = -1;
    std::uint32_t fmask = 0;
    std::uint32_t pmask = 0;  // over the global user precedence list
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.fmask != b.fmask) return a.fmask < b.fmask;
    return a.pmask < b.pmask;
}

struct Problem {
    int m = 0;
    std::vector<Weight> fw;
    std::vector<std::uint32_t> hard_succ;
    std::vector<std::pair<int, int>> precs;
    std::vector<Weight> pw;
    std::vector<Precedence> prec_ids;

    explicit Problem(const Subscription& sub) : m(static_cast<int>(sub.size())) {
        if (m > 12) throw SizeGuardError("oracle: more than 12 features");
        if (sub.user().size() > 10) throw SizeGuardError("oracle: more than 10 user precedences");
        for (FeatureId f : sub.features()) fw.push_back(sub.feature_weight(f));
        hard_succ.assign(m, 0);
        for (const auto& p : sub.hard())
            hard_succ[sub.index_of(p.before)] |= 1u << sub.index_of(p.after);
        for (const auto& [p, w] : sub.prec_weights()) {
            precs.emplace_back(sub.index_of(p.before), sub.index_of(p.after));
            pw.push_back(w);
            prec_ids.push_back(p);
        }
    }

    Candidate best_for(std::uint32_t fmask) const {
        Candidate best;
        Weight base = 0;
        for (int i = 0; i < m; ++i)
            if (fmask >> i & 1u) base += fw[i];
        std::vector<int> induced;
        for (int k = 0; k < static_cast<int>(precs.size()); ++k)
            if ((fmask >> precs[k].first & 1u) && (fmask >> precs[k].second & 1u)) induced.push_back(k);
        const std::uint32_t limit = 1u << induced.size();
        std::vector<std::uint32_t> succ(m);
        for (std::uint32_t sub = 0; sub < limit; ++sub) {
            succ = hard_succ;
            Weight value = base;
            std::uint32_t pmask = 0;
            for (std::size_t t = 0; t < induced.size(); ++t) {
                if (!(sub >> t & 1u)) continue;
                int k = induced[t];
                succ[precs[k].first] |= 1u << precs[k].second;
                value += pw[k];
                pmask |= 1u << k;
            }
            if (!dfs_acyclic(succ, fmask)) continue;
            Candidate c{value, fmask, pmask};
            if (better(c, best)) best = c;
        }
        return best;
    }

    Relaxation to_relaxation(const Subscription& sub, const Candidate& c) const {
        std::vector<FeatureId> fs;
        std::vector<Precedence> ps;
        for (int i = 0; i < m; ++i)
            if (c.fmask >> i & 1u) fs.push_back(sub.features()[i]);
        for (std::size_t k = 0; k < prec_ids.size(); ++k)
            if (c.pmask >> k & 1u) ps.push_back(prec_ids[k]);
        return make_relaxation(sub, std::move(fs), std::move(ps));
    }
};

}  // namespace

Relaxation brute_force_optimal_serial(const Subscription& sub) {
    Problem pb(sub);
    Candidate best;
    const std::int64_t masks = std::int64_t{1} << pb.m;
    for (std::int64_t f = 0; f < masks; ++f) {
        Candidate c = pb.best_for(static_cast<std::uint32_t>(f));
        if (better(c, best)) best = c;
    }
    return pb.to_relaxation(sub, best);
}

Relaxation brute_force_optimal(const Subscription& sub) {
    Problem pb(sub);
    Candidate best;
    const std::int64_t masks = std::int64_t{1} << pb.m;
#pragma omp parallel
    {
        Candidate local;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t f = 0; f < masks; ++f) {
            Candidate c = pb.best_for(static_cast<std::uint32_t>(f));
            if (better(c, local)) local = c;
        }
#pragma omp critical(fsp_oracle_reduce)
        if (better(local, best)) best = local;
    }
    return pb.to_relaxation(sub, best);
}

namespace {

std::vector<TotalOrder> orders_extending(const Region& r) {
    std::vector<FeatureId> perm(r.features.begin(), r.features.end());
    std::vector<TotalOrder> out;
    do {
        std::unordered_map<FeatureId, std::size_t> pos;
        for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = k;
        bool ok = true;
        for (const auto& p : r.hard) ok = ok && pos.at(p.before) < pos.at(p.after);
        for (const auto& [p, w] : r.user) ok = ok && pos.at(p.before) < pos.at(p.after);
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

std::vector<OrderPair> brute_force_pairs(const BiRegionSubscription& bi) {
    if (bi.source.features.size() > 7 || bi.target.features.size() > 7)
        throw SizeGuardError("oracle: region with more than 7 features");
    auto sources = orders_extending(bi.source);
    auto targets = orders_extending(bi.target);
    auto rev = bi.reversible();
    std::vector<OrderPair> out;
    for (const auto& s : sources) {
        std::unordered_map<FeatureId, std::size_t> ps;
        for (std::size_t k = 0; k < s.size(); ++k) ps[s[k]] = k;
        for (const auto& t : targets) {
            std::unordered_map<FeatureId, std::size_t> pt;
            for (std::size_t k = 0; k < t.size(); ++k) pt[t[k]] = k;
            bool ok = true;
            for (FeatureId f : rev)
                for (FeatureId g : rev)
                    if (f != g && (ps[f] < ps[g]) != (pt[g] < pt[f])) ok = false;
            if (ok) out.push_back({s, t});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool brute_force_consistency(const Subscription& sub) {
    if (sub.size() > 8) throw SizeGuardError("oracle: more than 8 features");
    std::vector<FeatureId> perm(sub.features().begin(), sub.features().end());
    do {
        std::unordered_map<FeatureId, std::size_t> pos;
        for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = k;
        bool ok = true;
        for (const auto& p : sub.hard()) ok = ok && pos[p.before] < pos[p.after];
        for (const auto& p : sub.user()) ok = ok && pos[p.before] < pos[p.after];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace fsp
