#include "fsp/consistency.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>

namespace fsp {

namespace {

/// Square bit matrix used by the closure computation.
class BitMatrix {
public:
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    void set(std::size_t i, std::size_t j) { row(i)[j / 64] |= std::uint64_t{1} << (j % 64); }
    bool test(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void or_row(std::size_t dst, std::size_t src) {
        for (std::size_t w = 0; w < words_; ++w) bits_[dst * words_ + w] |= bits_[src * words_ + w];
    }

private:
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

PrecSet union_of(const PrecSet& a, const PrecSet& b) {
    PrecSet out = a;
    out.merge(b);
    return out;
}

}  // namespace

Closure transitive_closure(const PrecSet& rel, std::span<const FeatureId> universe) {
    std::vector<FeatureId> ids(universe.begin(), universe.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::unordered_map<FeatureId, std::size_t> pos;
    for (std::size_t k = 0; k < ids.size(); ++k) pos[ids[k]] = k;

    const std::size_t n = ids.size();
    BitMatrix reach(n);
    for (const auto& p : rel) {
        auto a = pos.find(p.before), b = pos.find(p.after);
        if (a == pos.end() || b == pos.end()) continue;
        reach.set(a->second, b->second);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach.test(i, k)) reach.or_row(i, k);

    Closure out;
    for (std::size_t i = 0; i < n; ++i) {
        if (reach.test(i, i)) out.cycle = true;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && reach.test(i, j)) out.pairs.insert(ids[i], ids[j]);
    }
    return out;
}

std::optional<TotalOrder> topological_order(std::span<const FeatureId> features,
                                            const PrecSet& edges) {
    std::unordered_map<FeatureId, int> indeg;
    std::unordered_map<FeatureId, std::vector<FeatureId>> succ;
    for (FeatureId f : features) indeg[f] = 0;
    for (const auto& p : edges) {
        if (!indeg.count(p.before) || !indeg.count(p.after)) continue;
        succ[p.before].push_back(p.after);
        ++indeg[p.after];
    }
    std::priority_queue<FeatureId, std::vector<FeatureId>, std::greater<>> ready;
    for (const auto& [f, d] : indeg)
        if (d == 0) ready.push(f);

    TotalOrder order;
    order.reserve(indeg.size());
    while (!ready.empty()) {
        FeatureId f = ready.top();
        ready.pop();
        order.push_back(f);
        auto it = succ.find(f);
        if (it == succ.end()) continue;
        for (FeatureId g : it->second)
            if (--indeg[g] == 0) ready.push(g);
    }
    if (order.size() != indeg.size()) return std::nullopt;
    return order;
}

ConsistencyResult is_consistent(const Subscription& sub) {
    auto order = topological_order(sub.features(), union_of(sub.hard(), sub.user()));
    ConsistencyResult r;
    r.consistent = order.has_value();
    r.witness = std::move(order);
    return r;
}

TotalOrder complete(const Subscription& sub) {
    auto r = is_consistent(sub);
    if (!r.consistent) throw InconsistentError("complete: subscription is inconsistent");
    return *r.witness;
}

PrecSet partial_completion(const Subscription& sub) {
    auto c = transitive_closure(union_of(sub.hard(), sub.user()), sub.features());
    if (c.cycle) throw InconsistentError("partial completion: subscription is inconsistent");
    return std::move(c.pairs);
}

AntiSubscription anti_subscription(const Subscription& sub) {
    const PrecSet base = union_of(sub.hard(), sub.user());
    if (!topological_order(sub.features(), base))
        throw InconsistentError("anti-subscription: subscription is inconsistent");
    const PrecSet implied = transitive_closure(base, sub.features()).pairs;

    const Catalogue& cat = sub.catalogue();
    std::vector<std::vector<Precedence>> touching(static_cast<std::size_t>(cat.n_features) + 1);
    for (const auto& p : cat.hard) {
        touching[p.before].push_back(p);
        touching[p.after].push_back(p);
    }

    AntiSubscription anti;
    std::vector<FeatureId> probe(sub.features().begin(), sub.features().end());
    for (FeatureId f = 1; f <= cat.n_features; ++f) {
        if (sub.has_feature(f)) continue;
        PrecSet edges = base;
        for (const auto& p : touching[f]) {
            FeatureId other = p.before == f ? p.after : p.before;
            if (sub.has_feature(other)) edges.insert(p);
        }
        probe.push_back(f);
        if (!topological_order(probe, edges)) anti.blocked_features.push_back(f);
        probe.pop_back();
    }

    for (FeatureId i : sub.features())
        for (FeatureId j : sub.features()) {
            if (i == j || implied.contains(i, j)) continue;
            PrecSet edges = base;
            edges.insert(i, j);
            if (!topological_order(sub.features(), edges)) anti.blocked_precs.insert(i, j);
        }
    return anti;
}

Reformulation reformulate(const BiRegionSubscription& bi) {
    if (!bi.catalogue) throw Error("reformulate: null catalogue");
    for (FeatureId f : bi.source.features)
        if (bi.catalogue->is_reversible(f) && !bi.target.features.count(f))
            throw Error("reformulate: reversible feature " + std::to_string(f) +
                        " missing from the target region");
    for (FeatureId f : bi.target.features)
        if (bi.catalogue->is_reversible(f) && !bi.source.features.count(f))
            throw Error("reformulate: reversible feature " + std::to_string(f) +
                        " missing from the source region");

    std::map<FeatureId, Weight> features;
    auto add_feature = [&](FeatureId f) {
        auto it = bi.feature_weight.find(f);
        features[f] = it == bi.feature_weight.end() ? 1 : it->second;
    };
    for (FeatureId f : bi.source.features) add_feature(f);
    for (FeatureId f : bi.target.features) add_feature(f);

    std::map<Precedence, Weight> user = bi.source.user;
    for (const auto& [p, w] : bi.target.user) user.emplace(p.reversed(), w);

    auto catalogue = bi.catalogue->merged();
    // Region hard sets carry the mirrored reversible pairs, so they must agree with the
    // merged catalogue restricted to F.
    PrecSet expected = bi.source.hard;
    expected.merge(bi.target.hard.transposed());
    Subscription sub(std::move(catalogue), std::move(features), std::move(user));
    for (const auto& p : expected)
        if (!sub.hard().contains(p))
            throw Error("reformulate: region hard precedence " + to_string(p) +
                        " is not a catalogue precedence");
    return {std::move(sub), bi.source.features, bi.target.features};
}

BiRegionSubscription split_regions(const Subscription& sub, const std::set<FeatureId>& source,
                                   const std::set<FeatureId>& target) {
    for (FeatureId f : sub.features())
        if (!source.count(f) && !target.count(f))
            throw Error("partition: feature " + std::to_string(f) + " is in neither region");
    for (FeatureId f : source)
        if (!sub.has_feature(f)) throw Error("partition: source id " + std::to_string(f) + " not subscribed");
    for (FeatureId f : target)
        if (!sub.has_feature(f)) throw Error("partition: target id " + std::to_string(f) + " not subscribed");

    auto in_source = [&](FeatureId f) { return source.count(f) != 0; };
    auto in_target = [&](FeatureId f) { return target.count(f) != 0; };
    auto within_one = [&](Precedence p) {
        return (in_source(p.before) && in_source(p.after)) ||
               (in_target(p.before) && in_target(p.after));
    };
    for (const auto& p : sub.hard())
        if (!within_one(p))
            throw Error("partition: hard precedence " + to_string(p) + " crosses regions");

    auto cat = std::make_shared<BiRegionCatalogue>();
    cat->source_features = source;
    cat->target_features = target;
    cat->source_hard = sub.hard().restricted(in_source);
    cat->target_hard = sub.hard().restricted(in_target).transposed();

    std::map<Precedence, Weight> source_user, target_user;
    for (const auto& [p, w] : sub.prec_weights()) {
        if (!within_one(p))
            throw Error("partition: user precedence " + to_string(p) + " crosses regions");
        if (in_source(p.before) && in_source(p.after)) source_user.emplace(p, w);
        if (in_target(p.before) && in_target(p.after)) target_user.emplace(p.reversed(), w);
    }
    return BiRegionSubscription::create(std::move(cat), source, target, std::move(source_user),
                                        std::move(target_user), sub.feature_weights());
}

Weight value_of(const Relaxation& relax, const Subscription& sub) {
    Weight total = 0;
    for (FeatureId f : relax.kept_features) total += sub.feature_weight(f);
    for (const auto& p : relax.kept_precs) total += sub.prec_weight(p);
    return total;
}

VerifyResult verify_relaxation(const Subscription& sub, const Relaxation& relax) {
    std::set<FeatureId> kept;
    for (FeatureId f : relax.kept_features) {
        if (!sub.has_feature(f))
            return VerifyFailure{"feature " + std::to_string(f) + " is not in the subscription"};
        if (!kept.insert(f).second)
            return VerifyFailure{"feature " + std::to_string(f) + " listed twice"};
    }
    PrecSet precs;
    for (const auto& p : relax.kept_precs) {
        if (!sub.user().contains(p))
            return VerifyFailure{"precedence " + to_string(p) + " is not a user precedence"};
        if (!kept.count(p.before) || !kept.count(p.after))
            return VerifyFailure{"precedence " + to_string(p) + " references a dropped feature"};
        if (!precs.insert(p))
            return VerifyFailure{"precedence " + to_string(p) + " listed twice"};
    }
    PrecSet edges = sub.hard().restricted([&](FeatureId f) { return kept.count(f) != 0; });
    edges.merge(precs);
    std::vector<FeatureId> fs(kept.begin(), kept.end());
    if (!topological_order(fs, edges)) return VerifyFailure{"relaxation is inconsistent (cycle)"};
    return VerifyOk{value_of(relax, sub)};
}

Relaxation make_relaxation(const Subscription& sub, std::vector<FeatureId> features,
                           std::vector<Precedence> precs) {
    Relaxation r;
    std::sort(features.begin(), features.end());
    std::sort(precs.begin(), precs.end());
    r.kept_features = std::move(features);
    r.kept_precs = std::move(precs);
    r.value = value_of(r, sub);
    return r;
}

}  // namespace fsp
