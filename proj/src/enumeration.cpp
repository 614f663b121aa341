#include "fsp/enumeration.hpp"

#include <algorithm>
#include <unordered_map>

namespace fsp {

LinearExtensions::LinearExtensions(const PrecSet& base, std::span<const FeatureId> universe,
                                   std::optional<std::size_t> limit)
    : ids_(universe.begin(), universe.end()), limit_(limit) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    if (!topological_order(ids_, base))
        throw InconsistentError("linear extensions: base relation is cyclic");

    std::unordered_map<FeatureId, int> pos;
    for (std::size_t k = 0; k < ids_.size(); ++k) pos[ids_[k]] = static_cast<int>(k);
    succ_.resize(ids_.size());
    indeg_.assign(ids_.size(), 0);
    placed_.assign(ids_.size(), 0);
    for (const auto& p : base) {
        auto a = pos.find(p.before), b = pos.find(p.after);
        if (a == pos.end() || b == pos.end()) continue;
        succ_[a->second].push_back(b->second);
        ++indeg_[b->second];
    }
}

void LinearExtensions::place(int node) {
    placed_[node] = 1;
    prefix_.push_back(node);
    for (int s : succ_[node]) --indeg_[s];
}

void LinearExtensions::unplace(int node) {
    placed_[node] = 0;
    prefix_.pop_back();
    for (int s : succ_[node]) ++indeg_[s];
}

void LinearExtensions::fill_frontier() {
    std::vector<int> ready;
    for (int k = 0; k < static_cast<int>(ids_.size()); ++k)
        if (!placed_[k] && indeg_[k] == 0) ready.push_back(k);
    frontier_.push_back(std::move(ready));
    cursor_.push_back(0);
}

bool LinearExtensions::descend() {
    while (prefix_.size() < ids_.size()) {
        fill_frontier();
        place(frontier_.back().front());
    }
    return true;
}

bool LinearExtensions::backtrack() {
    while (!prefix_.empty()) {
        unplace(prefix_.back());
        auto& c = cursor_.back();
        ++c;
        if (c < frontier_.back().size()) {
            place(frontier_.back()[c]);
            return descend();
        }
        frontier_.pop_back();
        cursor_.pop_back();
    }
    return false;
}

std::optional<TotalOrder> LinearExtensions::next() {
    if (done_ || (limit_ && emitted_ >= *limit_)) return std::nullopt;
    bool ok = started_ ? backtrack() : descend();
    started_ = true;
    if (!ok) {
        done_ = true;
        return std::nullopt;
    }
    ++emitted_;
    TotalOrder out;
    out.reserve(prefix_.size());
    for (int node : prefix_) out.push_back(ids_[node]);
    return out;
}

std::vector<TotalOrder> linear_extensions(const PrecSet& base, std::span<const FeatureId> universe,
                                          std::optional<std::size_t> limit) {
    LinearExtensions gen(base, universe, limit);
    std::vector<TotalOrder> out;
    while (auto t = gen.next()) out.push_back(std::move(*t));
    return out;
}

namespace {

PrecSet chain_of(const TotalOrder& order) {
    PrecSet out;
    for (std::size_t k = 1; k < order.size(); ++k) out.insert(order[k - 1], order[k]);
    return out;
}

PrecSet with(const PrecSet& a, const PrecSet& b) {
    PrecSet out = a;
    out.merge(b);
    return out;
}

}  // namespace

PairEnumerator::PairEnumerator(const BiRegionSubscription& bi, std::optional<std::size_t> limit)
    : limit_(limit) {
    auto ref = reformulate(bi);
    const auto& sub = ref.subscription;
    PrecSet base = with(sub.hard(), sub.user());
    auto closure = transitive_closure(base, sub.features());
    if (closure.cycle) throw InconsistentError("get_solutions: subscription is inconsistent");

    source_.assign(ref.source.begin(), ref.source.end());
    target_.assign(ref.target.begin(), ref.target.end());
    std::set_intersection(source_.begin(), source_.end(), target_.begin(), target_.end(),
                          std::back_inserter(reversible_));

    auto member = [](const std::vector<FeatureId>& v) {
        return [&v](FeatureId f) { return std::binary_search(v.begin(), v.end(), f); };
    };
    source_rel_ = closure.pairs.restricted(member(source_));
    target_rel_ = closure.pairs.restricted(member(target_));
    reversible_orders_.emplace(closure.pairs.restricted(member(reversible_)), reversible_);
}

bool PairEnumerator::advance_reversible() {
    auto r = reversible_orders_->next();
    if (!r) return false;
    current_chain_ = chain_of(*r);
    source_orders_.emplace(with(source_rel_, current_chain_), source_);
    return true;
}

bool PairEnumerator::advance_source() {
    if (!source_orders_) return false;
    auto s = source_orders_->next();
    if (!s) {
        source_orders_.reset();
        return false;
    }
    current_source_ = std::move(s);
    target_orders_.emplace(with(target_rel_, current_chain_), target_);
    return true;
}

std::optional<OrderPair> PairEnumerator::next() {
    if (done_ || (limit_ && emitted_ >= *limit_)) return std::nullopt;
    while (true) {
        if (target_orders_) {
            if (auto t = target_orders_->next()) {
                ++emitted_;
                // back to the target region's own orientation
                std::reverse(t->begin(), t->end());
                return OrderPair{*current_source_, std::move(*t)};
            }
            target_orders_.reset();
        }
        if (advance_source()) continue;
        if (!advance_reversible()) {
            done_ = true;
            return std::nullopt;
        }
    }
}

std::vector<OrderPair> get_solutions(const BiRegionSubscription& bi,
                                     std::optional<std::size_t> limit) {
    PairEnumerator gen(bi, limit);
    std::vector<OrderPair> out;
    while (auto p = gen.next()) out.push_back(std::move(*p));
    return out;
}

std::size_t pair_anti_subscription_size(std::shared_ptr<const Catalogue> catalogue,
                                        const BiRegionSubscription& bi, const OrderPair& pair) {
    auto ref = reformulate(bi);
    std::map<Precedence, Weight> induced;
    const auto& s = pair.source_order;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b) induced.emplace(Precedence{s[a], s[b]}, 1);
    const auto& t = pair.target_order;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) induced.emplace(Precedence{t[b], t[a]}, 1);
    Subscription sub(std::move(catalogue), ref.subscription.feature_weights(), std::move(induced));
    return anti_subscription(sub).size();
}

std::vector<OrderPair> rank_pairs(std::shared_ptr<const Catalogue> catalogue,
                                  const BiRegionSubscription& bi,
                                  const std::vector<OrderPair>& pairs) {
    std::vector<std::size_t> keys;
    keys.reserve(pairs.size());
    for (const auto& p : pairs) keys.push_back(pair_anti_subscription_size(catalogue, bi, p));
    return stable_rank(pairs, keys);
}

bool is_compatible(const BiRegionSubscription& bi, const OrderPair& pair) {
    auto positions = [](const TotalOrder& order, const std::set<FeatureId>& fs,
                        std::unordered_map<FeatureId, std::size_t>& pos) {
        if (order.size() != fs.size()) return false;
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (!fs.count(order[k]) || !pos.emplace(order[k], k).second) return false;
        }
        return true;
    };
    std::unordered_map<FeatureId, std::size_t> ps, pt;
    if (!positions(pair.source_order, bi.source.features, ps)) return false;
    if (!positions(pair.target_order, bi.target.features, pt)) return false;

    auto extends = [](const Region& r, const std::unordered_map<FeatureId, std::size_t>& pos) {
        for (const auto& p : r.hard)
            if (pos.at(p.before) >= pos.at(p.after)) return false;
        for (const auto& [p, w] : r.user)
            if (pos.at(p.before) >= pos.at(p.after)) return false;
        return true;
    };
    if (!extends(bi.source, ps) || !extends(bi.target, pt)) return false;

    auto rev = bi.reversible();
    for (FeatureId f : rev)
        for (FeatureId g : rev)
            if (f != g && (ps.at(f) < ps.at(g)) != (pt.at(g) < pt.at(f))) return false;
    return true;
}

}  // namespace fsp
