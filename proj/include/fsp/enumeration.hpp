#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "fsp/consistency.hpp"
#include "fsp/model.hpp"

namespace fsp {

/// Compatible source/target total orders. The target order is in the
/// target region's own orientation.
struct OrderPair {
    TotalOrder source_order;
    TotalOrder target_order;

    friend auto operator<=>(const OrderPair&, const OrderPair&) = default;
};

/// Lazy stream of the total orders extending an acyclic relation.
/// Backtracks over the ready frontier, smallest id first, so the stream is
/// in lexicographic order.
class LinearExtensions {
public:
    /// Throws InconsistentError if `base` restricted to `universe` is cyclic.
    LinearExtensions(const PrecSet& base, std::span<const FeatureId> universe,
                     std::optional<std::size_t> limit = std::nullopt);

    std::optional<TotalOrder> next();

private:
    bool descend();
    bool backtrack();
    void place(int node);
    void unplace(int node);
    void fill_frontier();

    std::vector<FeatureId> ids_;
    std::vector<std::vector<int>> succ_;
    std::vector<int> indeg_;
    std::vector<char> placed_;
    std::vector<int> prefix_;
    std::vector<std::vector<int>> frontier_;
    std::vector<std::size_t> cursor_;
    std::optional<std::size_t> limit_;
    std::size_t emitted_ = 0;
    bool started_ = false;
    bool done_ = false;
};

/// Symmetry-free enumeration of compatible order pairs: an outer loop over
/// the total orders of the reversible features, then the product of the
/// source and target extensions consistent with each of them.
class PairEnumerator {
public:
    /// Throws InconsistentError when the merged subscription is inconsistent.
    explicit PairEnumerator(const BiRegionSubscription& bi,
                            std::optional<std::size_t> limit = std::nullopt);

    std::optional<OrderPair> next();

private:
    bool advance_reversible();
    bool advance_source();

    std::vector<FeatureId> source_, target_, reversible_;
    PrecSet source_rel_, target_rel_;  // closure restricted, target transposed
    std::optional<LinearExtensions> reversible_orders_, source_orders_, target_orders_;
    PrecSet current_chain_;
    std::optional<TotalOrder> current_source_;
    std::optional<std::size_t> limit_;
    std::size_t emitted_ = 0;
    bool done_ = false;
};

std::vector<TotalOrder> linear_extensions(const PrecSet& base, std::span<const FeatureId> universe,
                                          std::optional<std::size_t> limit = std::nullopt);

std::vector<OrderPair> get_solutions(const BiRegionSubscription& bi,
                                     std::optional<std::size_t> limit = std::nullopt);

/// Size |F_a| + |P_a| of the anti-subscription of the merged subscription
/// whose user precedences are the relation induced by `pair`.
std::size_t pair_anti_subscription_size(std::shared_ptr<const Catalogue> catalogue,
                                        const BiRegionSubscription& bi, const OrderPair& pair);

/// Stable sort of `items` by `keys` ascending.
template <typename T>
std::vector<T> stable_rank(const std::vector<T>& items, const std::vector<std::size_t>& keys);

/// Pairs ordered by anti-subscription size, ties kept in input order.
std::vector<OrderPair> rank_pairs(std::shared_ptr<const Catalogue> catalogue,
                                  const BiRegionSubscription& bi,
                                  const std::vector<OrderPair>& pairs);

/// Each order extends its region's H u P and the
/// reversible features appear in inverse order. Totality of the union is
/// not required.
bool is_compatible(const BiRegionSubscription& bi, const OrderPair& pair);

template <typename T>
std::vector<T> stable_rank(const std::vector<T>& items, const std::vector<std::size_t>& keys) {
    std::vector<std::size_t> idx(items.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<T> out;
    out.reserve(items.size());
    for (std::size_t k : idx) out.push_back(items[k]);
    return out;
}

}  // namespace fsp
