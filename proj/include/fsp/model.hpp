#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "fsp/types.hpp"

namespace fsp {

/// Merged catalogue: features 1..n and hard precedences between them.
/// An exclusion between i and j is stored as both (i,j) and (j,i).
struct Catalogue {
    FeatureId n_features = 0;
    PrecSet hard;

    /// Throws Error if a pair references an id outside [1, n_features].
    static std::shared_ptr<const Catalogue> create(FeatureId n_features, PrecSet hard);
};

/// A feature subscription <F, H, P, w> of a merged catalogue. H is always
/// the catalogue's hard set restricted to F. Immutable once built.
class Subscription {
public:
    /// Validates ids and weights and derives H from the catalogue.
    Subscription(std::shared_ptr<const Catalogue> catalogue,
                 std::map<FeatureId, Weight> features,
                 std::map<Precedence, Weight> user);

    /// Convenience for tests and small examples: builds a catalogue of
    /// `n_features` whose hard set is `hard`, then subscribes to `features`
    /// (all with weight 1 unless `weights` is given).
    static Subscription make(FeatureId n_features, std::vector<FeatureId> features, PrecSet hard,
                             std::map<Precedence, Weight> user = {},
                             std::map<FeatureId, Weight> weights = {});

    const Catalogue& catalogue() const { return *catalogue_; }
    const std::shared_ptr<const Catalogue>& catalogue_ptr() const { return catalogue_; }

    /// Selected features in increasing id order.
    std::span<const FeatureId> features() const { return features_; }
    std::size_t size() const { return features_.size(); }
    bool has_feature(FeatureId f) const { return feature_weight_.count(f) != 0; }
    /// Position of `f` in features(), or -1.
    int index_of(FeatureId f) const;

    const PrecSet& hard() const { return hard_; }
    const PrecSet& user() const { return user_; }

    Weight feature_weight(FeatureId f) const;
    Weight prec_weight(Precedence p) const;
    const std::map<FeatureId, Weight>& feature_weights() const { return feature_weight_; }
    const std::map<Precedence, Weight>& prec_weights() const { return prec_weight_; }

    /// Sum of every feature and user-precedence weight.
    Weight total_weight() const;

    /// Same catalogue and weights, different user precedence set.
    Subscription with_user(std::map<Precedence, Weight> user) const;

private:
    std::shared_ptr<const Catalogue> catalogue_;
    std::vector<FeatureId> features_;
    std::vector<int> index_;  // id -> position, -1 when absent
    std::map<FeatureId, Weight> feature_weight_;
    std::map<Precedence, Weight> prec_weight_;
    PrecSet hard_;
    PrecSet user_;
};

/// Source/target catalogue <Fs, Hs, Ft, Ht>. Reversible features are the
/// intersection of the two feature sets.
struct BiRegionCatalogue {
    std::set<FeatureId> source_features;
    std::set<FeatureId> target_features;
    PrecSet source_hard;
    PrecSet target_hard;

    bool is_reversible(FeatureId f) const {
        return source_features.count(f) && target_features.count(f);
    }
    /// <Fs u Ft, Hs u transpose(Ht)>.
    std::shared_ptr<const Catalogue> merged() const;
};

/// One side of a bi-region subscription. Precedences are in that region's
/// own orientation.
struct Region {
    std::set<FeatureId> features;
    PrecSet hard;
    std::map<Precedence, Weight> user;
};

/// Pair of region subscriptions over a BiRegionCatalogue. Built through
/// create(), which derives both hard sets and mirrors user precedences on
/// reversible pairs.
struct BiRegionSubscription {
    std::shared_ptr<const BiRegionCatalogue> catalogue;
    Region source;
    Region target;
    std::map<FeatureId, Weight> feature_weight;  // missing entries weigh 1

    /// Throws Error when a reversible feature is selected on one side only
    /// or an id is not in the corresponding catalogue region.
    static BiRegionSubscription create(std::shared_ptr<const BiRegionCatalogue> catalogue,
                                       std::set<FeatureId> source_features,
                                       std::set<FeatureId> target_features,
                                       std::map<Precedence, Weight> source_user,
                                       std::map<Precedence, Weight> target_user,
                                       std::map<FeatureId, Weight> feature_weight = {});

    std::set<FeatureId> reversible() const;
};

/// Kept features F' and kept user precedences P' with their total weight.
struct Relaxation {
    std::vector<FeatureId> kept_features;  // sorted
    std::vector<Precedence> kept_precs;    // sorted
    Weight value = 0;

    bool operator==(const Relaxation&) const = default;
};

/// Additions that would make a consistent subscription inconsistent.
struct AntiSubscription {
    std::vector<FeatureId> blocked_features;  // sorted
    PrecSet blocked_precs;

    std::size_t size() const { return blocked_features.size() + blocked_precs.size(); }
};

}  // namespace fsp
