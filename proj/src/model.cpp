#include "fsp/model.hpp"

#include <algorithm>
#include <numeric>

namespace fsp {

namespace {

void check_id(FeatureId f, FeatureId n, const char* what) {
    if (f < 1 || f > n)
        throw Error(std::string(what) + ": feature id " + std::to_string(f) +
                    " outside [1, " + std::to_string(n) + "]");
}

}  // namespace

std::shared_ptr<const Catalogue> Catalogue::create(FeatureId n_features, PrecSet hard) {
    if (n_features < 0) throw Error("catalogue: negative feature count");
    for (const auto& p : hard) {
        check_id(p.before, n_features, "catalogue");
        check_id(p.after, n_features, "catalogue");
    }
    auto cat = std::make_shared<Catalogue>();
    cat->n_features = n_features;
    cat->hard = std::move(hard);
    return cat;
}

Subscription::Subscription(std::shared_ptr<const Catalogue> catalogue,
                           std::map<FeatureId, Weight> features,
                           std::map<Precedence, Weight> user)
    : catalogue_(std::move(catalogue)),
      feature_weight_(std::move(features)),
      prec_weight_(std::move(user)) {
    if (!catalogue_) throw Error("subscription: null catalogue");
    const FeatureId n = catalogue_->n_features;
    index_.assign(static_cast<std::size_t>(n) + 1, -1);
    for (const auto& [f, w] : feature_weight_) {
        check_id(f, n, "subscription");
        if (w < 1) throw Error("subscription: feature " + std::to_string(f) + " has weight < 1");
        index_[f] = static_cast<int>(features_.size());
        features_.push_back(f);
    }
    for (const auto& [p, w] : prec_weight_) {
        if (p.before == p.after)
            throw Error("subscription: reflexive user precedence on " + std::to_string(p.before));
        if (!has_feature(p.before) || !has_feature(p.after))
            throw Error("subscription: user precedence " + to_string(p) +
                        " references an unselected feature");
        if (w < 1) throw Error("subscription: user precedence " + to_string(p) + " has weight < 1");
        user_.insert(p);
    }
    hard_ = catalogue_->hard.restricted([this](FeatureId f) { return has_feature(f); });
}

Subscription Subscription::make(FeatureId n_features, std::vector<FeatureId> features, PrecSet hard,
                                std::map<Precedence, Weight> user,
                                std::map<FeatureId, Weight> weights) {
    std::map<FeatureId, Weight> fw;
    for (FeatureId f : features) {
        auto it = weights.find(f);
        fw[f] = it == weights.end() ? 1 : it->second;
    }
    return Subscription(Catalogue::create(n_features, std::move(hard)), std::move(fw),
                        std::move(user));
}

int Subscription::index_of(FeatureId f) const {
    if (f < 1 || f >= static_cast<FeatureId>(index_.size())) return -1;
    return index_[f];
}

Weight Subscription::feature_weight(FeatureId f) const {
    auto it = feature_weight_.find(f);
    if (it == feature_weight_.end())
        throw Error("feature " + std::to_string(f) + " is not in the subscription");
    return it->second;
}

Weight Subscription::prec_weight(Precedence p) const {
    auto it = prec_weight_.find(p);
    if (it == prec_weight_.end())
        throw Error("precedence " + to_string(p) + " is not a user precedence");
    return it->second;
}

Weight Subscription::total_weight() const {
    Weight total = 0;
    for (const auto& [f, w] : feature_weight_) total += w;
    for (const auto& [p, w] : prec_weight_) total += w;
    return total;
}

Subscription Subscription::with_user(std::map<Precedence, Weight> user) const {
    return Subscription(catalogue_, feature_weight_, std::move(user));
}

std::shared_ptr<const Catalogue> BiRegionCatalogue::merged() const {
    FeatureId n = 0;
    for (FeatureId f : source_features) n = std::max(n, f);
    for (FeatureId f : target_features) n = std::max(n, f);
    PrecSet hard = source_hard;
    hard.merge(target_hard.transposed());
    return Catalogue::create(n, std::move(hard));
}

BiRegionSubscription BiRegionSubscription::create(
    std::shared_ptr<const BiRegionCatalogue> catalogue, std::set<FeatureId> source_features,
    std::set<FeatureId> target_features, std::map<Precedence, Weight> source_user,
    std::map<Precedence, Weight> target_user, std::map<FeatureId, Weight> feature_weight) {
    if (!catalogue) throw Error("bi-region subscription: null catalogue");
    const auto& cat = *catalogue;
    for (FeatureId f : source_features)
        if (!cat.source_features.count(f))
            throw Error("bi-region subscription: " + std::to_string(f) + " is not a source feature");
    for (FeatureId f : target_features)
        if (!cat.target_features.count(f))
            throw Error("bi-region subscription: " + std::to_string(f) + " is not a target feature");
    for (FeatureId f : source_features)
        if (cat.is_reversible(f) && !target_features.count(f))
            throw Error("bi-region subscription: reversible feature " + std::to_string(f) +
                        " selected in the source region only");
    for (FeatureId f : target_features)
        if (cat.is_reversible(f) && !source_features.count(f))
            throw Error("bi-region subscription: reversible feature " + std::to_string(f) +
                        " selected in the target region only");

    auto in_both = [&](FeatureId f) {
        return source_features.count(f) && target_features.count(f);
    };

    BiRegionSubscription bi;
    bi.catalogue = std::move(catalogue);
    bi.feature_weight = std::move(feature_weight);

    bi.source.features = source_features;
    bi.source.hard = cat.source_hard.restricted([&](FeatureId f) { return source_features.count(f) != 0; });
    for (const auto& p : cat.target_hard)
        if (in_both(p.before) && in_both(p.after)) bi.source.hard.insert(p.reversed());

    bi.target.features = target_features;
    bi.target.hard = cat.target_hard.restricted([&](FeatureId f) { return target_features.count(f) != 0; });
    for (const auto& p : cat.source_hard)
        if (in_both(p.before) && in_both(p.after)) bi.target.hard.insert(p.reversed());

    auto check_user = [](const std::map<Precedence, Weight>& user, const std::set<FeatureId>& fs,
                         const char* side) {
        for (const auto& [p, w] : user) {
            if (!fs.count(p.before) || !fs.count(p.after) || p.before == p.after)
                throw Error(std::string("bi-region subscription: bad ") + side +
                            " user precedence " + to_string(p));
            if (w < 1) throw Error("bi-region subscription: weight < 1");
        }
    };
    check_user(source_user, source_features, "source");
    check_user(target_user, target_features, "target");

    bi.source.user = source_user;
    bi.target.user = target_user;
    for (const auto& [p, w] : target_user)
        if (in_both(p.before) && in_both(p.after)) bi.source.user.emplace(p.reversed(), w);
    for (const auto& [p, w] : source_user)
        if (in_both(p.before) && in_both(p.after)) bi.target.user.emplace(p.reversed(), w);
    return bi;
}

std::set<FeatureId> BiRegionSubscription::reversible() const {
    std::set<FeatureId> out;
    std::set_intersection(source.features.begin(), source.features.end(), target.features.begin(),
                          target.features.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace fsp
