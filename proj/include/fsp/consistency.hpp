#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "fsp/model.hpp"

namespace fsp {

struct Closure {
    PrecSet pairs;       // irreflexive part of R*
    bool cycle = false;  // R* contained some (i, i)
};

/// Transitive closure of `rel` over `universe` (Warshall, O(|universe|^3)).
/// Pairs touching ids outside the universe are ignored.
Closure transitive_closure(const PrecSet& rel, std::span<const FeatureId> universe);

/// Topological sort of <features, edges> with smallest-id tie-break.
/// Returns nullopt when the graph has a cycle.
std::optional<TotalOrder> topological_order(std::span<const FeatureId> features,
                                            const PrecSet& edges);

struct ConsistencyResult {
    bool consistent = false;
    std::optional<TotalOrder> witness;
};

/// Acyclicity of <F, H u P>, with a witness order when consistent.
ConsistencyResult is_consistent(const Subscription& sub);

/// Deterministic total order extending H u P. Throws InconsistentError.
TotalOrder complete(const Subscription& sub);

/// (H u P)*. Throws InconsistentError.
PrecSet partial_completion(const Subscription& sub);

/// Probes each catalogue feature outside F and each ordered pair over F
/// by re-running the consistency check. Pairs already in (H u P)* are not
/// probed: adding them to a consistent subscription never closes a cycle.
/// Throws InconsistentError.
AntiSubscription anti_subscription(const Subscription& sub);

/// Merged subscription of a bi-region subscription; target relations transposed.
/// Region labels are returned alongside.
struct Reformulation {
    Subscription subscription;
    std::set<FeatureId> source;
    std::set<FeatureId> target;
};
Reformulation reformulate(const BiRegionSubscription& bi);

/// Inverse of reformulate for a merged subscription with a source/target
/// partition. Throws Error if a hard or user precedence joins a
/// source-only feature to a target-only one, or the partition does not
/// cover F.
BiRegionSubscription split_regions(const Subscription& sub, const std::set<FeatureId>& source,
                                   const std::set<FeatureId>& target);

/// Sum of kept weights. Throws Error on a feature or precedence that is
/// not part of the subscription.
Weight value_of(const Relaxation& relax, const Subscription& sub);

struct VerifyOk {
    Weight value = 0;
};
struct VerifyFailure {
    std::string reason;
};
using VerifyResult = std::variant<VerifyOk, VerifyFailure>;

/// Checks F' within F, P' within P restricted to F', and acyclicity of
/// <F', H|F' u P'>. Reports the first violated condition.
VerifyResult verify_relaxation(const Subscription& sub, const Relaxation& relax);

/// Builds a Relaxation (sorted, value filled in) from kept sets.
Relaxation make_relaxation(const Subscription& sub, std::vector<FeatureId> features,
                           std::vector<Precedence> precs);

}  // namespace fsp
