#pragma once

#include <cstdint>
#include <vector>

#include "fsp/enumeration.hpp"
#include "fsp/model.hpp"

namespace fsp {

/// Exhaustive optimum: feature subsets by ascending bitmask, then subsets
/// of the induced user precedences by ascending bitmask; the first
/// candidate reaching the maximum wins. Throws SizeGuardError when
/// |F| > 12 or |P| > 10.
Relaxation brute_force_optimal(const Subscription& sub);

/// Single-threaded reference for brute_force_optimal; same result.
Relaxation brute_force_optimal_serial(const Subscription& sub);

/// All compatible order pairs by filtering permutation pairs, sorted.
/// Throws SizeGuardError when a region has more than 7 features.
std::vector<OrderPair> brute_force_pairs(const BiRegionSubscription& bi);

/// True iff some permutation of F extends H u P. Guard |F| <= 8.
bool brute_force_consistency(const Subscription& sub);

/// Cycle check by depth-first search over adjacency bitmasks restricted to
/// `alive` (bit i = vertex i).
bool dfs_acyclic(const std::vector<std::uint32_t>& succ, std::uint32_t alive);

}  // namespace fsp
