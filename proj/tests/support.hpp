#pragma once

// Independent reference computations and instance builders shared by the
// unit tests and the acceptance binary.

#include <cstdint>
#include <optional>
#include <vector>

#include "fsp/encoders.hpp"
#include "fsp/enumeration.hpp"
#include "fsp/model.hpp"
#include "fsp/rng.hpp"

namespace fsp::test {

/// Source {1,2,3}, target {2,3,4}, source hard 1<2, target hard 4<3.
BiRegionSubscription table1_instance();

/// Features 1..6, mutex pairs {1,2}, {3,4}, {5,6}, unit weights.
Subscription three_mutex_instance();

/// Features 1..3 (i, j, k), user precedences 1<2, 2<3, 3<1, unit weights.
Subscription three_cycle_instance();

/// Features 1..4 with mutex {1,2} and {3,4}.
Subscription two_mutex_instance();

/// Random subscription from the instance generator: catalogue of `fc`
/// features and `bc` constraints over `types`.
Subscription random_subscription(std::uint64_t seed, int fc, int bc, bool mutexes, int fu, int pu,
                                 Weight w);

/// Random bi-region subscription over ids 1..8 with each region of at most
/// `max_region` features.
BiRegionSubscription random_bi_region(Rng& rng, int max_region);

/// Acyclicity of a digraph on 0..n-1 by reachability closure.
bool closure_acyclic(int n, const std::vector<std::pair<int, int>>& edges);

/// Minimum feedback vertex set size of <F, H> by subset enumeration.
int min_feedback_vertex_set(const Subscription& sub);

/// Direct bi-region consistency: some valid source order and some valid
/// target order agree, reversed, on the reversible features.
bool bi_region_consistent_direct(const BiRegionSubscription& bi);

/// Minimum cost of a weighted clause set: enumerate the bf and user bp
/// variables, decide the rest by DPLL. nullopt when every assignment
/// violates a hard clause.
std::optional<Weight> maxsat_optimum(const WeightedClauseSet& cnf, const Subscription& sub);

/// Satisfiability of the hard clauses under a partial assignment
/// (value[v]: -1 free, 0, 1).
bool dpll(const WeightedClauseSet& cnf, std::vector<std::int8_t> value);

/// Minimum cost over all (|F|+1)^|F| assignments.
Weight wcsp_optimum(const WcspModel& m);

/// Minimum objective + offset over all assignments; nullopt if infeasible.
std::optional<std::int64_t> pb_optimum(const PbModel& pb);

/// Feasibility of the MIP's position system for fixed binaries, by
/// Bellman-Ford on the difference constraints.
bool mip_feasible(const MipModel& mip, const std::map<std::string, int>& binaries);

/// Objective value of fixed binaries.
std::int64_t mip_objective(const MipModel& mip, const std::map<std::string, int>& binaries);

/// Largest objective over feasible binary assignments.
std::int64_t mip_optimum(const MipModel& mip);

/// Checks the rows at an explicit point (binaries and positions).
bool mip_point_feasible(const MipModel& mip, const std::map<std::string, double>& point);

/// Binaries and positions realising `r`: kept features take topological
/// positions 1..|F'|, dropped ones position 1.
std::map<std::string, double> mip_point_of(const Subscription& sub, const Relaxation& r);

}  // namespace fsp::test
