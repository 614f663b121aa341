#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fsp/model.hpp"
#include "fsp/solver.hpp"

namespace fsp {

/// Three-valued |F| x |F| matrix over feature indices; entry (i,j) true
/// means i is ordered before j. The diagonal is false.
class OrderMatrix {
public:
    OrderMatrix() = default;
    explicit OrderMatrix(int m) : m_(m), cells_(static_cast<std::size_t>(m) * m, Tri::Unknown) {
        for (int i = 0; i < m; ++i) cells_[idx(i, i)] = Tri::Out;
    }
    int size() const { return m_; }
    Tri at(int i, int j) const { return cells_[idx(i, j)]; }
    Tri& at(int i, int j) { return cells_[idx(i, j)]; }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * m_ + j; }
    int m_ = 0;
    std::vector<Tri> cells_;
};

/// Undirected pairs of feature indices that cannot both be included.
struct IncompatibilityGraph {
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
};

struct SoftprecState {
    std::vector<Tri> bf;
    OrderMatrix order;
    Weight lb = 0;
    Weight ub = 0;
    IncompatibilityGraph incompatible;  // rebuilt by every propagate()
};

/// Single global constraint over the feature Booleans and the order
/// matrix. Decision variables: features first, then the matrix entries of
/// the user precedences in sorted order.
class SoftprecModel {
public:
    explicit SoftprecModel(const Subscription& sub);

    const Subscription& subscription() const { return *sub_; }
    int num_features() const { return m_; }
    int num_booleans() const { return m_ + static_cast<int>(precs_.size()); }

    SoftprecState initial_state() const;

    /// Filtering to fixpoint followed by the bound checks. Returns false on
    /// failure.
    bool propagate(SoftprecState& s) const;

    /// Sum of non-out items minus a greedy matching penalty over the
    /// incompatibility graph.
    Weight upper_bound(const SoftprecState& s) const;

    Tri boolean(const SoftprecState& s, int b) const;
    void assign(SoftprecState& s, int b, bool value) const;
    /// Unknown decision variable with the largest static degree, ties to
    /// the smallest index.
    std::optional<int> choose_variable(const SoftprecState& s) const;
    Relaxation extract(const SoftprecState& s) const;

private:
    bool filter(SoftprecState& s) const;
    Weight optimistic_sum(const SoftprecState& s) const;

    const Subscription* sub_;
    int m_ = 0;
    std::vector<Precedence> precs_;
    std::vector<std::pair<int, int>> prec_cells_;
    std::vector<Weight> fw_, pw_;
    std::vector<char> hard_;  // m x m
    std::vector<int> degree_;
};

/// Runs the filtering rules on `s`; same as SoftprecModel(sub).propagate(s).
bool softprec_propagate(SoftprecState& s, const Subscription& sub);

/// Same as SoftprecModel(sub).upper_bound(s).
Weight upper_bound(const SoftprecState& s, const Subscription& sub);

}  // namespace fsp
