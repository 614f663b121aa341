#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsp/model.hpp"

namespace fsp {

/// Clause groups, in emission order for the atom encoding.
enum class ClauseKind : std::uint8_t {
    Catalogue,     // (-bf_i | -bf_j | bp_ij) for (i,j) in H
    Asymmetry,     // (-bp_ij | -bp_ji)
    Transitivity,  // (-bp_ij | -bp_jk | bp_ik)
    Order,         // unary position bits: (-m_{k+1} | m_k)
    Position,      // bp_ij => position of i below position of j
    Tseitin,       // comparator gate definitions
    Support,       // (-bp_ij | bf_i), (-bp_ij | bf_j)
    Soft,          // (bf_i), (bp_ij)
};
std::string to_string(ClauseKind k);

/// DIMACS literal: +v or -v, v >= 1.
using Lit = int;

struct Clause {
    std::optional<Weight> weight;  // nullopt = hard
    std::vector<Lit> lits;
    ClauseKind kind = ClauseKind::Soft;

    bool hard() const { return !weight.has_value(); }
    bool operator==(const Clause& o) const { return weight == o.weight && lits == o.lits; }
};

struct WeightedClauseSet {
    int num_vars = 0;
    std::vector<Clause> clauses;
    std::vector<std::string> names;  // names[v-1]: bf_3, bp_1_2, pos_3_2, lt_1_2_1, ...
    std::map<FeatureId, int> feature_var;
    std::map<Precedence, int> prec_var;

    int new_var(std::string name);
    void add_hard(std::vector<Lit> lits, ClauseKind kind);
    void add_soft(Weight w, std::vector<Lit> lits);

    Weight soft_sum() const;
    /// Soft sum + 1.
    Weight top() const { return soft_sum() + 1; }
    std::size_t count(ClauseKind k) const;
    /// Sum of weights of soft clauses falsified by `assignment`, or nullopt if
    /// a hard clause is falsified. assignment[v] for v in 1..num_vars.
    std::optional<Weight> cost(const std::vector<bool>& assignment) const;
};

/// Atom-based encoding. `reduced` restricts the precedence variables to the
/// irreflexive closure of H u P and drops transitivity clauses made
/// redundant by H.
WeightedClauseSet encode_atom(const Subscription& sub, bool reduced);

/// Symbol-based encoding with n unary position bits per feature.
WeightedClauseSet encode_symbol_unary(const Subscription& sub);

/// Symbol-based encoding with ceil(log2 n) position bits per feature (at
/// least 1) and a Tseitin-flattened lexicographic comparator.
WeightedClauseSet encode_symbol_binary(const Subscription& sub);

/// Position bit width used by the binary encoding.
int binary_width(int n);
/// "11100000" for (3, 8).
std::string unary_code(int value, int width);
/// "101" for (5, 3); most significant bit first.
std::string binary_code(int value, int width);
int decode_unary(const std::string& bits);
int decode_binary(const std::string& bits);

struct UpResult {
    bool conflict = false;
    std::vector<std::int8_t> value;  // index v: -1 unassigned, 0 false, 1 true
};

/// Unit propagation over the hard clauses of `cnf` from `assumptions`.
UpResult unit_propagate(const WeightedClauseSet& cnf, const std::vector<Lit>& assumptions);

/// F' = {bf true}, P' = {p in P : bp true}. Throws Error when `assignment`
/// falsifies a hard clause.
Relaxation decode_relaxation(const Subscription& sub, const WeightedClauseSet& cnf,
                             const std::vector<bool>& assignment);

// ---- pseudo-Boolean -------------------------------------------------------

struct PbTerm {
    std::int64_t coef = 0;
    int var = 0;
    bool operator==(const PbTerm&) const = default;
};

struct PbConstraint {
    std::vector<PbTerm> terms;
    std::int64_t rhs = 0;  // sum(terms) >= rhs
    bool operator==(const PbConstraint&) const = default;
};

struct PbModel {
    int num_vars = 0;
    std::vector<PbTerm> objective;  // minimised
    std::int64_t offset = 0;        // cost = objective + offset
    std::vector<PbConstraint> constraints;

    bool operator==(const PbModel&) const = default;
    /// Objective value plus offset, or nullopt when infeasible.
    std::optional<std::int64_t> cost(const std::vector<bool>& assignment) const;
};

/// Hard clauses become sum >= 1 constraints; unit soft clauses contribute
/// w(1-l) to the objective directly, longer ones through a fresh indicator.
PbModel to_pseudo_boolean(const WeightedClauseSet& cnf);

// ---- WCSP -----------------------------------------------------------------

struct CostTable {
    std::vector<int> scope;    // 0-based variable indices
    std::vector<Weight> costs;  // row-major over the scope's domains
    bool operator==(const CostTable&) const = default;
};

struct WcspModel {
    std::string name = "fsp";
    std::vector<int> domains;  // |F| + 1 each
    Weight k = 0;
    std::vector<CostTable> tables;

    bool operator==(const WcspModel&) const = default;
    /// Saturated sum min(k, ...). values[i] is in [0, domains[i]).
    Weight cost(const std::vector<int>& values) const;
};

/// One variable per feature with domain {0..|F|}; unary, hard and user
/// precedence cost tables; k = total weight.
WcspModel encode_wcsp(const Subscription& sub);

/// F' = {pf > 0}, P' = {(i,j) in P : 0 < pf_i < pf_j}.
Relaxation decode_wcsp(const Subscription& sub, const std::vector<int>& values);

// ---- MIP ------------------------------------------------------------------

struct LinearTerm {
    std::int64_t coef = 0;
    std::string var;
    bool operator==(const LinearTerm&) const = default;
};

struct MipRow {
    std::string name;
    std::vector<LinearTerm> terms;
    std::int64_t rhs = 0;  // sum(terms) <= rhs
    bool operator==(const MipRow&) const = default;
};

struct MipModel {
    int n = 0;
    std::vector<LinearTerm> objective;  // maximised
    std::vector<MipRow> rows;
    std::vector<std::string> binaries;
    std::vector<std::string> positions;  // continuous in [1, n]

    bool operator==(const MipModel&) const = default;
};

/// One big-M row per hard precedence (h_i_j) and three per user precedence
/// (p_i_j, s_i_j_a, s_i_j_b).
MipModel encode_mip(const Subscription& sub);

std::string bf_name(FeatureId f);
std::string bp_name(Precedence p);
std::string pf_name(FeatureId f);

}  // namespace fsp
