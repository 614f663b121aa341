#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsp/model.hpp"

namespace fsp {

/// Three-valued Boolean domain.
enum class Tri : std::int8_t { Out = 0, In = 1, Unknown = 2 };

struct Interval {
    int lo = 1;
    int hi = 1;
    bool empty() const { return lo > hi; }
    bool operator==(const Interval&) const = default;
};

/// Domains of the basic model: inclusion Booleans for features and user
/// precedences, position intervals, and bounds on the objective v.
struct SearchState {
    std::vector<Tri> bf;
    std::vector<Tri> bp;
    std::vector<Interval> pf;
    Weight lb = 0;
    Weight ub = 0;

    /// Boolean variable b: features first, then user precedences.
    Tri boolean(int b) const {
        const auto m = static_cast<int>(bf.size());
        return b < m ? bf[b] : bp[b - m];
    }
    Tri& boolean(int b) {
        const auto m = static_cast<int>(bf.size());
        return b < m ? bf[b] : bp[b - m];
    }
    int num_booleans() const { return static_cast<int>(bf.size() + bp.size()); }
};

enum class Level { AC, RSAC, SAC };
enum class Heuristic { DomDeg, DomWdeg };
enum class Method { AC, RSAC, SAC, Softprec, Oracle };

std::string to_string(Level level);
std::string to_string(Heuristic h);
std::string to_string(Method m);
std::optional<Method> parse_method(const std::string& s);
std::optional<Heuristic> parse_heuristic(const std::string& s);

struct SolverConfig {
    Level level = Level::RSAC;
    Heuristic heuristic = Heuristic::DomWdeg;
    /// Use the SOFTPREC propagator instead of the basic model; `level` is
    /// then ignored.
    bool softprec = false;
    std::chrono::milliseconds time_limit{60'000};
    std::uint64_t node_limit = 0;  // 0 = unlimited
    std::uint64_t seed = 0;        // reserved
};

struct SearchStats {
    std::uint64_t nodes = 0;
    double milliseconds = 0.0;
    /// (node count, value) each time the incumbent improved.
    std::vector<std::pair<std::uint64_t, Weight>> trace;
};

struct SolveResult {
    Relaxation relaxation;
    SearchStats stats;
    bool completed = true;  // false when a limit stopped the search
};

/// Constraint network of the basic optimisation model for one
/// subscription: hard precedences bf_i & bf_j => pf_i < pf_j, user
/// precedences bp_ij <=> (bf_i & bf_j & pf_i < pf_j), and v decomposed
/// into the two linear inequalities.
class CopModel {
public:
    explicit CopModel(const Subscription& sub);

    const Subscription& subscription() const { return *sub_; }
    int num_features() const { return m_; }
    int num_precs() const { return static_cast<int>(precs_.size()); }
    int num_booleans() const { return m_ + num_precs(); }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }
    Precedence prec(int k) const { return precs_[k]; }

    /// All Booleans unknown, pf in [1, |F|], v in [0, total weight].
    SearchState initial_state() const;

    /// Arc consistency to fixpoint. `touched` lists Boolean variables whose
    /// domains changed since the last fixpoint; empty means revise every
    /// constraint. Returns false on a wipe-out.
    bool propagate_ac(SearchState& s, const std::vector<int>& touched = {});

    /// Singleton consistency on the Booleans followed by AC. `restricted`
    /// gives one pass over the variable/value pairs; otherwise any removal
    /// restarts the pass until nothing changes.
    bool propagate_singleton(SearchState& s, bool restricted);

    /// Unknown Boolean minimising dom/deg or dom/wdeg, ties to the smallest
    /// index; nullopt when every Boolean is assigned.
    std::optional<int> choose_variable(const SearchState& s, Heuristic h) const;

    int degree(int boolean) const { return static_cast<int>(bool_watch_[boolean].size()); }
    std::int64_t weighted_degree(const SearchState& s, int boolean) const;
    std::int64_t constraint_weight(int c) const { return weights_[c]; }
    /// Constraint ids that mention Boolean `b`.
    const std::vector<int>& constraints_of(int boolean) const { return bool_watch_[boolean]; }

    /// Counts wipe-outs per constraint (dom/wdeg bookkeeping).
    void reset_weights();

    /// Relaxation read off a fully assigned state.
    Relaxation extract(const SearchState& s) const;

private:
    enum class Kind : std::uint8_t { Hard, User, Objective };
    struct Constraint {
        Kind kind;
        int i = -1, j = -1;  // feature indices
        int k = -1;          // user precedence index
    };

    bool revise(int c, SearchState& s, std::vector<int>& changed_bools,
                std::vector<int>& changed_pos);
    bool revise_hard(const Constraint& c, SearchState& s, std::vector<int>& cb,
                     std::vector<int>& cp);
    bool revise_user(const Constraint& c, SearchState& s, std::vector<int>& cb,
                     std::vector<int>& cp);
    bool revise_objective(SearchState& s, std::vector<int>& cb);
    int uninstantiated(const Constraint& c, const SearchState& s) const;

    const Subscription* sub_;
    int m_ = 0;
    std::vector<Precedence> precs_;
    std::vector<Weight> bool_weight_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<int>> bool_watch_;
    std::vector<std::vector<int>> pos_watch_;
    std::vector<std::int64_t> weights_;
    int objective_ = -1;
};

/// Optimal relaxation by depth-first branch and bound. Branches on the
/// Booleans only, `in` before `out`; a node is pruned when its upper bound
/// does not exceed the incumbent.
SolveResult solve(const Subscription& sub, const SolverConfig& config = {});

}  // namespace fsp
