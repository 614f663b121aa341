#pragma once

// Depth-first branch and bound shared by the basic model and SOFTPREC.
//
// A Search type provides:
//   State initial_state();
//   bool propagate(State&, Weight lb, std::optional<int> branched);
//   std::optional<int> choose(const State&);
//   void assign(State&, int var, bool value);
//   Relaxation extract(const State&);

#include <chrono>
#include <optional>

#include "fsp/solver.hpp"

namespace fsp::detail {

template <typename Search>
class BranchAndBound {
public:
    BranchAndBound(Search& search, const SolverConfig& config) : search_(search), config_(config) {}

    SolveResult run() {
        start_ = std::chrono::steady_clock::now();
        dfs(search_.initial_state(), std::nullopt);
        SolveResult out;
        out.relaxation = best_;
        out.stats = stats_;
        out.stats.milliseconds =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
                .count();
        out.completed = !aborted_;
        return out;
    }

private:
    using State = typename Search::State;

    bool out_of_budget() {
        if (config_.node_limit && stats_.nodes >= config_.node_limit) return true;
        if (config_.time_limit.count() > 0 &&
            std::chrono::steady_clock::now() - start_ >= config_.time_limit)
            return true;
        return false;
    }

    void dfs(State s, std::optional<int> branched) {
        if (aborted_) return;
        if (out_of_budget()) {
            aborted_ = true;
            return;
        }
        ++stats_.nodes;
        if (!search_.propagate(s, best_value_ + 1, branched)) return;
        auto var = search_.choose(s);
        if (!var) {
            Relaxation r = search_.extract(s);
            if (r.value > best_value_) {
                best_value_ = r.value;
                best_ = std::move(r);
                stats_.trace.emplace_back(stats_.nodes, best_value_);
            }
            return;
        }
        for (bool value : {true, false}) {
            State child = s;
            search_.assign(child, *var, value);
            dfs(std::move(child), var);
            if (aborted_) return;
        }
    }

    Search& search_;
    const SolverConfig& config_;
    std::chrono::steady_clock::time_point start_;
    SearchStats stats_;
    Relaxation best_;
    Weight best_value_ = -1;
    bool aborted_ = false;
};

}  // namespace fsp::detail
