#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "fsp/solver.hpp"

namespace fsp {

struct BenchMethod {
    Method method = Method::RSAC;
    Heuristic heuristic = Heuristic::DomWdeg;
};

/// "ac,rsac:dom-deg,softprec,oracle"; the heuristic defaults to
/// `fallback`. Throws Error on an unknown name.
std::vector<BenchMethod> parse_methods(const std::string& list, Heuristic fallback);

struct BenchRow {
    std::string instance;
    std::string cls;
    std::string method;
    std::string heuristic;
    std::uint64_t nodes = 0;
    double milliseconds = 0.0;
    Weight optimum = 0;
    bool completed = false;
    std::string status = "ok";  // ok | limit | error: ... | disagreement
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchRow> means;  // one per (class, method, heuristic)
    std::vector<std::string> disagreements;  // instances with conflicting optima

    std::string to_csv() const;
};

struct BenchInstance {
    std::string path;
    std::string cls;
};

/// `.fsp` files of `dir` in name order; classes come from manifest.json
/// when present, otherwise every instance is in class "all".
std::vector<BenchInstance> list_instances(const std::string& dir);

/// Solves every (instance, method) cell. `parallel` spreads cells over
/// OpenMP threads; rows come back in the same order either way.
BenchReport run_bench(const std::vector<BenchInstance>& instances,
                      const std::vector<BenchMethod>& methods,
                      std::chrono::milliseconds time_limit, bool parallel = true);

}  // namespace fsp
