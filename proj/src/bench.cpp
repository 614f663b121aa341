#include "fsp/bench.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fsp/instance.hpp"
#include "fsp/oracle.hpp"

namespace fsp {

std::vector<BenchMethod> parse_methods(const std::string& list, Heuristic fallback) {
    std::vector<BenchMethod> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        BenchMethod bm;
        bm.heuristic = fallback;
        std::string name = item;
        if (auto colon = item.find(':'); colon != std::string::npos) {
            name = item.substr(0, colon);
            auto h = parse_heuristic(item.substr(colon + 1));
            if (!h) throw Error("unknown heuristic in '" + item + "'");
            bm.heuristic = *h;
        }
        auto m = parse_method(name);
        if (!m) throw Error("unknown method '" + name + "'");
        bm.method = *m;
        out.push_back(bm);
    }
    if (out.empty()) throw Error("empty method list");
    return out;
}

std::vector<BenchInstance> list_instances(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<BenchInstance> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".fsp")
            out.push_back({e.path().string(), "all"});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });

    const fs::path manifest = fs::path(dir) / "manifest.json";
    if (fs::exists(manifest)) {
        std::ifstream in(manifest);
        auto j = nlohmann::json::parse(in);
        std::map<std::string, std::string> cls;
        for (const auto& inst : j.value("instances", nlohmann::json::array()))
            cls[inst.at("file").get<std::string>()] = inst.value("class", "all");
        for (auto& bi : out) {
            auto it = cls.find(fs::path(bi.path).filename().string());
            if (it != cls.end()) bi.cls = it->second;
        }
    }
    return out;
}

namespace {

BenchRow run_cell(const BenchInstance& inst, const BenchMethod& bm,
                  std::chrono::milliseconds limit) {
    BenchRow row;
    row.instance = std::filesystem::path(inst.path).filename().string();
    row.cls = inst.cls;
    row.method = to_string(bm.method);
    row.heuristic = bm.method == Method::Oracle ? "-" : to_string(bm.heuristic);
    try {
        Subscription sub = read_fsp_file(inst.path).subscription();
        if (bm.method == Method::Oracle) {
            auto t0 = std::chrono::steady_clock::now();
            Relaxation r = brute_force_optimal_serial(sub);
            row.milliseconds =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            row.optimum = r.value;
            row.completed = true;
            return row;
        }
        SolverConfig cfg;
        cfg.heuristic = bm.heuristic;
        cfg.time_limit = limit;
        cfg.softprec = bm.method == Method::Softprec;
        if (bm.method == Method::AC) cfg.level = Level::AC;
        if (bm.method == Method::RSAC) cfg.level = Level::RSAC;
        if (bm.method == Method::SAC) cfg.level = Level::SAC;
        SolveResult res = solve(sub, cfg);
        row.nodes = res.stats.nodes;
        row.milliseconds = res.stats.milliseconds;
        row.optimum = res.relaxation.value;
        row.completed = res.completed;
        if (!res.completed) row.status = "limit";
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    return row;
}

}  // namespace

BenchReport run_bench(const std::vector<BenchInstance>& instances,
                      const std::vector<BenchMethod>& methods, std::chrono::milliseconds time_limit,
                      bool parallel) {
    const auto cells = static_cast<std::int64_t>(instances.size() * methods.size());
    BenchReport report;
    report.rows.resize(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t c = 0; c < cells; ++c) {
        const auto i = static_cast<std::size_t>(c) / methods.size();
        const auto m = static_cast<std::size_t>(c) % methods.size();
        report.rows[static_cast<std::size_t>(c)] = run_cell(instances[i], methods[m], time_limit);
    }

    for (std::size_t i = 0; i < instances.size(); ++i) {
        std::optional<Weight> seen;
        bool conflict = false;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            const auto& r = report.rows[i * methods.size() + m];
            if (!r.completed) continue;
            if (seen && *seen != r.optimum) conflict = true;
            seen = r.optimum;
        }
        if (!conflict) continue;
        report.disagreements.push_back(report.rows[i * methods.size()].instance);
        for (std::size_t m = 0; m < methods.size(); ++m) {
            auto& r = report.rows[i * methods.size() + m];
            if (r.completed) r.status = "disagreement";
        }
    }

    std::map<std::tuple<std::string, std::string, std::string>, std::vector<const BenchRow*>> groups;
    std::vector<std::tuple<std::string, std::string, std::string>> order;
    for (const auto& r : report.rows) {
        auto key = std::make_tuple(r.cls, r.method, r.heuristic);
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&r);
    }
    for (const auto& key : order) {
        const auto& g = groups[key];
        BenchRow mean;
        mean.instance = "MEAN";
        std::tie(mean.cls, mean.method, mean.heuristic) = key;
        double nodes = 0, ms = 0, opt = 0;
        bool all = true;
        for (const auto* r : g) {
            nodes += static_cast<double>(r->nodes);
            ms += r->milliseconds;
            opt += static_cast<double>(r->optimum);
            all = all && r->completed;
        }
        const double n = static_cast<double>(g.size());
        mean.nodes = static_cast<std::uint64_t>(nodes / n + 0.5);
        mean.milliseconds = ms / n;
        mean.optimum = static_cast<Weight>(opt / n + 0.5);
        mean.completed = all;
        mean.status = "mean of " + std::to_string(g.size());
        report.means.push_back(mean);
    }
    return report;
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "instance,class,method,heuristic,nodes,ms,optimum,completed,status\n";
    auto line = [&](const BenchRow& r) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        out << r.instance << "," << r.cls << "," << r.method << "," << r.heuristic << "," << r.nodes
            << "," << r.milliseconds << "," << r.optimum << "," << (r.completed ? 1 : 0) << ","
            << status << "\n";
    };
    for (const auto& r : rows) line(r);
    for (const auto& r : means) line(r);
    return out.str();
}

}  // namespace fsp
