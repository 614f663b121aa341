// fsp: command-line front end for the feature subscription toolkit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsp/bench.hpp"
#include "fsp/consistency.hpp"
#include "fsp/enumeration.hpp"
#include "fsp/instance.hpp"
#include "fsp/model_io.hpp"
#include "fsp/oracle.hpp"
#include "fsp/solver.hpp"

namespace {

using namespace fsp;

constexpr int kOk = 0;
constexpr int kVerdict = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("bad integer '" + s + "' in " + what);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Instance load(const std::string& path) {
    try {
        return read_fsp_file(path);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

int cmd_gen(const std::string& cat_spec, const std::string& sub_spec, std::uint64_t seed, int count,
            const std::string& out_dir, std::string cls) {
    auto c = split(cat_spec, ',');
    if (c.size() < 3) throw UsageError("--catalogue expects f,B,type[,type...]");
    CatalogueSpec cs{to_int(c[0], "--catalogue"), to_int(c[1], "--catalogue"), {}};
    for (std::size_t k = 2; k < c.size(); ++k) {
        auto t = parse_pair_type(c[k]);
        if (!t) throw UsageError("unknown constraint type '" + c[k] + "'");
        cs.types.push_back(*t);
    }
    auto s = split(sub_spec, ',');
    if (s.size() != 3) throw UsageError("--sub expects f,p,w");
    SubscriptionSpec ss{to_int(s[0], "--sub"), to_int(s[1], "--sub"), to_int(s[2], "--sub")};
    if (cls.empty()) cls = s[0] + "-" + s[1] + "-" + s[2];

    auto cat = gen_catalogue(cs, seed);
    std::filesystem::create_directories(out_dir);
    nlohmann::json manifest;
    manifest["catalogue"] = {{"features", cs.features}, {"constraints", cs.constraints}};
    for (auto t : cs.types) manifest["catalogue"]["types"].push_back(to_string(t));
    manifest["subscription"] = {{"features", ss.features}, {"precs", ss.precs}, {"max_weight", ss.max_weight}};
    manifest["seed"] = seed;
    manifest["instances"] = nlohmann::json::array();
    for (int k = 0; k < count; ++k) {
        const std::uint64_t sub_seed = seed + static_cast<std::uint64_t>(k) + 1;
        Subscription sub = gen_subscription(cat, ss, sub_seed);
        char name[32];
        std::snprintf(name, sizeof name, "inst_%03d.fsp", k);
        write_fsp_file(Instance::from(sub), (std::filesystem::path(out_dir) / name).string());
        manifest["instances"].push_back({{"file", name}, {"seed", sub_seed}, {"class", cls}});
    }
    write_text((std::filesystem::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    std::cout << "wrote " << count << " instances to " << out_dir << "\n";
    return kOk;
}

int cmd_check(const std::string& file) {
    auto r = is_consistent(load(file).subscription());
    if (!r.consistent) {
        std::cout << "inconsistent\n";
        return kVerdict;
    }
    std::cout << "consistent\norder " << to_string(*r.witness) << "\n";
    return kOk;
}

int cmd_complete(const std::string& file) {
    auto sub = load(file).subscription();
    try {
        std::cout << to_string(complete(sub)) << "\n";
    } catch (const InconsistentError&) {
        std::cout << "inconsistent\n";
        return kVerdict;
    }
    return kOk;
}

int cmd_antisub(const std::string& file) {
    auto sub = load(file).subscription();
    AntiSubscription a;
    try {
        a = anti_subscription(sub);
    } catch (const InconsistentError&) {
        std::cout << "inconsistent\n";
        return kVerdict;
    }
    std::cout << "# size " << a.size() << "\n";
    for (FeatureId f : a.blocked_features) std::cout << "feature " << f << "\n";
    for (const auto& p : a.blocked_precs) std::cout << "prec " << p.before << " " << p.after << "\n";
    return kOk;
}

int cmd_enumerate(const std::string& file, std::optional<std::size_t> limit, bool rank) {
    auto inst = load(file);
    if (!inst.source) throw UsageError(file + ": enumeration needs 'source' and 'target' lines");
    auto bi = inst.bi_region();
    std::vector<OrderPair> pairs;
    try {
        pairs = get_solutions(bi, limit);
    } catch (const InconsistentError&) {
        std::cout << "inconsistent\n";
        return kVerdict;
    }
    std::vector<std::size_t> keys;
    if (rank) {
        for (const auto& p : pairs) keys.push_back(pair_anti_subscription_size(inst.catalogue, bi, p));
        std::vector<std::size_t> idx(pairs.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
        std::vector<OrderPair> sorted;
        std::vector<std::size_t> sorted_keys;
        for (auto k : idx) {
            sorted.push_back(pairs[k]);
            sorted_keys.push_back(keys[k]);
        }
        pairs = std::move(sorted);
        keys = std::move(sorted_keys);
    }
    std::cout << "# pairs " << pairs.size() << "\n";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::cout << "source " << to_string(pairs[k].source_order) << " | target "
                  << to_string(pairs[k].target_order);
        if (rank) std::cout << " | antisub " << keys[k];
        std::cout << "\n";
    }
    return kOk;
}

int cmd_relax(const std::string& file, const std::string& method_name, const std::string& heur_name,
              double time_limit, const std::string& out) {
    auto method = parse_method(method_name);
    if (!method) throw UsageError("unknown method '" + method_name + "'");
    auto heuristic = parse_heuristic(heur_name);
    if (!heuristic) throw UsageError("unknown heuristic '" + heur_name + "'");
    auto sub = load(file).subscription();

    std::ostringstream text;
    Relaxation r;
    bool completed = true;
    if (*method == Method::Oracle) {
        try {
            r = brute_force_optimal(sub);
        } catch (const SizeGuardError& e) {
            throw UsageError(e.what());
        }
        text << "# method oracle\n";
    } else {
        SolverConfig cfg;
        cfg.heuristic = *heuristic;
        cfg.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
        cfg.softprec = *method == Method::Softprec;
        cfg.level = *method == Method::AC ? Level::AC : *method == Method::SAC ? Level::SAC : Level::RSAC;
        auto res = solve(sub, cfg);
        r = res.relaxation;
        completed = res.completed;
        text << "# method " << to_string(*method) << " heuristic " << to_string(*heuristic) << "\n"
             << "# nodes " << res.stats.nodes << " ms " << res.stats.milliseconds << " completed "
             << (completed ? 1 : 0) << "\n";
    }
    text << write_relaxation(r);
    write_text(out, text.str());
    if (!completed) std::cerr << "limit reached; reporting the best relaxation found\n";
    return completed ? kOk : kVerdict;
}

int cmd_verify(const std::string& file, const std::string& relax_file) {
    auto sub = load(file).subscription();
    Relaxation r;
    try {
        r = parse_relaxation(read_text(relax_file));
    } catch (const ParseError& e) {
        throw UsageError(relax_file + ": " + e.what());
    }
    auto v = verify_relaxation(sub, r);
    if (auto* bad = std::get_if<VerifyFailure>(&v)) {
        std::cout << "invalid: " << bad->reason << "\n";
        return kVerdict;
    }
    const Weight value = std::get<VerifyOk>(v).value;
    if (value != r.value) {
        std::cout << "invalid: stated value " << r.value << " but kept weight is " << value << "\n";
        return kVerdict;
    }
    std::cout << "ok value " << value << "\n";
    return kOk;
}

int cmd_encode(const std::string& file, const std::string& to, bool reduced, const std::string& out) {
    auto fmt = parse_encode_format(to);
    if (!fmt) throw UsageError("unknown format '" + to + "'");
    write_text(out, encode_to(load(file).subscription(), *fmt, reduced));
    return kOk;
}

int cmd_bench(const std::string& dir, const std::string& methods, const std::string& heur_name,
              double time_limit, const std::string& report, bool serial) {
    auto heuristic = parse_heuristic(heur_name);
    if (!heuristic) throw UsageError("unknown heuristic '" + heur_name + "'");
    std::vector<BenchMethod> ms;
    try {
        ms = parse_methods(methods, *heuristic);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (!std::filesystem::is_directory(dir)) throw UsageError(dir + " is not a directory");
    auto instances = list_instances(dir);
    auto rep = run_bench(instances, ms,
                         std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000)), !serial);
    write_text(report, rep.to_csv());
    std::cout << instances.size() << " instances, " << rep.rows.size() << " rows, "
              << rep.disagreements.size() << " disagreements\n";
    for (const auto& d : rep.disagreements) std::cout << "disagreement " << d << "\n";
    return rep.disagreements.empty() ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature subscription toolkit"};
    app.require_subcommand(1);

    std::string file, file2, out = "-", method = "rsac", heuristic = "dom-wdeg", to, dir,
                methods = "ac,rsac,sac,softprec", report = "-", cat_spec, sub_spec, cls;
    double time_limit = 60.0;
    std::uint64_t seed = 1;
    int count = 10;
    std::size_t limit = 0;
    bool rank = false, reduced = false, serial = false;

    auto* gen = app.add_subcommand("gen", "Generate random instances");
    gen->add_option("--catalogue", cat_spec, "f_c,B_c,type[,type...] with types <, >, <>")->required();
    gen->add_option("--sub", sub_spec, "f_u,p_u,w")->required();
    gen->add_option("--seed", seed, "Seed");
    gen->add_option("--count", count, "Number of subscriptions");
    gen->add_option("--out", dir, "Output directory")->required();
    gen->add_option("--class", cls, "Class label for the manifest");

    auto* check = app.add_subcommand("check", "Consistency check with a witness order");
    check->add_option("file", file)->required();
    auto* comp = app.add_subcommand("complete", "Deterministic total order");
    comp->add_option("file", file)->required();
    auto* anti = app.add_subcommand("antisub", "Anti-subscription");
    anti->add_option("file", file)->required();

    auto* en = app.add_subcommand("enumerate", "Compatible source/target order pairs");
    en->add_option("file", file)->required();
    en->add_option("--limit", limit, "Stop after K pairs");
    en->add_flag("--rank", rank, "Sort by anti-subscription size");

    auto* relax = app.add_subcommand("relax", "Optimal relaxation");
    relax->add_option("file", file)->required();
    relax->add_option("--method", method, "ac|rsac|sac|softprec|oracle");
    relax->add_option("--heuristic", heuristic, "dom-deg|dom-wdeg");
    relax->add_option("--time-limit", time_limit, "Seconds");
    relax->add_option("--out", out, "Output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "Check a relaxation file");
    ver->add_option("file", file)->required();
    ver->add_option("relaxation", file2)->required();

    auto* enc = app.add_subcommand("encode", "Write a solver model");
    enc->add_option("file", file)->required();
    enc->add_option("--to", to, "wcnf-atom|wcnf-unary|wcnf-binary|opb|lp|wcsp")->required();
    enc->add_flag("--reduced", reduced, "Reduced atom encoding");
    enc->add_option("--out", out, "Output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "Solve a directory of instances");
    bench->add_option("dir", dir)->required();
    bench->add_option("--methods", methods, "Comma list, method[:heuristic]");
    bench->add_option("--heuristic", heuristic, "Default heuristic");
    bench->add_option("--time-limit", time_limit, "Seconds per solve");
    bench->add_option("--report", report, "CSV output (default stdout)");
    bench->add_flag("--serial", serial, "Run cells one at a time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) return cmd_gen(cat_spec, sub_spec, seed, count, dir, cls);
        if (*check) return cmd_check(file);
        if (*comp) return cmd_complete(file);
        if (*anti) return cmd_antisub(file);
        if (*en) return cmd_enumerate(file, limit ? std::optional<std::size_t>(limit) : std::nullopt, rank);
        if (*relax) return cmd_relax(file, method, heuristic, time_limit, out);
        if (*ver) return cmd_verify(file, file2);
        if (*enc) return cmd_encode(file, to, reduced, out);
        if (*bench) return cmd_bench(dir, methods, heuristic, time_limit, report, serial);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
