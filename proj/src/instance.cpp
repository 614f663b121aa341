#include "fsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fsp/consistency.hpp"
#include "fsp/rng.hpp"

namespace fsp {

std::optional<PairType> parse_pair_type(const std::string& s) {
    if (s == "<") return PairType::Before;
    if (s == ">") return PairType::After;
    if (s == "<>") return PairType::Mutex;
    return std::nullopt;
}

std::string to_string(PairType t) {
    switch (t) {
        case PairType::Before: return "<";
        case PairType::After: return ">";
        case PairType::Mutex: return "<>";
    }
    return "?";
}

std::int64_t pair_index(int i, int j) {
    return static_cast<std::int64_t>(j - 1) * (j - 2) / 2 + (i - 1);
}

std::pair<int, int> pair_from_index(std::int64_t t) {
    // largest j with (j-1)(j-2)/2 <= t
    auto j = static_cast<std::int64_t>((3.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(t))) / 2.0);
    while ((j - 1) * (j - 2) / 2 > t) --j;
    while (j * (j - 1) / 2 <= t) ++j;
    return {static_cast<int>(t - (j - 1) * (j - 2) / 2 + 1), static_cast<int>(j)};
}

std::vector<std::int64_t> sample_without_replacement(Rng& rng, std::int64_t n, std::int64_t k) {
    std::vector<std::int64_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::int64_t a = 0; a < k; ++a) {
        auto b = a + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - a)));
        std::swap(pool[a], pool[b]);
    }
    pool.resize(k);
    return pool;
}

std::shared_ptr<const Catalogue> gen_catalogue(const CatalogueSpec& spec, std::uint64_t seed) {
    const std::int64_t n = spec.features;
    if (n < 0 || spec.constraints < 0 || spec.constraints > n * (n - 1) / 2)
        throw Error("catalogue spec: B_c must lie in [0, f_c(f_c-1)/2]");
    if (spec.types.empty()) throw Error("catalogue spec: empty type set");
    Rng rng(seed);
    const std::int64_t pairs = n * (n - 1) / 2;
    std::vector<std::int64_t> pool(pairs);
    std::iota(pool.begin(), pool.end(), 0);
    PrecSet hard;
    for (std::int64_t a = 0; a < spec.constraints; ++a) {
        auto b = a + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(pairs - a)));
        std::swap(pool[a], pool[b]);
        auto [i, j] = pair_from_index(pool[a]);
        PairType type = spec.types[rng.below(spec.types.size())];
        if (type != PairType::After) hard.insert(i, j);
        if (type != PairType::Before) hard.insert(j, i);
    }
    return Catalogue::create(static_cast<FeatureId>(n), std::move(hard));
}

Subscription gen_subscription(std::shared_ptr<const Catalogue> cat, const SubscriptionSpec& spec,
                              std::uint64_t seed) {
    const std::int64_t fu = spec.features;
    if (fu < 0 || fu > cat->n_features) throw Error("subscription spec: f_u exceeds f_c");
    if (spec.precs < 0 || spec.precs > fu * (fu - 1) / 2)
        throw Error("subscription spec: p_u exceeds f_u(f_u-1)/2");
    if (spec.max_weight < 1) throw Error("subscription spec: w must be >= 1");
    Rng rng(seed);

    auto picked = sample_without_replacement(rng, cat->n_features, fu);
    std::vector<FeatureId> ids;
    for (auto x : picked) ids.push_back(static_cast<FeatureId>(x + 1));
    std::sort(ids.begin(), ids.end());
    std::map<FeatureId, Weight> features;
    for (FeatureId f : ids) features[f] = rng.between(1, spec.max_weight);

    const std::int64_t pairs = fu * (fu - 1) / 2;
    std::vector<std::int64_t> pool(pairs);
    std::iota(pool.begin(), pool.end(), 0);
    std::map<Precedence, Weight> user;
    for (std::int64_t a = 0; a < spec.precs; ++a) {
        auto b = a + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(pairs - a)));
        std::swap(pool[a], pool[b]);
        auto [i, j] = pair_from_index(pool[a]);
        FeatureId x = ids[i - 1], y = ids[j - 1];
        if (rng.below(2)) std::swap(x, y);
        user[{x, y}] = rng.between(1, spec.max_weight);
    }
    return Subscription(std::move(cat), std::move(features), std::move(user));
}

Subscription Instance::subscription() const {
    if (!catalogue) throw Error("instance: missing catalogue");
    return Subscription(catalogue, features, user);
}

BiRegionSubscription Instance::bi_region() const {
    if (!source || !target) throw Error("instance: no source/target partition");
    return split_regions(subscription(), *source, *target);
}

Instance Instance::from(const Subscription& sub) {
    Instance inst;
    inst.catalogue = sub.catalogue_ptr();
    inst.features = sub.feature_weights();
    inst.user = sub.prec_weights();
    return inst;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

std::int64_t to_int(const std::string& s, int line) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
    if (used != s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
}

}  // namespace

Instance parse_fsp(std::istream& in) {
    Instance inst;
    std::optional<FeatureId> n;
    PrecSet hard;
    std::string line;
    int lineno = 0;

    auto need_catalogue = [&](int ln) {
        if (!n) throw ParseError(ln, "'catalogue' must come first");
    };
    auto feature_id = [&](const std::string& s, int ln) {
        auto v = to_int(s, ln);
        if (v < 1 || v > *n)
            throw ParseError(ln, "feature id " + s + " outside [1, " + std::to_string(*n) + "]");
        return static_cast<FeatureId>(v);
    };
    auto expect = [](const std::vector<std::string>& t, std::size_t k, int ln) {
        if (t.size() != k)
            throw ParseError(ln, "'" + t[0] + "' takes " + std::to_string(k - 1) + " arguments");
    };
    auto add_hard = [&](FeatureId i, FeatureId j, int ln) {
        if (i == j) throw ParseError(ln, "reflexive precedence on " + std::to_string(i));
        if (!hard.insert(i, j))
            throw ParseError(ln, "duplicate hard precedence " + std::to_string(i) + " " + std::to_string(j));
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto t = tokens_of(line);
        if (t.empty()) continue;
        const std::string& d = t[0];
        if (d == "catalogue") {
            expect(t, 2, lineno);
            if (n) throw ParseError(lineno, "duplicate 'catalogue'");
            auto v = to_int(t[1], lineno);
            if (v < 0) throw ParseError(lineno, "negative feature count");
            n = static_cast<FeatureId>(v);
        } else if (d == "hard" || d == "mutex") {
            need_catalogue(lineno);
            expect(t, 3, lineno);
            FeatureId i = feature_id(t[1], lineno), j = feature_id(t[2], lineno);
            add_hard(i, j, lineno);
            if (d == "mutex") add_hard(j, i, lineno);
        } else if (d == "feature") {
            need_catalogue(lineno);
            expect(t, 3, lineno);
            FeatureId f = feature_id(t[1], lineno);
            auto w = to_int(t[2], lineno);
            if (w < 1) throw ParseError(lineno, "weight must be >= 1");
            if (!inst.features.emplace(f, w).second)
                throw ParseError(lineno, "duplicate feature " + t[1]);
        } else if (d == "uprec") {
            need_catalogue(lineno);
            expect(t, 4, lineno);
            FeatureId i = feature_id(t[1], lineno), j = feature_id(t[2], lineno);
            if (i == j) throw ParseError(lineno, "reflexive precedence on " + t[1]);
            auto w = to_int(t[3], lineno);
            if (w < 1) throw ParseError(lineno, "weight must be >= 1");
            if (!inst.user.emplace(Precedence{i, j}, w).second)
                throw ParseError(lineno, "duplicate user precedence " + t[1] + " " + t[2]);
        } else if (d == "source" || d == "target") {
            need_catalogue(lineno);
            auto& region = d == "source" ? inst.source : inst.target;
            if (region) throw ParseError(lineno, "duplicate '" + d + "'");
            region.emplace();
            for (std::size_t k = 1; k < t.size(); ++k)
                if (!region->insert(feature_id(t[k], lineno)).second)
                    throw ParseError(lineno, "duplicate id " + t[k] + " in '" + d + "'");
        } else {
            throw ParseError(lineno, "unknown directive '" + d + "'");
        }
    }
    if (!n) throw ParseError(lineno, "missing 'catalogue'");
    if (inst.source.has_value() != inst.target.has_value())
        throw ParseError(lineno, "'source' and 'target' must be given together");
    for (const auto& [p, w] : inst.user)
        if (!inst.features.count(p.before) || !inst.features.count(p.after))
            throw ParseError(lineno, "user precedence " + to_string(p) + " references an unselected feature");
    inst.catalogue = Catalogue::create(*n, std::move(hard));
    return inst;
}

Instance parse_fsp(const std::string& text) {
    std::istringstream in(text);
    return parse_fsp(in);
}

Instance read_fsp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_fsp(in);
}

std::string write_fsp(const Instance& inst) {
    std::ostringstream out;
    out << "catalogue " << inst.catalogue->n_features << "\n";
    for (const auto& p : inst.catalogue->hard) {
        bool both = inst.catalogue->hard.contains(p.reversed());
        if (both && p.before < p.after) out << "mutex " << p.before << " " << p.after << "\n";
        else if (!both) out << "hard " << p.before << " " << p.after << "\n";
    }
    for (const auto& [f, w] : inst.features) out << "feature " << f << " " << w << "\n";
    for (const auto& [p, w] : inst.user) out << "uprec " << p.before << " " << p.after << " " << w << "\n";
    auto region = [&](const char* name, const std::optional<std::set<FeatureId>>& r) {
        if (!r) return;
        out << name;
        for (FeatureId f : *r) out << " " << f;
        out << "\n";
    };
    region("source", inst.source);
    region("target", inst.target);
    return out.str();
}

void write_fsp_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << write_fsp(inst);
}

std::string write_relaxation(const Relaxation& r) {
    std::ostringstream out;
    out << "value " << r.value << "\n";
    for (FeatureId f : r.kept_features) out << "feature " << f << "\n";
    for (const auto& p : r.kept_precs) out << "prec " << p.before << " " << p.after << "\n";
    return out.str();
}

Relaxation parse_relaxation(const std::string& text) {
    Relaxation r;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_value = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto t = tokens_of(line);
        if (t.empty()) continue;
        if (t[0] == "value" && t.size() == 2) {
            if (have_value) throw ParseError(lineno, "duplicate 'value'");
            r.value = to_int(t[1], lineno);
            have_value = true;
        } else if (t[0] == "feature" && t.size() == 2) {
            r.kept_features.push_back(static_cast<FeatureId>(to_int(t[1], lineno)));
        } else if (t[0] == "prec" && t.size() == 3) {
            r.kept_precs.push_back({static_cast<FeatureId>(to_int(t[1], lineno)),
                                    static_cast<FeatureId>(to_int(t[2], lineno))});
        } else {
            throw ParseError(lineno, "unexpected '" + t[0] + "'");
        }
    }
    if (!have_value) throw ParseError(lineno, "missing 'value'");
    std::sort(r.kept_features.begin(), r.kept_features.end());
    std::sort(r.kept_precs.begin(), r.kept_precs.end());
    return r;
}

}  // namespace fsp
