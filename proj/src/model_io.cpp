#include "fsp/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace fsp {

std::optional<EncodeFormat> parse_encode_format(const std::string& s) {
    if (s == "wcnf-atom") return EncodeFormat::WcnfAtom;
    if (s == "wcnf-unary") return EncodeFormat::WcnfUnary;
    if (s == "wcnf-binary") return EncodeFormat::WcnfBinary;
    if (s == "opb") return EncodeFormat::Opb;
    if (s == "lp") return EncodeFormat::Lp;
    if (s == "wcsp") return EncodeFormat::Wcsp;
    return std::nullopt;
}

std::string to_string(EncodeFormat f) {
    switch (f) {
        case EncodeFormat::WcnfAtom: return "wcnf-atom";
        case EncodeFormat::WcnfUnary: return "wcnf-unary";
        case EncodeFormat::WcnfBinary: return "wcnf-binary";
        case EncodeFormat::Opb: return "opb";
        case EncodeFormat::Lp: return "lp";
        case EncodeFormat::Wcsp: return "wcsp";
    }
    return "?";
}

namespace {

constexpr ClauseKind kAllKinds[] = {ClauseKind::Catalogue, ClauseKind::Asymmetry,
                                    ClauseKind::Transitivity, ClauseKind::Order,
                                    ClauseKind::Position, ClauseKind::Tseitin,
                                    ClauseKind::Support, ClauseKind::Soft};

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

std::int64_t to_i64(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        auto v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(std::string(what) + ": bad integer '" + s + "'");
}

// Parses "bf_3" / "bp_1_2" into the problem-variable maps.
void register_role(WeightedClauseSet& w, const std::string& name, int var) {
    if (name.rfind("bf_", 0) == 0) {
        w.feature_var[static_cast<FeatureId>(to_i64(name.substr(3), "wcnf"))] = var;
    } else if (name.rfind("bp_", 0) == 0) {
        auto rest = name.substr(3);
        auto us = rest.find('_');
        if (us == std::string::npos) throw Error("wcnf: bad role " + name);
        Precedence p{static_cast<FeatureId>(to_i64(rest.substr(0, us), "wcnf")),
                     static_cast<FeatureId>(to_i64(rest.substr(us + 1), "wcnf"))};
        w.prec_var[p] = var;
    }
}

}  // namespace

std::string write_wcnf(const WeightedClauseSet& w) {
    std::ostringstream out;
    out << "c feature subscription relaxation, weighted partial MaxSAT\n";
    out << "c census";
    for (ClauseKind k : kAllKinds) out << " " << to_string(k) << "=" << w.count(k);
    out << "\n";
    for (int v = 1; v <= w.num_vars; ++v) out << "c var " << v << " " << w.names[v - 1] << "\n";
    const Weight top = w.top();
    out << "p wcnf " << w.num_vars << " " << w.clauses.size() << " " << top << "\n";
    for (const auto& c : w.clauses) {
        out << (c.hard() ? top : *c.weight);
        for (Lit l : c.lits) out << " " << l;
        out << " 0\n";
    }
    return out.str();
}

WeightedClauseSet read_wcnf(const std::string& text) {
    WeightedClauseSet w;
    std::istringstream in(text);
    std::string line;
    std::optional<Weight> top;
    std::size_t expected = 0;
    std::map<int, std::string> names;
    while (std::getline(in, line)) {
        auto t = split_ws(line);
        if (t.empty()) continue;
        if (t[0] == "c") {
            if (t.size() == 4 && t[1] == "var") names[static_cast<int>(to_i64(t[2], "wcnf"))] = t[3];
            continue;
        }
        if (t[0] == "p") {
            if (t.size() != 5 || t[1] != "wcnf") throw Error("wcnf: bad header");
            w.num_vars = static_cast<int>(to_i64(t[2], "wcnf"));
            expected = static_cast<std::size_t>(to_i64(t[3], "wcnf"));
            top = to_i64(t[4], "wcnf");
            continue;
        }
        if (!top) throw Error("wcnf: clause before header");
        if (t.back() != "0") throw Error("wcnf: clause not 0-terminated");
        Clause c;
        Weight wt = to_i64(t[0], "wcnf");
        if (wt < *top) c.weight = wt;
        for (std::size_t k = 1; k + 1 < t.size(); ++k) c.lits.push_back(static_cast<Lit>(to_i64(t[k], "wcnf")));
        w.clauses.push_back(std::move(c));
    }
    if (!top) throw Error("wcnf: missing header");
    if (w.clauses.size() != expected) throw Error("wcnf: clause count does not match header");
    w.names.assign(static_cast<std::size_t>(w.num_vars), "");
    for (const auto& [v, name] : names) {
        if (v < 1 || v > w.num_vars) throw Error("wcnf: role for undeclared variable");
        w.names[v - 1] = name;
        register_role(w, name, v);
    }
    return w;
}

namespace {

void write_terms(std::ostringstream& out, const std::vector<PbTerm>& terms) {
    for (std::size_t k = 0; k < terms.size(); ++k)
        out << (k ? " " : "") << (terms[k].coef >= 0 ? "+" : "") << terms[k].coef << " x" << terms[k].var;
}

std::vector<PbTerm> read_terms(const std::vector<std::string>& tok, std::size_t from, std::size_t to) {
    std::vector<PbTerm> out;
    if ((to - from) % 2) throw Error("opb: malformed term list");
    for (std::size_t k = from; k < to; k += 2) {
        const auto& v = tok[k + 1];
        if (v.size() < 2 || v[0] != 'x') throw Error("opb: bad variable '" + v + "'");
        out.push_back({to_i64(tok[k], "opb"), static_cast<int>(to_i64(v.substr(1), "opb"))});
    }
    return out;
}

}  // namespace

std::string write_opb(const PbModel& pb) {
    std::ostringstream out;
    out << "* #variable= " << pb.num_vars << " #constraint= " << pb.constraints.size() << "\n";
    out << "* objective offset: " << pb.offset << "\n";
    out << "min:" << (pb.objective.empty() ? "" : " ");
    write_terms(out, pb.objective);
    out << " ;\n";
    for (const auto& c : pb.constraints) {
        write_terms(out, c.terms);
        out << " >= " << c.rhs << " ;\n";
    }
    return out.str();
}

PbModel read_opb(const std::string& text) {
    PbModel pb;
    std::istringstream in(text);
    std::string line;
    std::optional<std::size_t> expected;
    while (std::getline(in, line)) {
        auto t = split_ws(line);
        if (t.empty()) continue;
        if (t[0] == "*") {
            if (t.size() >= 5 && t[1] == "#variable=") {
                pb.num_vars = static_cast<int>(to_i64(t[2], "opb"));
                expected = static_cast<std::size_t>(to_i64(t[4], "opb"));
            } else if (t.size() == 4 && t[1] == "objective" && t[2] == "offset:") {
                pb.offset = to_i64(t[3], "opb");
            }
            continue;
        }
        if (t.back() != ";") throw Error("opb: line not terminated by ';'");
        if (t[0] == "min:") {
            pb.objective = read_terms(t, 1, t.size() - 1);
            continue;
        }
        if (t.size() < 3 || t[t.size() - 3] != ">=") throw Error("opb: expected '>=' constraint");
        PbConstraint c;
        c.terms = read_terms(t, 0, t.size() - 3);
        c.rhs = to_i64(t[t.size() - 2], "opb");
        pb.constraints.push_back(std::move(c));
    }
    if (expected && *expected != pb.constraints.size())
        throw Error("opb: constraint count does not match header");
    return pb;
}

namespace {

void write_linear(std::ostringstream& out, const std::vector<LinearTerm>& terms) {
    std::size_t on_line = 0;
    bool first = true;
    for (const auto& t : terms) {
        if (on_line == 8) {
            out << "\n   ";
            on_line = 0;
        }
        if (first) out << (t.coef < 0 ? " - " : " ");
        else out << (t.coef < 0 ? " - " : " + ");
        auto mag = t.coef < 0 ? -t.coef : t.coef;
        if (mag != 1) out << mag << " ";
        out << t.var;
        first = false;
        ++on_line;
    }
    if (terms.empty()) out << " 0";
}

std::vector<LinearTerm> parse_linear(const std::vector<std::string>& tok, const char* what) {
    std::vector<LinearTerm> out;
    std::int64_t sign = 1;
    std::optional<std::int64_t> coef;
    for (const auto& s : tok) {
        if (s == "+") {
            sign = 1;
        } else if (s == "-") {
            sign = -1;
        } else if (std::isdigit(static_cast<unsigned char>(s[0]))) {
            coef = to_i64(s, what);
        } else {
            out.push_back({sign * coef.value_or(1), s});
            sign = 1;
            coef.reset();
        }
    }
    return out;
}

}  // namespace

std::string write_lp(const MipModel& mip) {
    std::ostringstream out;
    out << "\\ feature subscription relaxation, n = " << mip.n << "\n";
    out << "Maximize\n obj:";
    write_linear(out, mip.objective);
    out << "\nSubject To\n";
    for (const auto& r : mip.rows) {
        out << " " << r.name << ":";
        write_linear(out, r.terms);
        out << " <= " << r.rhs << "\n";
    }
    out << "Bounds\n";
    for (const auto& p : mip.positions) out << " 1 <= " << p << " <= " << mip.n << "\n";
    out << "Binaries\n";
    for (std::size_t k = 0; k < mip.binaries.size(); ++k)
        out << (k % 8 == 0 ? (k ? "\n " : " ") : " ") << mip.binaries[k];
    if (!mip.binaries.empty()) out << "\n";
    out << "End\n";
    return out.str();
}

MipModel read_lp(const std::string& text) {
    MipModel mip;
    std::istringstream in(text);
    std::string line;
    enum class Sec { None, Obj, Rows, Bounds, Bin, End } sec = Sec::None;
    std::vector<std::string> pending;  // tokens of a statement spanning lines
    auto flush_row = [&]() {
        if (pending.empty()) return;
        if (pending.size() < 3 || pending[pending.size() - 2] != "<=")
            throw Error("lp: expected '<=' row");
        std::string name = pending[0];
        if (name.back() != ':') throw Error("lp: unnamed row");
        name.pop_back();
        std::vector<std::string> body(pending.begin() + 1, pending.end() - 2);
        mip.rows.push_back({name, parse_linear(body, "lp"), to_i64(pending.back(), "lp")});
        pending.clear();
    };
    while (std::getline(in, line)) {
        if (line.rfind("\\", 0) == 0) continue;
        auto t = split_ws(line);
        if (t.empty()) continue;
        if (t[0] == "Maximize") { sec = Sec::Obj; continue; }
        if (t[0] == "Subject" && t.size() > 1 && t[1] == "To") {
            mip.objective.clear();
            if (!pending.empty()) {
                std::vector<std::string> body(pending.begin() + 1, pending.end());
                mip.objective = parse_linear(body, "lp");
                mip.objective.erase(std::remove_if(mip.objective.begin(), mip.objective.end(),
                                                   [](const LinearTerm& x) { return x.var.empty(); }),
                                    mip.objective.end());
                pending.clear();
            }
            sec = Sec::Rows;
            continue;
        }
        if (t[0] == "Bounds") { flush_row(); sec = Sec::Bounds; continue; }
        if (t[0] == "Binaries") { flush_row(); sec = Sec::Bin; continue; }
        if (t[0] == "End") { sec = Sec::End; continue; }
        switch (sec) {
            case Sec::Obj:
                pending.insert(pending.end(), t.begin(), t.end());
                break;
            case Sec::Rows:
                if (t[0].back() == ':') flush_row();
                pending.insert(pending.end(), t.begin(), t.end());
                break;
            case Sec::Bounds:
                if (t.size() != 5 || t[1] != "<=" || t[3] != "<=") throw Error("lp: bad bound");
                mip.positions.push_back(t[2]);
                mip.n = static_cast<int>(to_i64(t[4], "lp"));
                break;
            case Sec::Bin:
                mip.binaries.insert(mip.binaries.end(), t.begin(), t.end());
                break;
            default:
                throw Error("lp: text outside a section");
        }
    }
    if (sec != Sec::End) throw Error("lp: missing End");
    if (mip.positions.empty()) {
        // n is only recorded through the bounds; fall back to the comment
        auto pos = text.find("n = ");
        if (pos != std::string::npos) mip.n = static_cast<int>(std::stoll(text.substr(pos + 4)));
    }
    return mip;
}

namespace {

Weight default_cost(const std::vector<Weight>& costs) {
    std::map<Weight, std::size_t> freq;
    for (Weight c : costs) ++freq[c];
    Weight best = 0;
    std::size_t best_n = 0;
    for (const auto& [c, n] : freq)
        if (n > best_n) {
            best = c;
            best_n = n;
        }
    return best;
}

}  // namespace

std::string write_wcsp(const WcspModel& m) {
    std::ostringstream out;
    const int maxdom = m.domains.empty() ? 0 : *std::max_element(m.domains.begin(), m.domains.end());
    out << m.name << " " << m.domains.size() << " " << maxdom << " " << m.tables.size() << " " << m.k
        << "\n";
    for (std::size_t i = 0; i < m.domains.size(); ++i) out << (i ? " " : "") << m.domains[i];
    out << "\n";
    for (const auto& t : m.tables) {
        const Weight def = default_cost(t.costs);
        std::size_t others = 0;
        for (Weight c : t.costs) others += c != def;
        out << t.scope.size();
        for (int v : t.scope) out << " " << v;
        out << " " << def << " " << others << "\n";
        std::vector<int> tuple(t.scope.size(), 0);
        for (std::size_t idx = 0; idx < t.costs.size(); ++idx) {
            std::size_t rest = idx;
            for (std::size_t s = t.scope.size(); s-- > 0;) {
                tuple[s] = static_cast<int>(rest % static_cast<std::size_t>(m.domains[t.scope[s]]));
                rest /= static_cast<std::size_t>(m.domains[t.scope[s]]);
            }
            if (t.costs[idx] == def) continue;
            for (int v : tuple) out << v << " ";
            out << t.costs[idx] << "\n";
        }
    }
    return out.str();
}

WcspModel read_wcsp(const std::string& text) {
    std::istringstream in(text);
    WcspModel m;
    std::size_t nvars = 0, ncons = 0;
    int maxdom = 0;
    if (!(in >> m.name >> nvars >> maxdom >> ncons >> m.k)) throw Error("wcsp: bad header");
    m.domains.resize(nvars);
    for (auto& d : m.domains)
        if (!(in >> d)) throw Error("wcsp: bad domain line");
    for (std::size_t c = 0; c < ncons; ++c) {
        std::size_t arity = 0;
        if (!(in >> arity)) throw Error("wcsp: missing cost function");
        CostTable t;
        t.scope.resize(arity);
        std::size_t size = 1;
        for (auto& v : t.scope) {
            if (!(in >> v) || v < 0 || static_cast<std::size_t>(v) >= nvars)
                throw Error("wcsp: bad scope");
            size *= static_cast<std::size_t>(m.domains[v]);
        }
        Weight def = 0;
        std::size_t ntuples = 0;
        if (!(in >> def >> ntuples)) throw Error("wcsp: bad cost function header");
        t.costs.assign(size, def);
        for (std::size_t k = 0; k < ntuples; ++k) {
            std::size_t idx = 0;
            for (int v : t.scope) {
                int val = 0;
                if (!(in >> val) || val < 0 || val >= m.domains[v]) throw Error("wcsp: bad tuple");
                idx = idx * static_cast<std::size_t>(m.domains[v]) + static_cast<std::size_t>(val);
            }
            if (!(in >> t.costs[idx])) throw Error("wcsp: bad tuple cost");
        }
        m.tables.push_back(std::move(t));
    }
    return m;
}

std::string encode_to(const Subscription& sub, EncodeFormat format, bool reduced) {
    switch (format) {
        case EncodeFormat::WcnfAtom: return write_wcnf(encode_atom(sub, reduced));
        case EncodeFormat::WcnfUnary: return write_wcnf(encode_symbol_unary(sub));
        case EncodeFormat::WcnfBinary: return write_wcnf(encode_symbol_binary(sub));
        case EncodeFormat::Opb: return write_opb(to_pseudo_boolean(encode_atom(sub, reduced)));
        case EncodeFormat::Lp: return write_lp(encode_mip(sub));
        case EncodeFormat::Wcsp: return write_wcsp(encode_wcsp(sub));
    }
    throw Error("encode: unsupported format");
}

}  // namespace fsp
