#include "fsp/encoders.hpp"

#include <algorithm>
#include <cstdlib>

#include "fsp/consistency.hpp"

namespace fsp {

std::string to_string(ClauseKind k) {
    switch (k) {
        case ClauseKind::Catalogue: return "catalogue";
        case ClauseKind::Asymmetry: return "asymmetry";
        case ClauseKind::Transitivity: return "transitivity";
        case ClauseKind::Order: return "order";
        case ClauseKind::Position: return "position";
        case ClauseKind::Tseitin: return "tseitin";
        case ClauseKind::Support: return "support";
        case ClauseKind::Soft: return "soft";
    }
    return "?";
}

std::string bf_name(FeatureId f) { return "bf_" + std::to_string(f); }
std::string bp_name(Precedence p) {
    return "bp_" + std::to_string(p.before) + "_" + std::to_string(p.after);
}
std::string pf_name(FeatureId f) { return "pf_" + std::to_string(f); }

int WeightedClauseSet::new_var(std::string name) {
    names.push_back(std::move(name));
    return ++num_vars;
}

void WeightedClauseSet::add_hard(std::vector<Lit> lits, ClauseKind kind) {
    clauses.push_back({std::nullopt, std::move(lits), kind});
}

void WeightedClauseSet::add_soft(Weight w, std::vector<Lit> lits) {
    clauses.push_back({w, std::move(lits), ClauseKind::Soft});
}

Weight WeightedClauseSet::soft_sum() const {
    Weight s = 0;
    for (const auto& c : clauses)
        if (!c.hard()) s += *c.weight;
    return s;
}

std::size_t WeightedClauseSet::count(ClauseKind k) const {
    return static_cast<std::size_t>(
        std::count_if(clauses.begin(), clauses.end(), [k](const Clause& c) { return c.kind == k; }));
}

namespace {

bool lit_true(Lit l, const std::vector<bool>& a) {
    return l > 0 ? a[static_cast<std::size_t>(l)] : !a[static_cast<std::size_t>(-l)];
}

}  // namespace

std::optional<Weight> WeightedClauseSet::cost(const std::vector<bool>& assignment) const {
    Weight total = 0;
    for (const auto& c : clauses) {
        bool sat = std::any_of(c.lits.begin(), c.lits.end(),
                               [&](Lit l) { return lit_true(l, assignment); });
        if (sat) continue;
        if (c.hard()) return std::nullopt;
        total += *c.weight;
    }
    return total;
}

namespace {

// bf variables in feature order, then bp variables for `dom` in sorted order.
void declare_problem_vars(WeightedClauseSet& w, const Subscription& sub, const PrecSet& dom) {
    for (FeatureId f : sub.features()) w.feature_var[f] = w.new_var(bf_name(f));
    for (const auto& p : dom) w.prec_var[p] = w.new_var(bp_name(p));
}

void add_catalogue(WeightedClauseSet& w, const Subscription& sub) {
    for (const auto& p : sub.hard())
        w.add_hard({-w.feature_var.at(p.before), -w.feature_var.at(p.after), w.prec_var.at(p)},
                   ClauseKind::Catalogue);
}

void add_support_and_soft(WeightedClauseSet& w, const Subscription& sub) {
    for (const auto& [p, v] : w.prec_var) {
        w.add_hard({-v, w.feature_var.at(p.before)}, ClauseKind::Support);
        w.add_hard({-v, w.feature_var.at(p.after)}, ClauseKind::Support);
    }
    for (const auto& [f, wt] : sub.feature_weights()) w.add_soft(wt, {w.feature_var.at(f)});
    for (const auto& [p, wt] : sub.prec_weights()) w.add_soft(wt, {w.prec_var.at(p)});
}

PrecSet hard_and_user(const Subscription& sub) {
    PrecSet s = sub.hard();
    s.merge(sub.user());
    return s;
}

}  // namespace

WeightedClauseSet encode_atom(const Subscription& sub, bool reduced) {
    PrecSet dom;
    if (reduced) {
        dom = transitive_closure(hard_and_user(sub), sub.features()).pairs;
    } else {
        for (FeatureId i : sub.features())
            for (FeatureId j : sub.features())
                if (i != j) dom.insert(i, j);
    }
    WeightedClauseSet w;
    declare_problem_vars(w, sub, dom);
    add_catalogue(w, sub);

    for (const auto& p : dom)
        if (p.before < p.after && dom.contains(p.reversed()))
            w.add_hard({-w.prec_var.at(p), -w.prec_var.at(p.reversed())}, ClauseKind::Asymmetry);

    const auto& H = sub.hard();
    for (const auto& ij : dom) {
        const FeatureId i = ij.before, j = ij.after;
        for (FeatureId k : sub.features()) {
            if (k == i || k == j) continue;
            if (!dom.contains(j, k) || !dom.contains(i, k)) continue;
            if (reduced && (H.contains(j, i) || H.contains(k, j) || H.contains(i, k))) continue;
            w.add_hard({-w.prec_var.at(ij), -w.prec_var.at({j, k}), w.prec_var.at({i, k})},
                       ClauseKind::Transitivity);
        }
    }
    add_support_and_soft(w, sub);
    return w;
}

WeightedClauseSet encode_symbol_unary(const Subscription& sub) {
    const PrecSet dom = hard_and_user(sub);
    WeightedClauseSet w;
    declare_problem_vars(w, sub, dom);
    const int n = static_cast<int>(sub.size());
    std::map<FeatureId, std::vector<int>> bits;  // bits[f][k-1] = f_k
    for (FeatureId f : sub.features())
        for (int k = 1; k <= n; ++k)
            bits[f].push_back(w.new_var("pos_" + std::to_string(f) + "_" + std::to_string(k)));

    add_catalogue(w, sub);
    for (FeatureId f : sub.features())
        for (int k = 1; k < n; ++k) w.add_hard({-bits[f][k], bits[f][k - 1]}, ClauseKind::Order);
    for (const auto& p : dom) {
        const int bp = w.prec_var.at(p);
        const auto& bi = bits[p.before];
        const auto& bj = bits[p.after];
        w.add_hard({-bp, -bi[n - 1]}, ClauseKind::Position);
        w.add_hard({-bp, bj[0]}, ClauseKind::Position);
        for (int k = 1; k < n; ++k) w.add_hard({-bp, -bi[k - 1], bj[k]}, ClauseKind::Position);
    }
    add_support_and_soft(w, sub);
    return w;
}

int binary_width(int n) {
    int k = 0;
    while ((1 << k) < n) ++k;
    return std::max(k, 1);
}

WeightedClauseSet encode_symbol_binary(const Subscription& sub) {
    const PrecSet dom = hard_and_user(sub);
    WeightedClauseSet w;
    declare_problem_vars(w, sub, dom);
    const int kappa = binary_width(static_cast<int>(sub.size()));
    std::map<FeatureId, std::vector<int>> bits;  // most significant first
    for (FeatureId f : sub.features())
        for (int m = 1; m <= kappa; ++m)
            bits[f].push_back(w.new_var("bit_" + std::to_string(f) + "_" + std::to_string(m)));

    add_catalogue(w, sub);
    auto T = ClauseKind::Tseitin;
    // x <=> (a & b)
    auto def_and = [&](int x, Lit a, Lit b) {
        w.add_hard({-x, a}, T);
        w.add_hard({-x, b}, T);
        w.add_hard({x, -a, -b}, T);
    };
    // x <=> (a | b)
    auto def_or = [&](int x, Lit a, Lit b) {
        w.add_hard({-x, a, b}, T);
        w.add_hard({x, -a}, T);
        w.add_hard({x, -b}, T);
    };
    for (const auto& p : dom) {
        const auto& bi = bits[p.before];
        const auto& bj = bits[p.after];
        const std::string tag = std::to_string(p.before) + "_" + std::to_string(p.after) + "_";
        // lt[m-1] holds LT_m; built top-down, defined bottom-up.
        std::vector<int> lt(kappa), a(kappa);
        std::vector<int> e(kappa), pp(kappa), q(kappa), c(kappa);
        for (int m = 1; m <= kappa; ++m) {
            const std::string s = tag + std::to_string(m);
            if (m < kappa) {
                lt[m - 1] = w.new_var("lt_" + s);
                a[m - 1] = w.new_var("lta_" + s);
                pp[m - 1] = w.new_var("ltp_" + s);
                q[m - 1] = w.new_var("ltq_" + s);
                e[m - 1] = w.new_var("lte_" + s);
                c[m - 1] = w.new_var("ltc_" + s);
            } else {
                a[m - 1] = w.new_var("lta_" + s);
                lt[m - 1] = a[m - 1];
            }
        }
        w.add_hard({-w.prec_var.at(p), lt[0]}, ClauseKind::Position);
        for (int m = 1; m <= kappa; ++m) {
            const int im = bi[m - 1], jm = bj[m - 1];
            def_and(a[m - 1], -im, jm);
            if (m == kappa) break;
            def_and(pp[m - 1], im, jm);
            def_and(q[m - 1], -im, -jm);
            def_or(e[m - 1], pp[m - 1], q[m - 1]);
            def_and(c[m - 1], e[m - 1], lt[m]);
            def_or(lt[m - 1], a[m - 1], c[m - 1]);
        }
    }
    add_support_and_soft(w, sub);
    return w;
}

std::string unary_code(int value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < value && k < width; ++k) s[k] = '1';
    return s;
}

std::string binary_code(int value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int m = 0; m < width; ++m)
        if (value >> (width - 1 - m) & 1) s[m] = '1';
    return s;
}

int decode_unary(const std::string& bits) {
    int v = 0;
    while (v < static_cast<int>(bits.size()) && bits[v] == '1') ++v;
    return v;
}

int decode_binary(const std::string& bits) {
    int v = 0;
    for (char ch : bits) v = v * 2 + (ch == '1');
    return v;
}

UpResult unit_propagate(const WeightedClauseSet& cnf, const std::vector<Lit>& assumptions) {
    UpResult r;
    r.value.assign(static_cast<std::size_t>(cnf.num_vars) + 1, -1);
    auto val = [&](Lit l) -> int {
        int v = r.value[static_cast<std::size_t>(std::abs(l))];
        if (v < 0) return -1;
        return l > 0 ? v : 1 - v;
    };
    auto set = [&](Lit l) {
        r.value[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : 0;
    };
    for (Lit l : assumptions) {
        if (val(l) == 0) {
            r.conflict = true;
            return r;
        }
        set(l);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : cnf.clauses) {
            if (!c.hard()) continue;
            int unassigned = 0;
            Lit last = 0;
            bool sat = false;
            for (Lit l : c.lits) {
                int v = val(l);
                if (v == 1) {
                    sat = true;
                    break;
                }
                if (v < 0) {
                    ++unassigned;
                    last = l;
                }
            }
            if (sat) continue;
            if (unassigned == 0) {
                r.conflict = true;
                return r;
            }
            if (unassigned == 1) {
                set(last);
                changed = true;
            }
        }
    }
    return r;
}

Relaxation decode_relaxation(const Subscription& sub, const WeightedClauseSet& cnf,
                             const std::vector<bool>& assignment) {
    if (assignment.size() < static_cast<std::size_t>(cnf.num_vars) + 1)
        throw Error("decode: assignment does not cover every variable");
    for (const auto& c : cnf.clauses) {
        if (!c.hard()) continue;
        if (std::none_of(c.lits.begin(), c.lits.end(), [&](Lit l) { return lit_true(l, assignment); }))
            throw Error("decode: assignment violates a hard clause");
    }
    std::vector<FeatureId> fs;
    std::vector<Precedence> ps;
    for (const auto& [f, v] : cnf.feature_var)
        if (assignment[v]) fs.push_back(f);
    for (const auto& p : sub.user()) {
        auto it = cnf.prec_var.find(p);
        if (it != cnf.prec_var.end() && assignment[it->second]) ps.push_back(p);
    }
    return make_relaxation(sub, std::move(fs), std::move(ps));
}

std::optional<std::int64_t> PbModel::cost(const std::vector<bool>& a) const {
    auto eval = [&](const std::vector<PbTerm>& terms) {
        std::int64_t s = 0;
        for (const auto& t : terms)
            if (a[static_cast<std::size_t>(t.var)]) s += t.coef;
        return s;
    };
    for (const auto& c : constraints)
        if (eval(c.terms) < c.rhs) return std::nullopt;
    return eval(objective) + offset;
}

PbModel to_pseudo_boolean(const WeightedClauseSet& cnf) {
    PbModel pb;
    pb.num_vars = cnf.num_vars;
    auto constraint_of = [](const std::vector<Lit>& lits) {
        PbConstraint c;
        c.rhs = 1;
        for (Lit l : lits) {
            if (l > 0) {
                c.terms.push_back({1, l});
            } else {
                c.terms.push_back({-1, -l});
                c.rhs -= 1;
            }
        }
        return c;
    };
    for (const auto& c : cnf.clauses) {
        if (c.hard()) {
            pb.constraints.push_back(constraint_of(c.lits));
        } else if (c.lits.size() == 1) {
            const Lit l = c.lits[0];
            if (l > 0) {
                pb.offset += *c.weight;
                pb.objective.push_back({-*c.weight, l});
            } else {
                pb.objective.push_back({*c.weight, -l});
            }
        } else {
            const int r = ++pb.num_vars;
            auto lits = c.lits;
            lits.push_back(r);
            pb.constraints.push_back(constraint_of(lits));
            pb.objective.push_back({*c.weight, r});
        }
    }
    return pb;
}

Weight WcspModel::cost(const std::vector<int>& values) const {
    Weight total = 0;
    for (const auto& t : tables) {
        std::size_t idx = 0;
        for (int v : t.scope) idx = idx * static_cast<std::size_t>(domains[v]) + values[v];
        total = std::min(k, total + t.costs[idx]);
    }
    return total;
}

WcspModel encode_wcsp(const Subscription& sub) {
    WcspModel m;
    const int n = static_cast<int>(sub.size());
    m.domains.assign(n, n + 1);
    m.k = sub.total_weight();
    const int d = n + 1;
    for (int i = 0; i < n; ++i) {
        CostTable t;
        t.scope = {i};
        t.costs.assign(d, 0);
        t.costs[0] = sub.feature_weight(sub.features()[i]);
        m.tables.push_back(std::move(t));
    }
    auto binary = [&](Precedence p, auto&& cost) {
        CostTable t;
        t.scope = {sub.index_of(p.before), sub.index_of(p.after)};
        t.costs.resize(static_cast<std::size_t>(d) * d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) t.costs[static_cast<std::size_t>(a) * d + b] = cost(a, b);
        m.tables.push_back(std::move(t));
    };
    for (const auto& p : sub.hard())
        binary(p, [&](int a, int b) { return (a == 0 || b == 0 || a < b) ? Weight{0} : m.k; });
    for (const auto& [p, w] : sub.prec_weights())
        binary(p, [&, w = w](int a, int b) { return (a != 0 && b != 0 && a < b) ? Weight{0} : w; });
    return m;
}

Relaxation decode_wcsp(const Subscription& sub, const std::vector<int>& values) {
    std::vector<FeatureId> fs;
    std::vector<Precedence> ps;
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (values[i] > 0) fs.push_back(sub.features()[i]);
    for (const auto& p : sub.user()) {
        int a = values[sub.index_of(p.before)], b = values[sub.index_of(p.after)];
        if (a > 0 && b > 0 && a < b) ps.push_back(p);
    }
    return make_relaxation(sub, std::move(fs), std::move(ps));
}

MipModel encode_mip(const Subscription& sub) {
    MipModel m;
    const std::int64_t n = static_cast<std::int64_t>(sub.size());
    m.n = static_cast<int>(n);
    for (const auto& [f, w] : sub.feature_weights()) {
        m.objective.push_back({w, bf_name(f)});
        m.binaries.push_back(bf_name(f));
        m.positions.push_back(pf_name(f));
    }
    for (const auto& [p, w] : sub.prec_weights()) {
        m.objective.push_back({w, bp_name(p)});
        m.binaries.push_back(bp_name(p));
    }
    for (const auto& p : sub.hard()) {
        m.rows.push_back({"h" + bp_name(p).substr(2),
                          {{1, pf_name(p.before)},
                           {-1, pf_name(p.after)},
                           {n, bf_name(p.before)},
                           {n, bf_name(p.after)}},
                          2 * n - 1});
    }
    for (const auto& p : sub.user()) {
        const std::string tag = bp_name(p).substr(2);
        m.rows.push_back({"p" + tag, {{1, pf_name(p.before)}, {-1, pf_name(p.after)}, {n, bp_name(p)}},
                          n - 1});
        m.rows.push_back({"s" + tag + "_a", {{1, bp_name(p)}, {-1, bf_name(p.before)}}, 0});
        m.rows.push_back({"s" + tag + "_b", {{1, bp_name(p)}, {-1, bf_name(p.after)}}, 0});
    }
    return m;
}

}  // namespace fsp
