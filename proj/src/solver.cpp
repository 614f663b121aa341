#include "fsp/solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "bnb.hpp"
#include "fsp/consistency.hpp"
#include "fsp/softprec.hpp"

namespace fsp {

std::string to_string(Level level) {
    switch (level) {
        case Level::AC: return "ac";
        case Level::RSAC: return "rsac";
        case Level::SAC: return "sac";
    }
    return "?";
}

std::string to_string(Heuristic h) { return h == Heuristic::DomDeg ? "dom-deg" : "dom-wdeg"; }

std::string to_string(Method m) {
    switch (m) {
        case Method::AC: return "ac";
        case Method::RSAC: return "rsac";
        case Method::SAC: return "sac";
        case Method::Softprec: return "softprec";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& s) {
    if (s == "ac") return Method::AC;
    if (s == "rsac") return Method::RSAC;
    if (s == "sac") return Method::SAC;
    if (s == "softprec") return Method::Softprec;
    if (s == "oracle") return Method::Oracle;
    return std::nullopt;
}

std::optional<Heuristic> parse_heuristic(const std::string& s) {
    if (s == "dom-deg") return Heuristic::DomDeg;
    if (s == "dom-wdeg") return Heuristic::DomWdeg;
    return std::nullopt;
}

CopModel::CopModel(const Subscription& sub) : sub_(&sub), m_(static_cast<int>(sub.size())) {
    precs_ = sub.user().to_vector();
    for (FeatureId f : sub.features()) bool_weight_.push_back(sub.feature_weight(f));
    for (const auto& p : precs_) bool_weight_.push_back(sub.prec_weight(p));

    bool_watch_.resize(num_booleans());
    pos_watch_.resize(m_);
    auto add = [&](Constraint c) {
        int id = static_cast<int>(constraints_.size());
        constraints_.push_back(c);
        bool_watch_[c.i].push_back(id);
        bool_watch_[c.j].push_back(id);
        pos_watch_[c.i].push_back(id);
        pos_watch_[c.j].push_back(id);
        if (c.k >= 0) bool_watch_[m_ + c.k].push_back(id);
    };
    for (const auto& p : sub.hard()) add({Kind::Hard, sub.index_of(p.before), sub.index_of(p.after), -1});
    for (int k = 0; k < num_precs(); ++k)
        add({Kind::User, sub.index_of(precs_[k].before), sub.index_of(precs_[k].after), k});
    objective_ = static_cast<int>(constraints_.size());
    constraints_.push_back({Kind::Objective});
    for (int b = 0; b < num_booleans(); ++b) bool_watch_[b].push_back(objective_);
    reset_weights();
}

void CopModel::reset_weights() { weights_.assign(constraints_.size(), 1); }

SearchState CopModel::initial_state() const {
    SearchState s;
    s.bf.assign(m_, Tri::Unknown);
    s.bp.assign(precs_.size(), Tri::Unknown);
    s.pf.assign(m_, Interval{1, std::max(m_, 1)});
    s.lb = 0;
    s.ub = sub_->total_weight();
    return s;
}

namespace {

bool has(Tri d, bool v) { return d == Tri::Unknown || d == (v ? Tri::In : Tri::Out); }

// Reduces `d` to the supported values; false on wipe-out.
bool restrict_to(Tri& d, const bool support[2], bool& changed) {
    bool keep_out = has(d, false) && support[0];
    bool keep_in = has(d, true) && support[1];
    Tri nd = keep_in && keep_out ? Tri::Unknown : keep_in ? Tri::In : Tri::Out;
    if (!keep_in && !keep_out) return false;
    changed = nd != d;
    d = nd;
    return true;
}

}  // namespace

bool CopModel::revise_hard(const Constraint& c, SearchState& s, std::vector<int>& cb,
                           std::vector<int>& cp) {
    return revise_user(c, s, cb, cp);
}

// Table revision over the Boolean part; positions are pruned only when every
// surviving tuple needs the same order between pf_i and pf_j.
bool CopModel::revise_user(const Constraint& c, SearchState& s, std::vector<int>& cb,
                           std::vector<int>& cp) {
    Tri& bi = s.bf[c.i];
    Tri& bj = s.bf[c.j];
    Interval& pi = s.pf[c.i];
    Interval& pj = s.pf[c.j];
    const bool is_user = c.kind == Kind::User;
    Tri dummy = Tri::In;
    Tri& x = is_user ? s.bp[c.k] : dummy;

    const bool lt = pi.lo < pj.hi;
    const bool ge = pi.hi >= pj.lo;
    bool sx[2] = {false, false}, sa[2] = {false, false}, sb[2] = {false, false};
    bool all_lt = true, all_ge = true;
    for (int xv = 0; xv < 2; ++xv) {
        if (!has(x, xv)) continue;
        for (int a = 0; a < 2; ++a) {
            if (!has(bi, a)) continue;
            for (int b = 0; b < 2; ++b) {
                if (!has(bj, b)) continue;
                bool valid;
                if (!is_user) valid = !(a && b) || lt;
                else valid = (a && b) ? (xv ? lt : ge) : !xv;
                if (!valid) continue;
                sx[xv] = sa[a] = sb[b] = true;
                if (!(a && b)) all_lt = all_ge = false;
                else if (xv) all_ge = false;
                else all_lt = false;
            }
        }
    }
    bool changed = false;
    if (is_user) {
        if (!restrict_to(x, sx, changed)) return false;
        if (changed) cb.push_back(m_ + c.k);
    }
    if (!restrict_to(bi, sa, changed)) return false;
    if (changed) cb.push_back(c.i);
    if (!restrict_to(bj, sb, changed)) return false;
    if (changed) cb.push_back(c.j);

    if (all_lt) {
        Interval ni{pi.lo, std::min(pi.hi, pj.hi - 1)};
        Interval nj{std::max(pj.lo, pi.lo + 1), pj.hi};
        if (ni.empty() || nj.empty()) return false;
        if (ni != pi) { pi = ni; cp.push_back(c.i); }
        if (nj != pj) { pj = nj; cp.push_back(c.j); }
    } else if (all_ge) {
        Interval ni{std::max(pi.lo, pj.lo), pi.hi};
        Interval nj{pj.lo, std::min(pj.hi, pi.hi)};
        if (ni.empty() || nj.empty()) return false;
        if (ni != pi) { pi = ni; cp.push_back(c.i); }
        if (nj != pj) { pj = nj; cp.push_back(c.j); }
    }
    return true;
}

bool CopModel::revise_objective(SearchState& s, std::vector<int>& cb) {
    while (true) {
        Weight sum_in = 0, sum_max = 0;
        for (int b = 0; b < num_booleans(); ++b) {
            Tri d = s.boolean(b);
            if (d == Tri::In) sum_in += bool_weight_[b];
            if (d != Tri::Out) sum_max += bool_weight_[b];
        }
        s.lb = std::max(s.lb, sum_in);
        s.ub = std::min(s.ub, sum_max);
        if (s.lb > s.ub) return false;
        bool changed = false;
        for (int b = 0; b < num_booleans(); ++b) {
            Tri& d = s.boolean(b);
            if (d != Tri::Unknown) continue;
            const Weight w = bool_weight_[b];
            if (sum_max - w < s.lb) {
                d = Tri::In;
                sum_in += w;
            } else if (sum_in + w > s.ub) {
                d = Tri::Out;
                sum_max -= w;
            } else {
                continue;
            }
            cb.push_back(b);
            changed = true;
        }
        if (!changed) return true;
    }
}

bool CopModel::revise(int c, SearchState& s, std::vector<int>& cb, std::vector<int>& cp) {
    const Constraint& con = constraints_[c];
    switch (con.kind) {
        case Kind::Hard: return revise_hard(con, s, cb, cp);
        case Kind::User: return revise_user(con, s, cb, cp);
        case Kind::Objective: return revise_objective(s, cb);
    }
    return true;
}

bool CopModel::propagate_ac(SearchState& s, const std::vector<int>& touched) {
    const int nc = num_constraints();
    std::deque<int> queue;
    std::vector<char> queued(nc, 0);
    auto push = [&](int c) {
        if (!queued[c]) {
            queued[c] = 1;
            queue.push_back(c);
        }
    };
    if (touched.empty()) {
        for (int c = 0; c < nc; ++c) push(c);
    } else {
        for (int b : touched)
            for (int c : bool_watch_[b]) push(c);
        push(objective_);
    }

    std::vector<int> cb, cp;
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        queued[c] = 0;
        cb.clear();
        cp.clear();
        if (!revise(c, s, cb, cp)) {
            ++weights_[c];
            return false;
        }
        for (int b : cb)
            for (int d : bool_watch_[b])
                if (d != c) push(d);
        for (int i : cp)
            for (int d : pos_watch_[i])
                if (d != c) push(d);
    }
    return true;
}

bool CopModel::propagate_singleton(SearchState& s, bool restricted) {
    if (!propagate_ac(s)) return false;
    bool again = true;
    while (again) {
        again = false;
        for (int b = 0; b < num_booleans(); ++b) {
            for (Tri value : {Tri::In, Tri::Out}) {
                if (s.boolean(b) != Tri::Unknown) break;
                SearchState probe = s;
                probe.boolean(b) = value;
                if (propagate_ac(probe, {b})) continue;
                s.boolean(b) = value == Tri::In ? Tri::Out : Tri::In;
                if (!propagate_ac(s, {b})) return false;
                if (!restricted) again = true;
            }
        }
        if (restricted) break;
    }
    return true;
}

int CopModel::uninstantiated(const Constraint& c, const SearchState& s) const {
    if (c.kind == Kind::Objective) {
        int n = 0;
        for (int b = 0; b < num_booleans(); ++b) n += s.boolean(b) == Tri::Unknown;
        return n;
    }
    int n = 0;
    n += s.bf[c.i] == Tri::Unknown;
    n += s.bf[c.j] == Tri::Unknown;
    n += s.pf[c.i].lo != s.pf[c.i].hi;
    n += s.pf[c.j].lo != s.pf[c.j].hi;
    if (c.kind == Kind::User) n += s.bp[c.k] == Tri::Unknown;
    return n;
}

std::int64_t CopModel::weighted_degree(const SearchState& s, int boolean) const {
    std::int64_t total = 0;
    for (int c : bool_watch_[boolean])
        if (uninstantiated(constraints_[c], s) >= 2) total += weights_[c];
    return total;
}

std::optional<int> CopModel::choose_variable(const SearchState& s, Heuristic h) const {
    std::optional<int> best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int b = 0; b < num_booleans(); ++b) {
        if (s.boolean(b) != Tri::Unknown) continue;
        const double denom = h == Heuristic::DomDeg ? static_cast<double>(degree(b))
                                                    : static_cast<double>(weighted_degree(s, b));
        const double score = denom > 0 ? 2.0 / denom : std::numeric_limits<double>::infinity();
        if (!best || score < best_score) {
            best = b;
            best_score = score;
        }
    }
    return best;
}

Relaxation CopModel::extract(const SearchState& s) const {
    std::vector<FeatureId> fs;
    std::vector<Precedence> ps;
    for (int i = 0; i < m_; ++i)
        if (s.bf[i] == Tri::In) fs.push_back(sub_->features()[i]);
    for (int k = 0; k < num_precs(); ++k)
        if (s.bp[k] == Tri::In) ps.push_back(precs_[k]);
    return make_relaxation(*sub_, std::move(fs), std::move(ps));
}

namespace {

struct CopSearch {
    using State = SearchState;
    CopModel& model;
    Level level;
    Heuristic heuristic;

    State initial_state() { return model.initial_state(); }

    bool propagate(State& s, Weight lb, std::optional<int> branched) {
        s.lb = std::max(s.lb, lb);
        if (!model.propagate_ac(s, branched ? std::vector<int>{*branched} : std::vector<int>{}))
            return false;
        if (level == Level::AC) return true;
        return model.propagate_singleton(s, level == Level::RSAC);
    }

    std::optional<int> choose(const State& s) { return model.choose_variable(s, heuristic); }

    void assign(State& s, int var, bool value) { s.boolean(var) = value ? Tri::In : Tri::Out; }

    Relaxation extract(const State& s) {
        Relaxation r = model.extract(s);
        // Positions for the kept features exist by the arc-consistency
        // argument; make sure before reporting.
        if (std::holds_alternative<VerifyFailure>(verify_relaxation(model.subscription(), r)))
            throw Error("solver: leaf relaxation is inconsistent");
        return r;
    }
};

struct SoftprecSearch {
    using State = SoftprecState;
    SoftprecModel& model;

    State initial_state() { return model.initial_state(); }
    bool propagate(State& s, Weight lb, std::optional<int>) {
        s.lb = std::max(s.lb, lb);
        return model.propagate(s);
    }
    std::optional<int> choose(const State& s) { return model.choose_variable(s); }
    void assign(State& s, int var, bool value) { model.assign(s, var, value); }
    Relaxation extract(const State& s) {
        Relaxation r = model.extract(s);
        if (std::holds_alternative<VerifyFailure>(verify_relaxation(model.subscription(), r)))
            throw Error("softprec: leaf relaxation is inconsistent");
        return r;
    }
};

}  // namespace

SolveResult solve(const Subscription& sub, const SolverConfig& config) {
    if (config.softprec) {
        SoftprecModel model(sub);
        SoftprecSearch search{model};
        return detail::BranchAndBound<SoftprecSearch>(search, config).run();
    }
    CopModel model(sub);
    CopSearch search{model, config.level, config.heuristic};
    return detail::BranchAndBound<CopSearch>(search, config).run();
}

}  // namespace fsp
