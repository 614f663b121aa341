#include "fsp/softprec.hpp"

#include <algorithm>

#include "fsp/consistency.hpp"

namespace fsp {

SoftprecModel::SoftprecModel(const Subscription& sub)
    : sub_(&sub), m_(static_cast<int>(sub.size())) {
    precs_ = sub.user().to_vector();
    for (FeatureId f : sub.features()) fw_.push_back(sub.feature_weight(f));
    hard_.assign(static_cast<std::size_t>(m_) * m_, 0);
    degree_.assign(m_, 0);
    for (const auto& p : sub.hard()) {
        int i = sub.index_of(p.before), j = sub.index_of(p.after);
        hard_[static_cast<std::size_t>(i) * m_ + j] = 1;
        ++degree_[i];
        ++degree_[j];
    }
    for (const auto& p : precs_) {
        int i = sub.index_of(p.before), j = sub.index_of(p.after);
        prec_cells_.emplace_back(i, j);
        pw_.push_back(sub.prec_weight(p));
        ++degree_[i];
        ++degree_[j];
    }
    for (std::size_t k = 0; k < precs_.size(); ++k) degree_.push_back(1);
}

SoftprecState SoftprecModel::initial_state() const {
    SoftprecState s;
    s.bf.assign(m_, Tri::Unknown);
    s.order = OrderMatrix(m_);
    s.lb = 0;
    s.ub = sub_->total_weight();
    return s;
}

Tri SoftprecModel::boolean(const SoftprecState& s, int b) const {
    if (b < m_) return s.bf[b];
    auto [i, j] = prec_cells_[b - m_];
    return s.order.at(i, j);
}

void SoftprecModel::assign(SoftprecState& s, int b, bool value) const {
    Tri v = value ? Tri::In : Tri::Out;
    if (b < m_) {
        s.bf[b] = v;
        return;
    }
    auto [i, j] = prec_cells_[b - m_];
    s.order.at(i, j) = v;
}

namespace {

struct Setter {
    bool changed = false;
    bool ok = true;
    void set(Tri& d, Tri v) {
        if (d == v) return;
        if (d != Tri::Unknown) {
            ok = false;
            return;
        }
        d = v;
        changed = true;
    }
};

}  // namespace

bool SoftprecModel::filter(SoftprecState& s) const {
    auto& o = s.order;
    auto hard = [&](int i, int j) { return hard_[static_cast<std::size_t>(i) * m_ + j] != 0; };
    while (true) {
        Setter st;
        for (int i = 0; i < m_ && st.ok; ++i) {
            if (s.bf[i] != Tri::Out) continue;
            for (int j = 0; j < m_ && st.ok; ++j) {
                st.set(o.at(i, j), Tri::Out);
                st.set(o.at(j, i), Tri::Out);
            }
        }
        for (int i = 0; i < m_ && st.ok; ++i)
            for (int j = 0; j < m_ && st.ok; ++j) {
                if (i == j) continue;
                if (o.at(i, j) == Tri::In) {
                    st.set(s.bf[i], Tri::In);
                    st.set(s.bf[j], Tri::In);
                    st.set(o.at(j, i), Tri::Out);
                }
                if (!hard(i, j) || !st.ok) continue;
                if (s.bf[i] == Tri::In && s.bf[j] == Tri::In) st.set(o.at(i, j), Tri::In);
                if (o.at(i, j) == Tri::Out) {
                    if (s.bf[i] == Tri::In) st.set(s.bf[j], Tri::Out);
                    if (s.bf[j] == Tri::In) st.set(s.bf[i], Tri::Out);
                }
            }
        for (int i = 0; i < m_ && st.ok; ++i)
            for (int j = 0; j < m_ && st.ok; ++j)
                for (int k = 0; k < m_ && st.ok; ++k) {
                    Tri ij = o.at(i, j), jk = o.at(j, k), ik = o.at(i, k);
                    if (ij == Tri::In && jk == Tri::In) st.set(o.at(i, k), Tri::In);
                    else if (ij == Tri::In && ik == Tri::Out) st.set(o.at(j, k), Tri::Out);
                    else if (jk == Tri::In && ik == Tri::Out) st.set(o.at(i, j), Tri::Out);
                }
        if (!st.ok) return false;
        if (st.changed) continue;

        // Forced-order reachability: paths of hard or true edges whose
        // intermediate features are all included.
        std::vector<std::vector<char>> reach(m_, std::vector<char>(m_, 0));
        std::vector<int> stack;
        for (int x = 0; x < m_; ++x) {
            if (s.bf[x] == Tri::Out) continue;
            stack.assign(1, x);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v = 0; v < m_; ++v) {
                    if (v == u || reach[x][v] || s.bf[v] == Tri::Out) continue;
                    if (!hard(u, v) && o.at(u, v) != Tri::In) continue;
                    reach[x][v] = 1;
                    if (s.bf[v] == Tri::In && v != x) stack.push_back(v);
                }
            }
        }
        s.incompatible.edges.clear();
        for (int i = 0; i < m_ && st.ok; ++i)
            for (int j = i + 1; j < m_ && st.ok; ++j) {
                if (!reach[i][j] || !reach[j][i]) continue;
                if (s.bf[i] == Tri::Out || s.bf[j] == Tri::Out) continue;
                if (s.bf[i] == Tri::In) st.set(s.bf[j], Tri::Out);
                else if (s.bf[j] == Tri::In) st.set(s.bf[i], Tri::Out);
                else s.incompatible.edges.emplace_back(i, j);
            }
        for (auto [i, j] : prec_cells_) {
            if (!st.ok) break;
            if (o.at(i, j) == Tri::Unknown && reach[j][i]) st.set(o.at(i, j), Tri::Out);
        }
        if (!st.ok) return false;
        if (!st.changed) return true;
    }
}

Weight SoftprecModel::optimistic_sum(const SoftprecState& s) const {
    Weight total = 0;
    for (int i = 0; i < m_; ++i)
        if (s.bf[i] != Tri::Out) total += fw_[i];
    for (std::size_t k = 0; k < prec_cells_.size(); ++k) {
        auto [i, j] = prec_cells_[k];
        if (s.order.at(i, j) != Tri::Out && s.bf[i] != Tri::Out && s.bf[j] != Tri::Out)
            total += pw_[k];
    }
    return total;
}

Weight SoftprecModel::upper_bound(const SoftprecState& s) const {
    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : s.incompatible.edges)
        if (s.bf[i] != Tri::Out && s.bf[j] != Tri::Out) edges.emplace_back(i, j);
    std::stable_sort(edges.begin(), edges.end(), [&](auto a, auto b) {
        return std::min(fw_[a.first], fw_[a.second]) > std::min(fw_[b.first], fw_[b.second]);
    });
    std::vector<char> matched(m_, 0);
    Weight penalty = 0;
    for (auto [i, j] : edges) {
        if (matched[i] || matched[j]) continue;
        matched[i] = matched[j] = 1;
        penalty += std::min(fw_[i], fw_[j]);
    }
    return optimistic_sum(s) - penalty;
}

bool SoftprecModel::propagate(SoftprecState& s) const {
    while (true) {
        if (!filter(s)) return false;
        s.ub = std::min(s.ub, upper_bound(s));
        if (s.ub < s.lb) return false;

        const Weight plain = optimistic_sum(s);
        bool changed = false;
        for (int x = 0; x < m_; ++x) {
            if (s.bf[x] != Tri::Unknown) continue;
            Weight loss = fw_[x];
            for (std::size_t k = 0; k < prec_cells_.size(); ++k) {
                auto [i, j] = prec_cells_[k];
                if ((i == x || j == x) && s.order.at(i, j) != Tri::Out && s.bf[i] != Tri::Out &&
                    s.bf[j] != Tri::Out)
                    loss += pw_[k];
            }
            if (plain - loss < s.lb) {
                s.bf[x] = Tri::In;
                changed = true;
            }
        }
        for (std::size_t k = 0; k < prec_cells_.size(); ++k) {
            auto [i, j] = prec_cells_[k];
            if (s.order.at(i, j) == Tri::Unknown && plain - pw_[k] < s.lb) {
                s.order.at(i, j) = Tri::In;
                changed = true;
            }
        }
        if (!changed) return true;
    }
}

std::optional<int> SoftprecModel::choose_variable(const SoftprecState& s) const {
    std::optional<int> best;
    for (int b = 0; b < num_booleans(); ++b) {
        if (boolean(s, b) != Tri::Unknown) continue;
        if (!best || degree_[b] > degree_[*best]) best = b;
    }
    return best;
}

Relaxation SoftprecModel::extract(const SoftprecState& s) const {
    std::vector<FeatureId> fs;
    std::vector<Precedence> ps;
    for (int i = 0; i < m_; ++i)
        if (s.bf[i] == Tri::In) fs.push_back(sub_->features()[i]);
    for (std::size_t k = 0; k < precs_.size(); ++k) {
        auto [i, j] = prec_cells_[k];
        if (s.order.at(i, j) == Tri::In) ps.push_back(precs_[k]);
    }
    return make_relaxation(*sub_, std::move(fs), std::move(ps));
}

bool softprec_propagate(SoftprecState& s, const Subscription& sub) {
    return SoftprecModel(sub).propagate(s);
}

Weight upper_bound(const SoftprecState& s, const Subscription& sub) {
    return SoftprecModel(sub).upper_bound(s);
}

}  // namespace fsp
