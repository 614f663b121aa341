#include "fsp/types.hpp"

#include <sstream>

namespace fsp {

PrecSet::PrecSet(std::initializer_list<Precedence> pairs) {
    for (const auto& p : pairs) insert(p);
}

bool PrecSet::insert(Precedence p) {
    if (p.before == p.after) return false;
    if (!hashed_.insert(key(p)).second) return false;
    ordered_.insert(p);
    return true;
}

bool PrecSet::erase(Precedence p) {
    if (!hashed_.erase(key(p))) return false;
    ordered_.erase(p);
    return true;
}

void PrecSet::merge(const PrecSet& other) {
    for (const auto& p : other) insert(p);
}

PrecSet PrecSet::transposed() const {
    PrecSet out;
    for (const auto& p : ordered_) out.insert(p.reversed());
    return out;
}

PrecSet PrecSet::restricted(const std::function<bool(FeatureId)>& keep) const {
    PrecSet out;
    for (const auto& p : ordered_)
        if (keep(p.before) && keep(p.after)) out.insert(p);
    return out;
}

std::string to_string(Precedence p) {
    return std::to_string(p.before) + "<" + std::to_string(p.after);
}

std::string to_string(const TotalOrder& order) {
    std::ostringstream os;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k) os << " < ";
        os << order[k];
    }
    return os.str();
}

}  // namespace fsp
