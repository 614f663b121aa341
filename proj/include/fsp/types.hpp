#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace fsp {

/// 1-based feature identifier, dense in [1, n] within one catalogue.
using FeatureId = std::int32_t;
/// Weights of features and user precedences; always >= 1.
using Weight = std::int64_t;

/// Ordered pair (before, after) meaning `before` must precede `after`.
struct Precedence {
    FeatureId before = 0;
    FeatureId after = 0;

    Precedence reversed() const { return {after, before}; }
    friend auto operator<=>(const Precedence&, const Precedence&) = default;
};

/// A total order as a sequence in which every feature appears once.
using TotalOrder = std::vector<FeatureId>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by operations whose precondition is a consistent subscription.
class InconsistentError : public Error {
public:
    using Error::Error;
};

/// Raised when an exhaustive routine is called beyond its size guard.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// Irreflexive set of precedences. Iteration is in sorted pair order;
/// membership is hashed.
class PrecSet {
public:
    using const_iterator = std::set<Precedence>::const_iterator;

    PrecSet() = default;
    PrecSet(std::initializer_list<Precedence> pairs);

    /// Returns false for reflexive or already present pairs.
    bool insert(Precedence p);
    bool insert(FeatureId before, FeatureId after) { return insert({before, after}); }
    bool erase(Precedence p);
    bool contains(Precedence p) const { return hashed_.count(key(p)) != 0; }
    bool contains(FeatureId before, FeatureId after) const { return contains({before, after}); }

    std::size_t size() const { return ordered_.size(); }
    bool empty() const { return ordered_.empty(); }
    const_iterator begin() const { return ordered_.begin(); }
    const_iterator end() const { return ordered_.end(); }

    void merge(const PrecSet& other);
    PrecSet transposed() const;
    /// Pairs whose endpoints both satisfy `keep`.
    PrecSet restricted(const std::function<bool(FeatureId)>& keep) const;
    std::vector<Precedence> to_vector() const { return {ordered_.begin(), ordered_.end()}; }

    bool operator==(const PrecSet& other) const { return ordered_ == other.ordered_; }

private:
    static std::uint64_t key(Precedence p) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.before)) << 32) |
               static_cast<std::uint32_t>(p.after);
    }

    std::set<Precedence> ordered_;
    std::unordered_set<std::uint64_t> hashed_;
};

std::string to_string(Precedence p);
std::string to_string(const TotalOrder& order);

}  // namespace fsp
