#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsp/model.hpp"

namespace fsp {

/// Constraint type drawn for a catalogue pair {i, j}, i < j.
enum class PairType { Before, After, Mutex };  // "<", ">", "<>"

struct CatalogueSpec {
    int features = 0;     // f_c
    int constraints = 0;  // B_c
    std::vector<PairType> types;
};

struct SubscriptionSpec {
    int features = 0;  // f_u
    int precs = 0;     // p_u
    Weight max_weight = 1;
};

/// "<", ">" or "<>".
std::optional<PairType> parse_pair_type(const std::string& s);
std::string to_string(PairType t);

/// Colexicographic index of the pair (i, j), 1 <= i < j: (j-1)(j-2)/2 + i-1.
std::int64_t pair_index(int i, int j);
std::pair<int, int> pair_from_index(std::int64_t t);

/// First `k` entries of a partial Fisher-Yates shuffle of 0..n-1.
class Rng;
std::vector<std::int64_t> sample_without_replacement(Rng& rng, std::int64_t n, std::int64_t k);

/// B_c distinct pairs, each with a uniform type drawn right after the pair.
std::shared_ptr<const Catalogue> gen_catalogue(const CatalogueSpec& spec, std::uint64_t seed);

/// f_u features, their weights in increasing id order, then p_u pairs over
/// the chosen features, each followed by its orientation bit and weight.
Subscription gen_subscription(std::shared_ptr<const Catalogue> cat, const SubscriptionSpec& spec,
                              std::uint64_t seed);

/// Parsed `.fsp` file: a merged catalogue, a subscription to it and an
/// optional source/target partition.
struct Instance {
    std::shared_ptr<const Catalogue> catalogue;
    std::map<FeatureId, Weight> features;
    std::map<Precedence, Weight> user;
    std::optional<std::set<FeatureId>> source;
    std::optional<std::set<FeatureId>> target;

    Subscription subscription() const;
    /// Requires both `source` and `target`.
    BiRegionSubscription bi_region() const;
    static Instance from(const Subscription& sub);
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Instance parse_fsp(std::istream& in);
Instance parse_fsp(const std::string& text);
Instance read_fsp_file(const std::string& path);
std::string write_fsp(const Instance& inst);
void write_fsp_file(const Instance& inst, const std::string& path);

/// Relaxation text: `value V`, then `feature I` and `prec I J` lines;
/// `#` starts a comment.
std::string write_relaxation(const Relaxation& r);
/// The stated value is returned as read; callers verify it.
Relaxation parse_relaxation(const std::string& text);

}  // namespace fsp
