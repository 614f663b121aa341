#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fsp/encoders.hpp"

namespace fsp {

enum class EncodeFormat { WcnfAtom, WcnfUnary, WcnfBinary, Opb, Lp, Wcsp };

std::optional<EncodeFormat> parse_encode_format(const std::string& s);
std::string to_string(EncodeFormat f);

/// DIMACS weighted partial MaxSAT. Comment lines carry the clause census
/// and the variable-role table; hard clauses carry weight top.
std::string write_wcnf(const WeightedClauseSet& w);
/// Reads clauses, top and the role table back. Clause kinds are not kept.
WeightedClauseSet read_wcnf(const std::string& text);

/// Linear pseudo-Boolean with a `min:` objective; the constant offset is
/// recorded in a comment.
std::string write_opb(const PbModel& pb);
PbModel read_opb(const std::string& text);

/// CPLEX LP text format.
std::string write_lp(const MipModel& mip);
MipModel read_lp(const std::string& text);

/// toulbar2 wcsp text format: each table lists its most common cost as the
/// default (ties to the lower cost) followed by the other tuples.
std::string write_wcsp(const WcspModel& m);
WcspModel read_wcsp(const std::string& text);

/// Encodes `sub` in `format` and renders the file.
std::string encode_to(const Subscription& sub, EncodeFormat format, bool reduced = false);

}  // namespace fsp
