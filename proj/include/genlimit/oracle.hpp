#pragma once

// Brute-force recomputations, kept structurally apart from the optimized
// procedures: plain bitmask enumeration, token-window searches and dominance.

#include <cstdint>
#include <vector>

#include "genlimit/collection.hpp"
#include "genlimit/procedures.hpp"

namespace genlimit::oracle {

inline constexpr std::size_t kMaxOraclePrefix = 12;

/// Literal replay of the plain procedure with unpruned subset enumeration.
ComplexityTable oracle_mstar(const Collection& c, std::size_t n);

/// Exhaustive noisy witness size over all subsets of `prefix` containing `j`,
/// counting tokens inside a window of integers [-w, w] and atom indices [0, w].
std::uint64_t oracle_noisy_T(const std::vector<NoisyMember>& prefix, std::size_t j, std::int64_t w);

/// Exhaustive representative witness size by per-group count vectors, with
/// group-part finiteness decided by growing the window from w to 2w.
std::uint64_t oracle_scarce_T(const std::vector<SetExpr>& prefix, std::size_t j, const GroupPartition& p,
                              const Rational& alpha, std::int64_t w);

enum class Dominance { Equal, Dominates, DominatedBy, Incomparable };
const char* to_string(Dominance d) noexcept;

/// Verdict of `a` against `b`; throws Parameter on length mismatch.
Dominance pareto_dominance(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

/// Languages are unions of 1-3 intervals from [-20, 40] (at least one ray or
/// atom keeps them infinite) plus 0-2 atoms from a 5-atom registry.
Collection random_collection(std::uint64_t seed, std::size_t languages);

}  // namespace genlimit::oracle
