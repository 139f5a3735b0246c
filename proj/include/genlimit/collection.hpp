#pragma once

// Finite language collections and the baseline measures built on the
// bounded maximum-finite-intersection search.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "genlimit/setalg.hpp"

namespace genlimit {

/// How the closure dimensions d_i behave in the limit; decides the LRT formula.
struct LrtLimit {
  bool finite = false;
  std::uint64_t c = 0;

  bool operator==(const LrtLimit&) const = default;
};

struct Language {
  std::string name;
  SetExpr set;
};

class Collection {
 public:
  /// Throws FiniteLanguage (naming the 1-based index) if any language is finite.
  Collection(RegistryPtr registry, std::vector<Language> languages, LrtLimit limit = {});

  const RegistryPtr& registry() const noexcept { return registry_; }
  const std::vector<Language>& languages() const noexcept { return languages_; }
  std::size_t size() const noexcept { return languages_.size(); }
  const SetExpr& operator[](std::size_t i) const { return languages_.at(i).set; }
  const std::string& name(std::size_t i) const { return languages_.at(i).name; }
  const LrtLimit& lrt_limit() const noexcept { return limit_; }

  std::vector<SetExpr> sets() const;
  Collection prefix(std::size_t n) const;
  /// Languages in the order given by `order` (0-based original indices).
  Collection reordered(const std::vector<std::size_t>& order) const;

 private:
  RegistryPtr registry_;
  std::vector<Language> languages_;
  LrtLimit limit_;
};

inline constexpr std::size_t kDefaultPlainCapacity = 20;

struct WitnessResult {
  std::uint64_t m = 0;
  /// 0-based positions into the searched prefix, ascending; empty = no
  /// subcollection containing the required position has finite intersection.
  std::vector<std::size_t> witness;

  bool operator==(const WitnessResult&) const = default;
};

/// Largest finite intersection among subcollections of `prefix` containing
/// position `must`. Ties go to the lexicographically smallest position set.
WitnessResult max_finite_intersection(std::span<const SetExpr> prefix, std::size_t must,
                                      std::size_t capacity = kDefaultPlainCapacity);

/// Largest finite intersection among any subcollection of `prefix`; 0 if none.
std::uint64_t closure_dimension(std::span<const SetExpr> prefix,
                                std::size_t capacity = kDefaultPlainCapacity);

/// m(L_i) over (L_1..L_i); `i` is 1-based.
std::uint64_t cp_complexity(const Collection& c, std::size_t i,
                            std::size_t capacity = kDefaultPlainCapacity);

enum class Baseline { Lrt, Cp };

/// Guaranteed generation times of the prior algorithms, one per language.
std::vector<std::uint64_t> baseline_times(const Collection& c, Baseline which,
                                          std::size_t capacity = kDefaultPlainCapacity);

}  // namespace genlimit
