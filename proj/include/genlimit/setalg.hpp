#pragma once

// Symbolic algebra over the universe U = Z (+) (atoms x N).
//
// Every value is kept in a unique normal form: a sorted list of closed,
// pairwise disjoint, non-adjacent integer intervals (endpoints may be
// infinite) plus, per atom stream, either a finite index set or a cofinite
// one (the stream minus finitely many indices).

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace genlimit {

using AtomId = std::uint32_t;

class AtomRegistry {
 public:
  AtomRegistry() = default;
  explicit AtomRegistry(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(AtomId id) const;
  std::optional<AtomId> find(std::string_view name) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool operator==(const AtomRegistry&) const = default;

 private:
  std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const AtomRegistry>;

RegistryPtr make_registry(std::vector<std::string> names);

inline constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kPosInf = std::numeric_limits<std::int64_t>::max();

/// A universe element. Ordering is the canonical enumeration order:
/// round r lists Int(r), Int(-r) (r > 0), then element r of every atom by id.
class Token {
 public:
  static Token integer(std::int64_t value);
  static Token atom(AtomId atom, std::uint64_t index);

  bool is_integer() const noexcept { return !is_atom_; }
  bool is_atom() const noexcept { return is_atom_; }
  std::int64_t value() const noexcept { return value_; }
  AtomId atom_id() const noexcept { return atom_; }
  std::uint64_t index() const noexcept { return index_; }

  std::uint64_t round() const noexcept;

  std::strong_ordering operator<=>(const Token& other) const noexcept;
  bool operator==(const Token& other) const noexcept = default;

 private:
  Token() = default;

  bool is_atom_ = false;
  std::int64_t value_ = 0;
  AtomId atom_ = 0;
  std::uint64_t index_ = 0;
};

using TokenSet = std::set<Token>;

std::string to_string(const Token& token, const AtomRegistry& registry);

struct Interval {
  std::int64_t lo;
  std::int64_t hi;

  bool bounded() const noexcept { return lo != kNegInf && hi != kPosInf; }
  bool contains(std::int64_t v) const noexcept { return lo <= v && v <= hi; }
  /// Number of integers; only meaningful when bounded().
  std::uint64_t size() const noexcept;

  auto operator<=>(const Interval&) const = default;
};

struct AtomPart {
  /// true: the whole stream minus `indices`; false: exactly `indices`.
  bool cofinite = true;
  std::set<std::uint64_t> indices;

  bool contains(std::uint64_t k) const noexcept {
    return cofinite != (indices.count(k) != 0);
  }

  auto operator<=>(const AtomPart&) const = default;
};

class Cardinality {
 public:
  static Cardinality finite(std::uint64_t n) { return Cardinality(n); }
  static Cardinality infinite() { return Cardinality(); }

  bool is_finite() const noexcept { return count_.has_value(); }
  bool is_infinite() const noexcept { return !count_.has_value(); }
  std::uint64_t count() const;

  bool operator==(const Cardinality&) const = default;

 private:
  Cardinality() = default;
  explicit Cardinality(std::uint64_t n) : count_(n) {}

  std::optional<std::uint64_t> count_;
};

std::string to_string(const Cardinality& c);

class SetExpr {
 public:
  explicit SetExpr(RegistryPtr registry);

  static SetExpr empty(RegistryPtr registry);
  static SetExpr universe(RegistryPtr registry);
  /// Normalizes arbitrary (overlapping, unsorted, empty) pieces.
  static SetExpr from_parts(RegistryPtr registry, std::vector<Interval> intervals,
                            std::map<AtomId, AtomPart> atoms);
  static SetExpr from_tokens(RegistryPtr registry, const TokenSet& tokens);

  const RegistryPtr& registry() const noexcept { return registry_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const std::map<AtomId, AtomPart>& atom_parts() const noexcept { return atoms_; }

  bool contains(const Token& token) const;
  bool is_empty() const noexcept { return intervals_.empty() && atoms_.empty(); }
  bool is_finite() const noexcept;

  /// Structural equality of normal forms (registries compared by content).
  bool operator==(const SetExpr& other) const;
  /// Arbitrary but total order on normal forms; used for caching.
  bool operator<(const SetExpr& other) const;

 private:
  void normalize();

  RegistryPtr registry_;
  std::vector<Interval> intervals_;
  std::map<AtomId, AtomPart> atoms_;
};

bool same_registry(const SetExpr& a, const SetExpr& b) noexcept;

SetExpr intersect(const SetExpr& a, const SetExpr& b);
SetExpr unite(const SetExpr& a, const SetExpr& b);
/// Complement relative to the universe of the registry.
SetExpr complement(const SetExpr& a);
SetExpr subtract_finite(const SetExpr& a, const TokenSet& tokens);
Cardinality cardinality(const SetExpr& a);

/// Number of tokens of `tokens` outside `l`; `l` a-contains `tokens` iff the
/// result is at most a.
std::size_t violations(const TokenSet& tokens, const SetExpr& l);
bool contains_all(const SetExpr& l, const TokenSet& tokens);

/// Canonically smallest token of `a` not in `forbidden`; nullopt = exhausted.
std::optional<Token> least_new(const SetExpr& a, const TokenSet& forbidden);

/// First `n` tokens of `a` in canonical order, skipping `skip` (may be fewer
/// when `a` runs out).
std::vector<Token> canonical_prefix(const SetExpr& a, std::size_t n,
                                    const TokenSet& skip = {});

/// All tokens of a finite set in canonical order; throws if `a` is infinite.
std::vector<Token> enumerate_finite(const SetExpr& a);

/// Lazy canonical-order walk over a SetExpr.
class CanonicalCursor {
 public:
  explicit CanonicalCursor(const SetExpr& set);
  ~CanonicalCursor();
  CanonicalCursor(CanonicalCursor&&) noexcept;
  CanonicalCursor& operator=(CanonicalCursor&&) noexcept;

  std::optional<Token> next();

 private:
  struct Stream;
  std::vector<Stream> streams_;
};

}  // namespace genlimit
