#pragma once

// Insertion-sort complexity procedures (plain, noisy, representative), their
// exact witness optimizers, group partitions and schedule functions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genlimit/collection.hpp"
#include "genlimit/rational.hpp"
#include "genlimit/setalg.hpp"

namespace genlimit {

enum class Setting { Plain, Noisy, Representative };
const char* to_string(Setting s) noexcept;

/// A copy of language `language` (0-based) at noise level `noise`.
struct Cell {
  std::size_t language = 0;
  std::uint32_t noise = 0;

  auto operator<=>(const Cell&) const = default;
};

struct TableEntry {
  Cell cell;
  /// 1-based processing position: the language index, or the diagonal position.
  std::uint64_t position = 0;
  std::uint64_t m_star = 0;
  /// Entry indices (processing order), ascending; empty when no witness exists.
  std::vector<std::size_t> witness;
  TokenSet witness_set;

  bool operator==(const TableEntry&) const = default;
};

struct ComplexityTable {
  Setting setting = Setting::Plain;
  std::optional<Rational> alpha;
  std::vector<TableEntry> entries;
  /// Entry indices in sorted order.
  std::vector<std::size_t> ordering;

  std::optional<std::size_t> find(Cell cell) const;
  std::vector<std::uint64_t> m_star_values() const;

  bool operator==(const ComplexityTable&) const = default;
};

// ---------------------------------------------------------------------------
// Diagonal traversal

/// 1-based diagonal position of L_{n,i} (i 1-based).
std::uint64_t diag_index(std::uint64_t n, std::uint64_t i);
/// Inverse of diag_index: (n, i) with i 1-based.
std::pair<std::uint64_t, std::uint64_t> diag_elem(std::uint64_t position);

// ---------------------------------------------------------------------------
// Group partitions and scarcity

inline constexpr std::size_t kDefaultMaxGroups = 8;

class GroupPartition {
 public:
  /// Validates that the groups are pairwise disjoint and cover the universe.
  GroupPartition(std::vector<std::string> names, std::vector<SetExpr> groups,
                 std::size_t max_groups = kDefaultMaxGroups);

  std::size_t size() const noexcept { return groups_.size(); }
  const SetExpr& group(std::size_t g) const { return groups_.at(g); }
  const std::string& name(std::size_t g) const { return names_.at(g); }
  std::size_t group_of(const Token& t) const;

  /// Per-group counts of a finite token set.
  std::vector<std::uint64_t> counts(const TokenSet& tokens) const;

 private:
  std::vector<std::string> names_;
  std::vector<SetExpr> groups_;
};

/// B = groups g with A_g ∩ (inter \ tokens) empty, ascending.
std::vector<std::size_t> scarce_groups(const SetExpr& inter, const TokenSet& tokens,
                                       const GroupPartition& p);

/// False for an empty token set. Exact rational comparisons.
bool suffers_scarcity(const TokenSet& tokens, const SetExpr& inter, const GroupPartition& p,
                      const Rational& alpha);

// ---------------------------------------------------------------------------
// Witness optimizers

struct Evaluation {
  std::uint64_t m = 0;
  /// Positions into the evaluated prefix, ascending.
  std::vector<std::size_t> witness;
  TokenSet witness_set;
};

struct NoisyMember {
  const SetExpr* set = nullptr;
  std::size_t language = 0;
  std::uint32_t noise = 0;
};

/// Largest finite T a-contained in every member of some subcollection that
/// contains `j` and has finite intersection.
Evaluation max_noisy_witness(const std::vector<NoisyMember>& prefix, std::size_t j);

/// Largest finite T inside every member of some subcollection containing `j`
/// such that T suffers group scarcity. alpha must be positive.
Evaluation max_scarce_witness(std::span<const SetExpr> prefix, std::size_t j,
                              const GroupPartition& p, const Rational& alpha);

/// Optimal scarcity-suffering subset of one fixed intersection.
TokenSet max_scarce_subset(const SetExpr& inter, const GroupPartition& p, const Rational& alpha);

// ---------------------------------------------------------------------------
// Procedures

enum class BreakRule {
  Strict,     // break iff m_chk > m*(previous)
  NonStrict,  // break iff m_chk >= m*(previous); a deliberate mutant for verifier self-tests
};

inline constexpr std::size_t kDefaultNoisyCapacity = 36;
inline constexpr std::size_t kDefaultRepresentativeCapacity = 16;

class Sorter;

struct ProcedureOptions {
  /// Maximum number of processed entries; 0 picks the setting's default.
  std::size_t capacity = 0;
  BreakRule break_rule = BreakRule::Strict;
  /// Called after every completed for-loop iteration.
  std::function<void(const Sorter&)> after_iteration;
};

/// Incremental insertion sort; earlier iterations are never recomputed.
class Sorter {
 public:
  virtual ~Sorter() = default;

  Setting setting() const noexcept { return table_.setting; }
  const ComplexityTable& table() const noexcept { return table_; }
  const Collection& collection() const noexcept { return collection_; }
  /// Processing positions covered so far.
  std::uint64_t limit() const noexcept { return limit_; }
  /// Highest position that can ever hold an entry; nullopt = unbounded.
  virtual std::optional<std::uint64_t> last_position() const = 0;

  void extend_to(std::uint64_t limit);

  /// Re-evaluates Step A / Step i for the entry at sorted position k (0-based)
  /// over the current ordering prefix.
  Evaluation evaluate_at(std::size_t k) const;

 protected:
  Sorter(Collection c, Setting s, ProcedureOptions options, std::size_t default_capacity);

  virtual std::optional<Cell> cell_for(std::uint64_t position) const = 0;
  /// `prefix` holds entry indices; its last element is the candidate.
  virtual Evaluation evaluate(const std::vector<std::size_t>& prefix) const = 0;

  Collection collection_;
  ComplexityTable table_;
  ProcedureOptions options_;
  std::size_t capacity_;
  std::uint64_t limit_ = 0;

 private:
  void process(std::uint64_t position);
};

class PlainSorter final : public Sorter {
 public:
  explicit PlainSorter(Collection c, ProcedureOptions options = {});
  std::optional<std::uint64_t> last_position() const override { return collection_.size(); }

 private:
  std::optional<Cell> cell_for(std::uint64_t position) const override;
  Evaluation evaluate(const std::vector<std::size_t>& prefix) const override;
};

class NoisySorter final : public Sorter {
 public:
  explicit NoisySorter(Collection c, ProcedureOptions options = {});
  std::optional<std::uint64_t> last_position() const override { return std::nullopt; }

 private:
  std::optional<Cell> cell_for(std::uint64_t position) const override;
  Evaluation evaluate(const std::vector<std::size_t>& prefix) const override;
};

class RepresentativeSorter final : public Sorter {
 public:
  RepresentativeSorter(Collection c, GroupPartition p, Rational alpha, ProcedureOptions options = {});
  std::optional<std::uint64_t> last_position() const override { return collection_.size(); }
  const GroupPartition& partition() const noexcept { return partition_; }
  const Rational& alpha() const noexcept { return alpha_; }

 private:
  std::optional<Cell> cell_for(std::uint64_t position) const override;
  Evaluation evaluate(const std::vector<std::size_t>& prefix) const override;

  GroupPartition partition_;
  Rational alpha_;
};

ComplexityTable procedure1(const Collection& c, std::size_t n, ProcedureOptions options = {});
/// Processes every cell with diagonal position <= l_max.
ComplexityTable procedure2(const Collection& c, std::uint64_t l_max, ProcedureOptions options = {});
ComplexityTable procedure3(const Collection& c, const GroupPartition& p, const Rational& alpha,
                           std::size_t n, ProcedureOptions options = {});

/// Intersection of the languages of the given entries (universe if none).
SetExpr witness_intersection(const Collection& c, const ComplexityTable& t,
                             const std::vector<std::size_t>& entries);

// ---------------------------------------------------------------------------
// Schedules

class ScheduleFn {
 public:
  enum class Kind { Identity, Power, Explicit, FromComplexities };

  static ScheduleFn identity();
  static ScheduleFn power(std::uint64_t base);
  /// f(1), f(2), ... ; must be non-decreasing.
  static ScheduleFn explicit_table(std::vector<std::uint64_t> values);
  /// f(t) = max{position p : m*(p) + 1 <= t} over the table's entries.
  static ScheduleFn from_complexities(const ComplexityTable& table);

  Kind kind() const noexcept { return kind_; }
  /// f(t) for t >= 1; an explicit table repeats its last value once exhausted.
  std::uint64_t operator()(std::uint64_t t) const;
  /// Smallest j with f(j) >= target; throws UnboundedSchedule if none is known.
  std::uint64_t g(std::uint64_t target) const;
  std::string describe() const;

 private:
  ScheduleFn(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::uint64_t base_ = 2;
  std::vector<std::uint64_t> values_;
};

/// The schedule making every t*(L) equal to m*(L)+1 on the table's prefix.
ScheduleFn sufficient_f(const ComplexityTable& table);

}  // namespace genlimit
