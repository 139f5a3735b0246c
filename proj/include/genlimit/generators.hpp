#pragma once
// Generation algorithms. Every generator consumes one adversary token per step
// and answers with a distribution; deterministic generators answer with a
// point mass.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "genlimit/collection.hpp"
#include "genlimit/procedures.hpp"
#include "genlimit/rational.hpp"
#include "genlimit/setalg.hpp"

namespace genlimit {

/// Finite support, positive masses summing to exactly one.
using Distribution = std::map<Token, Rational>;

Distribution point_mass(const Token& t);
/// Uniform over a nonempty set.
Distribution empirical(const TokenSet& s);
std::vector<Rational> group_masses(const Distribution& d, const GroupPartition& p);
/// group_masses(empirical(s), p) without building the distribution.
std::vector<Rational> empirical_group_masses(const TokenSet& s, const GroupPartition& p);
Rational linf_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);
Rational total_mass(const Distribution& d);

class Generator {
 public:
  virtual ~Generator() = default;
  /// Adds x_t to the input set and produces the output for step t.
  Distribution feed(const Token& x);
  std::uint64_t time() const noexcept { return t_; }
  const TokenSet& inputs() const noexcept { return inputs_; }
  /// Language indices (0-based) admitted into I_t at the last step.
  const std::vector<std::size_t>& active() const noexcept { return active_; }

 protected:
  virtual Distribution produce() = 0;
  std::uint64_t t_ = 0;
  TokenSet inputs_;
  std::vector<std::size_t> active_;
};

/// Shared traversal: builds the considered cells for step t, admits them in
/// order while the running intersection stays infinite, and emits the
/// canonically least new token of the intersection.
class TraversalGenerator : public Generator {
 public:
  const Collection& collection() const noexcept { return collection_; }

 protected:
  explicit TraversalGenerator(Collection c) : collection_(std::move(c)) {}
  /// Cells in traversal order for the current step.
  virtual std::vector<Cell> considered() = 0;
  virtual bool admits(const Cell& cell, const SetExpr& candidate_intersection) const;
  SetExpr traverse();
  Distribution produce() override;
  Collection collection_;
};

/// Orderings of one sorter recorded at every processed limit, so generators
/// running the same procedure share a single insertion sort.
class OrderingHistory {
 public:
  explicit OrderingHistory(std::unique_ptr<Sorter> sorter);
  /// Ordering once positions 1..limit are processed.
  const std::vector<Cell>& at(std::uint64_t limit);
  /// Full table at `limit`; must be requested before the sorter passes it.
  const ComplexityTable& table_at(std::uint64_t limit);
  const Sorter& sorter() const noexcept { return *sorter_; }

 private:
  std::unique_ptr<Sorter> sorter_;
  std::vector<std::vector<Cell>> snapshots_;
  std::map<std::uint64_t, ComplexityTable> tables_;
};

class ParetoGenerator final : public TraversalGenerator {
 public:
  ParetoGenerator(Collection c, ScheduleFn f);
  ParetoGenerator(Collection c, ScheduleFn f, std::shared_ptr<OrderingHistory> history);

 private:
  std::vector<Cell> considered() override;
  ScheduleFn f_;
  std::shared_ptr<OrderingHistory> history_;
};

/// The prior algorithm: default ordering and f(t) = t.
class CpGenerator final : public TraversalGenerator {
 public:
  explicit CpGenerator(Collection c) : TraversalGenerator(std::move(c)) {}

 private:
  std::vector<Cell> considered() override;
};

class NoisyGenerator final : public TraversalGenerator {
 public:
  NoisyGenerator(Collection c, ScheduleFn f, ProcedureOptions options = {});
  NoisyGenerator(Collection c, ScheduleFn f, std::shared_ptr<OrderingHistory> history);

 private:
  std::vector<Cell> considered() override;
  bool admits(const Cell& cell, const SetExpr& candidate_intersection) const override;
  ScheduleFn f_;
  std::shared_ptr<OrderingHistory> history_;
};

class RepresentativeGenerator final : public TraversalGenerator {
 public:
  RepresentativeGenerator(Collection c, GroupPartition p, Rational alpha, ScheduleFn f);
  /// `history` must run a RepresentativeSorter with the same partition and alpha.
  RepresentativeGenerator(Collection c, GroupPartition p, Rational alpha, ScheduleFn f,
                          std::shared_ptr<OrderingHistory> history);
  const GroupPartition& partition() const noexcept { return partition_; }

 private:
  std::vector<Cell> considered() override;
  bool admits(const Cell& cell, const SetExpr& candidate_intersection) const override;
  Distribution produce() override;
  GroupPartition partition_;
  Rational alpha_;
  ScheduleFn f_;
  std::shared_ptr<OrderingHistory> history_;
};

// ---------------------------------------------------------------------------
// Oblivious generators for the infinite impossibility collections, run on a
// finite window of declared times.

enum class ObliviousKind {
  Cominus,    // L_e = Z \ {e}
  RayFamily,  // L_e = {1..100} u Z_{>=e}
};
const char* to_string(ObliviousKind k) noexcept;

/// e_1, e_2, ... = 0, 1, -1, 2, -2, ...
std::int64_t zigzag(std::uint64_t i);

struct TailRule {
  enum class Kind { Identity, Constant } kind = Kind::Identity;
  std::uint64_t c = 1;
};

struct TimeSequence {
  /// t_1..t_N for the window; t_i for i > N follows the tail rule.
  std::vector<std::uint64_t> declared;
  TailRule tail;
  std::uint64_t at(std::uint64_t i) const;
};

inline constexpr std::int64_t kRayCore = 100;

/// Throws Admissibility when the sequence cannot be achieved.
void check_admissible(ObliviousKind kind, const TimeSequence& seq);
SetExpr oblivious_language(ObliviousKind kind, std::uint64_t i, const RegistryPtr& registry);
/// L_{e_1}..L_{e_n} as a collection over the integers.
Collection oblivious_window(ObliviousKind kind, std::size_t n);

class ObliviousGenerator final : public Generator {
 public:
  /// Checks admissibility first.
  ObliviousGenerator(ObliviousKind kind, TimeSequence seq);
  const RegistryPtr& registry() const noexcept { return registry_; }
  /// Intersection of L_{e_i} over all i with t_i <= bound; empty if none.
  SetExpr threshold_intersection(std::uint64_t bound) const;

 private:
  Distribution produce() override;
  ObliviousKind kind_;
  TimeSequence seq_;
  RegistryPtr registry_;
  TokenSet outputs_;
};

}  // namespace genlimit
