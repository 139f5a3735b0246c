#pragma once
// Drivers behind the CLI: simulations, baseline comparisons and the invariant
// suite, plus the report document they share.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genlimit/adversary.hpp"
#include "genlimit/collection.hpp"
#include "genlimit/generators.hpp"
#include "genlimit/json_io.hpp"
#include "genlimit/oracle.hpp"
#include "genlimit/procedures.hpp"

namespace genlimit {

GroupPartition load_groups(const Json& doc, const RegistryPtr& registry);
GroupPartition load_groups_file(const std::filesystem::path& path, const RegistryPtr& registry);

// ---------------------------------------------------------------------------
// Configuration

enum class ScheduleKind { Identity, Pow2, Sufficient, Table };
enum class AttackKind { Canonical, IntersectionFirst, Repr };
const char* to_string(AttackKind a) noexcept;

struct RunConfig {
  Setting setting = Setting::Plain;
  /// Noise levels 0..levels are processed.
  std::uint32_t levels = 0;
  /// Simulation noise level; defaults to `levels`.
  std::optional<std::uint32_t> noise;
  std::optional<GroupPartition> groups;
  Rational alpha{1, 2};
  ScheduleKind schedule = ScheduleKind::Sufficient;
  std::vector<std::uint64_t> schedule_table;
  /// 0-based; nullopt runs every target.
  std::optional<std::size_t> target;
  AttackKind attack = AttackKind::Canonical;
  /// 0 picks 2 * bound + 16.
  std::size_t horizon = 0;
};

// ---------------------------------------------------------------------------
// Reports

struct SimStep {
  Token input = Token::integer(0);
  std::size_t distinct = 0;
  Distribution output;
  bool valid = false;
  /// Representative runs only.
  std::optional<Rational> linf;
  bool operator==(const SimStep&) const = default;
};

struct SimReport {
  std::string generator;
  std::string adversary;
  std::size_t target = 0;
  std::uint32_t noise = 0;
  std::optional<Rational> alpha;
  std::vector<SimStep> steps;
  std::uint64_t first_stable = 1;
  /// Theoretical bound max(g, m* + 1).
  std::uint64_t bound = 1;
  std::uint64_t m_star = 0;
  bool representation_ok = true;
  bool passed = false;
  bool operator==(const SimReport&) const = default;
};

struct VerdictRow {
  std::string a;
  std::string b;
  oracle::Dominance verdict = oracle::Dominance::Equal;
  bool operator==(const VerdictRow&) const = default;
};

struct InvariantResult {
  std::string name;
  bool passed = true;
  std::string detail;
  bool operator==(const InvariantResult&) const = default;
};

struct NamedSequence {
  std::string name;
  std::vector<std::uint64_t> times;
  bool operator==(const NamedSequence&) const = default;
};

struct Report {
  std::optional<ComplexityTable> table;
  std::vector<NamedSequence> sequences;
  std::vector<SimReport> sims;
  std::vector<VerdictRow> verdicts;
  std::vector<InvariantResult> invariants;
  std::optional<std::uint64_t> seed;
  bool passed() const;
  bool operator==(const Report&) const = default;
};

Json table_to_json(const ComplexityTable& t, const AtomRegistry& registry);
ComplexityTable table_from_json(const Json& j, const AtomRegistry& registry);
Json report_to_json(const Report& r, const AtomRegistry& registry);
Report report_from_json(const Json& j, const AtomRegistry& registry);

// ---------------------------------------------------------------------------
// Operations

/// Table for the configured setting; noisy tables cover every cell with
/// noise <= levels.
ComplexityTable complexity_table(const Collection& c, const RunConfig& cfg);
ScheduleFn make_schedule(const RunConfig& cfg, const ComplexityTable& table);

/// Feeds `script` to `g` and grades every step against the target language.
SimReport run_simulation(Generator& g, const EnumerationScript& script, const Collection& c,
                         const GroupPartition* groups = nullptr, const std::optional<Rational>& alpha = {});

/// Builds generator and adversary from the configuration; one report per target.
std::vector<SimReport> simulate(const Collection& c, const RunConfig& cfg);

struct Comparison {
  std::vector<NamedSequence> sequences;
  std::vector<VerdictRow> verdicts;
  std::uint64_t orderings = 0;
  std::uint64_t orderings_dominating_default = 0;
  std::uint64_t orderings_dominating_pareto = 0;
};

inline constexpr std::size_t kMaxSweep = 8;

/// LRT, default CP, the best reordered CP found by sweeping the first
/// min(n, 8) positions, and m* + 1.
Comparison compare(const Collection& c);

/// The invariant suite for the configured setting, including the mutant
/// self-test.
std::vector<InvariantResult> verify(const Collection& c, const RunConfig& cfg);

enum class Command { Complexity, Simulate, Compare, Verify };

/// One CLI command. Compare adds a pareto-undominated check so that
/// `passed()` means the same thing for every command.
Report run_command(Command cmd, const Collection& c, const RunConfig& cfg);

}  // namespace genlimit
