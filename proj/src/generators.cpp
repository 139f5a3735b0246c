#include "genlimit/generators.hpp"

#include <algorithm>

#include "genlimit/error.hpp"

namespace genlimit {

Distribution point_mass(const Token& t) { return {{t, Rational(1)}}; }

Distribution empirical(const TokenSet& s) {
  if (s.empty()) throw Error(ErrorCode::Parameter, "empirical distribution of an empty set");
  Distribution d;
  Rational each(1, static_cast<std::int64_t>(s.size()));
  for (const auto& t : s) d.emplace(t, each);
  return d;
}

std::vector<Rational> group_masses(const Distribution& d, const GroupPartition& p) {
  std::vector<Rational> out(p.size(), Rational(0));
  for (const auto& [t, m] : d) out[p.group_of(t)] += m;
  return out;
}

std::vector<Rational> empirical_group_masses(const TokenSet& s, const GroupPartition& p) {
  if (s.empty()) throw Error(ErrorCode::Parameter, "empirical distribution of an empty set");
  auto counts = p.counts(s);
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (auto k : counts) out.emplace_back(static_cast<std::int64_t>(k), static_cast<std::int64_t>(s.size()));
  return out;
}

Rational linf_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::Parameter, "distance between vectors of different lengths");
  Rational best(0);
  for (std::size_t g = 0; g < a.size(); ++g) best = std::max(best, a[g] > b[g] ? a[g] - b[g] : b[g] - a[g]);
  return best;
}

Rational total_mass(const Distribution& d) {
  Rational s(0);
  for (const auto& [t, m] : d) s += m;
  return s;
}

Distribution Generator::feed(const Token& x) {
  ++t_;
  inputs_.insert(x);
  return produce();
}

// ---------------------------------------------------------------------------

bool TraversalGenerator::admits(const Cell& cell, const SetExpr& candidate_intersection) const {
  return contains_all(collection_[cell.language], inputs_) && !candidate_intersection.is_finite();
}

SetExpr TraversalGenerator::traverse() {
  active_.clear();
  auto inter = SetExpr::universe(collection_.registry());
  for (const auto& cell : considered()) {
    auto next = intersect(inter, collection_[cell.language]);
    if (!admits(cell, next)) continue;
    active_.push_back(cell.language);
    inter = std::move(next);
  }
  return inter;
}

Distribution TraversalGenerator::produce() {
  // With I_t empty the running intersection is the universe, which is exactly
  // the arbitrary-string fallback.
  auto inter = traverse();
  auto z = least_new(inter, inputs_);
  if (!z) throw Error(ErrorCode::Parameter, "admitted intersection has no new token");
  return point_mass(*z);
}

OrderingHistory::OrderingHistory(std::unique_ptr<Sorter> sorter) : sorter_(std::move(sorter)), snapshots_(1) {}

const std::vector<Cell>& OrderingHistory::at(std::uint64_t limit) {
  if (auto last = sorter_->last_position()) limit = std::min(limit, *last);
  while (snapshots_.size() <= limit) {
    sorter_->extend_to(snapshots_.size());
    const auto& t = sorter_->table();
    std::vector<Cell> cells;
    cells.reserve(t.ordering.size());
    for (auto e : t.ordering) cells.push_back(t.entries[e].cell);
    snapshots_.push_back(std::move(cells));
  }
  return snapshots_[limit];
}

const ComplexityTable& OrderingHistory::table_at(std::uint64_t limit) {
  if (auto last = sorter_->last_position()) limit = std::min(limit, *last);
  if (auto it = tables_.find(limit); it != tables_.end()) return it->second;
  if (sorter_->limit() > limit) throw Error(ErrorCode::Parameter, "ordering history already past the requested table");
  at(limit);
  return tables_.emplace(limit, sorter_->table()).first->second;
}

ParetoGenerator::ParetoGenerator(Collection c, ScheduleFn f)
    : ParetoGenerator(c, std::move(f), std::make_shared<OrderingHistory>(std::make_unique<PlainSorter>(c))) {}

ParetoGenerator::ParetoGenerator(Collection c, ScheduleFn f, std::shared_ptr<OrderingHistory> history)
    : TraversalGenerator(std::move(c)), f_(std::move(f)), history_(std::move(history)) {}

std::vector<Cell> ParetoGenerator::considered() { return history_->at(f_(t_)); }

std::vector<Cell> CpGenerator::considered() {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < std::min<std::uint64_t>(t_, collection_.size()); ++i) out.push_back({i, 0});
  return out;
}

NoisyGenerator::NoisyGenerator(Collection c, ScheduleFn f, ProcedureOptions options)
    : NoisyGenerator(c, std::move(f),
                     std::make_shared<OrderingHistory>(std::make_unique<NoisySorter>(c, std::move(options)))) {}

NoisyGenerator::NoisyGenerator(Collection c, ScheduleFn f, std::shared_ptr<OrderingHistory> history)
    : TraversalGenerator(std::move(c)), f_(std::move(f)), history_(std::move(history)) {}

std::vector<Cell> NoisyGenerator::considered() { return history_->at(f_(t_)); }

bool NoisyGenerator::admits(const Cell& cell, const SetExpr& candidate_intersection) const {
  return violations(inputs_, collection_[cell.language]) <= cell.noise && !candidate_intersection.is_finite();
}

RepresentativeGenerator::RepresentativeGenerator(Collection c, GroupPartition p, Rational alpha, ScheduleFn f)
    : RepresentativeGenerator(c, p, alpha, std::move(f),
                              std::make_shared<OrderingHistory>(std::make_unique<RepresentativeSorter>(c, p, alpha))) {}

RepresentativeGenerator::RepresentativeGenerator(Collection c, GroupPartition p, Rational alpha, ScheduleFn f,
                                                 std::shared_ptr<OrderingHistory> history)
    : TraversalGenerator(std::move(c)),
      partition_(std::move(p)),
      alpha_(alpha),
      f_(std::move(f)),
      history_(std::move(history)) {}

std::vector<Cell> RepresentativeGenerator::considered() { return history_->at(f_(t_)); }

bool RepresentativeGenerator::admits(const Cell& cell, const SetExpr& candidate_intersection) const {
  return contains_all(collection_[cell.language], inputs_) &&
         !suffers_scarcity(inputs_, candidate_intersection, partition_, alpha_);
}

Distribution RepresentativeGenerator::produce() {
  auto inter = traverse();
  if (active_.empty()) return empirical(inputs_);
  const auto& p = partition_;
  auto emp_groups = empirical_group_masses(inputs_, p);
  auto scarce = scarce_groups(inter, inputs_, p);
  Rational spare(0);
  for (auto g : scarce) spare += emp_groups[g];
  const auto open = static_cast<std::int64_t>(p.size() - scarce.size());
  if (open == 0) throw Error(ErrorCode::Parameter, "every group is scarce for the admitted intersection");
  Distribution out;
  for (std::size_t g = 0; g < p.size(); ++g) {
    if (std::binary_search(scarce.begin(), scarce.end(), g)) continue;
    auto s = least_new(intersect(p.group(g), inter), inputs_);
    if (!s) throw Error(ErrorCode::Parameter, "non-scarce group without a fresh token");
    auto mass = emp_groups[g] + spare / open;
    if (mass != Rational(0)) out.emplace(*s, mass);
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(ObliviousKind k) noexcept {
  return k == ObliviousKind::Cominus ? "cominus" : "rays";
}

std::int64_t zigzag(std::uint64_t i) {
  if (i == 0) throw Error(ErrorCode::IndexRange, "language indices start at 1");
  auto half = static_cast<std::int64_t>(i / 2);
  return i % 2 == 0 ? half : -half;
}

std::uint64_t TimeSequence::at(std::uint64_t i) const {
  if (i == 0) throw Error(ErrorCode::IndexRange, "language indices start at 1");
  if (i <= declared.size()) return declared[i - 1];
  return tail.kind == TailRule::Kind::Identity ? i : tail.c;
}

void check_admissible(ObliviousKind kind, const TimeSequence& seq) {
  for (std::size_t i = 0; i < seq.declared.size(); ++i)
    if (seq.declared[i] == 0)
      throw Error(ErrorCode::Admissibility, "t_" + std::to_string(i + 1) + " must be at least 1");
  if (seq.tail.kind == TailRule::Kind::Identity) return;
  if (seq.tail.c == 0) throw Error(ErrorCode::Admissibility, "constant tail must be at least 1");
  if (kind == ObliviousKind::Cominus)
    // {i : t_i >= c+1} contains only window indices: a finite threshold class.
    throw Error(ErrorCode::Admissibility, "constant tail " + std::to_string(seq.tail.c) +
                                              " leaves {i : t_i >= " + std::to_string(seq.tail.c + 1) + "} finite");
  if (seq.tail.c <= static_cast<std::uint64_t>(kRayCore))
    throw Error(ErrorCode::Admissibility, "constant tail " + std::to_string(seq.tail.c) +
                                              " puts unboundedly many rays below time " + std::to_string(seq.tail.c));
}

SetExpr oblivious_language(ObliviousKind kind, std::uint64_t i, const RegistryPtr& registry) {
  auto e = zigzag(i);
  if (kind == ObliviousKind::Cominus) return SetExpr::from_parts(registry, {{kNegInf, e - 1}, {e + 1, kPosInf}}, {});
  return SetExpr::from_parts(registry, {{1, kRayCore}, {e, kPosInf}}, {});
}

Collection oblivious_window(ObliviousKind kind, std::size_t n) {
  auto reg = make_registry({});
  std::vector<Language> langs;
  for (std::uint64_t i = 1; i <= n; ++i)
    langs.push_back({std::string(kind == ObliviousKind::Cominus ? "Zminus" : "Ray") + std::to_string(zigzag(i)),
                     oblivious_language(kind, i, reg)});
  return Collection(reg, std::move(langs));
}

ObliviousGenerator::ObliviousGenerator(ObliviousKind kind, TimeSequence seq)
    : kind_(kind), seq_(std::move(seq)), registry_(make_registry({})) {
  check_admissible(kind_, seq_);
}

SetExpr ObliviousGenerator::threshold_intersection(std::uint64_t bound) const {
  // Tail indices enter only through the identity rule (i <= bound); a constant
  // tail is either rejected or, for rays, above every bound used here.
  if (seq_.tail.kind == TailRule::Kind::Constant && seq_.tail.c <= bound)
    throw Error(ErrorCode::Admissibility, "threshold class is infinite");
  auto last = std::max<std::uint64_t>(seq_.declared.size(),
                                      seq_.tail.kind == TailRule::Kind::Identity ? bound : 0);
  // Closed forms: cominus languages intersect to Z minus the excluded points,
  // rays to the core plus the highest ray.
  TokenSet excluded;
  std::optional<std::int64_t> top;
  for (std::uint64_t i = 1; i <= last; ++i) {
    if (seq_.at(i) > bound) continue;
    auto e = zigzag(i);
    excluded.insert(Token::integer(e));
    top = std::max(top.value_or(e), e);
  }
  if (!top) return SetExpr::empty(registry_);
  if (kind_ == ObliviousKind::Cominus) return complement(SetExpr::from_tokens(registry_, excluded));
  return SetExpr::from_parts(registry_, {{1, kRayCore}, {*top, kPosInf}}, {});
}

Distribution ObliviousGenerator::produce() {
  TokenSet forbidden = inputs_;
  forbidden.insert(outputs_.begin(), outputs_.end());
  SetExpr inter(registry_);
  if (kind_ == ObliviousKind::Cominus) {
    inter = threshold_intersection(t_);
  } else if (inputs_.size() <= static_cast<std::size_t>(kRayCore)) {
    inter = threshold_intersection(inputs_.size());
  } else {
    // Intersection of every ray language containing S_t.
    std::int64_t low = kPosInf;
    for (const auto& x : inputs_)
      if (x.is_integer() && !(1 <= x.value() && x.value() <= kRayCore)) low = std::min(low, x.value());
    inter = SetExpr::from_parts(registry_, {{1, kRayCore}, {low, kPosInf}}, {});
  }
  auto z = least_new(inter, forbidden);
  if (!z) z = least_new(SetExpr::universe(registry_), forbidden);
  outputs_.insert(*z);
  return point_mass(*z);
}

}  // namespace genlimit
