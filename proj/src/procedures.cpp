#include "genlimit/procedures.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "genlimit/error.hpp"

namespace genlimit {

const char* to_string(Setting s) noexcept {
  switch (s) {
    case Setting::Plain: return "plain";
    case Setting::Noisy: return "noisy";
    case Setting::Representative: return "representative";
  }
  return "unknown";
}

std::optional<std::size_t> ComplexityTable::find(Cell cell) const {
  for (std::size_t e = 0; e < entries.size(); ++e)
    if (entries[e].cell == cell) return e;
  return std::nullopt;
}

std::vector<std::uint64_t> ComplexityTable::m_star_values() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.m_star);
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal traversal

std::uint64_t diag_index(std::uint64_t n, std::uint64_t i) {
  if (i == 0) throw Error(ErrorCode::IndexRange, "language index is 1-based");
  auto d = n + i - 1;
  return d * (d + 1) / 2 + (i - 1) + 1;
}

std::pair<std::uint64_t, std::uint64_t> diag_elem(std::uint64_t position) {
  if (position == 0) throw Error(ErrorCode::IndexRange, "diagonal positions are 1-based");
  std::uint64_t d = 0;
  while ((d + 1) * (d + 2) / 2 < position) ++d;
  auto i = position - d * (d + 1) / 2;
  return {d + 1 - i, i};
}

// ---------------------------------------------------------------------------
// Group partitions

GroupPartition::GroupPartition(std::vector<std::string> names, std::vector<SetExpr> groups,
                               std::size_t max_groups)
    : names_(std::move(names)), groups_(std::move(groups)) {
  if (groups_.empty()) throw Error(ErrorCode::Parameter, "a partition needs at least one group");
  if (groups_.size() > max_groups)
    throw Error(ErrorCode::Capacity, std::to_string(groups_.size()) + " groups exceed capacity " +
                                         std::to_string(max_groups));
  names_.resize(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g)
    if (names_[g].empty()) names_[g] = "A" + std::to_string(g + 1);

  auto cover = SetExpr::empty(groups_.front().registry());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (!intersect(cover, groups_[g]).is_empty())
      throw Error(ErrorCode::Parameter, "group '" + names_[g] + "' overlaps an earlier group");
    cover = unite(cover, groups_[g]);
  }
  if (!complement(cover).is_empty()) throw Error(ErrorCode::Parameter, "groups do not cover the universe");
}

std::size_t GroupPartition::group_of(const Token& t) const {
  for (std::size_t g = 0; g < groups_.size(); ++g)
    if (groups_[g].contains(t)) return g;
  throw Error(ErrorCode::Registry, "token outside every group");
}

std::vector<std::uint64_t> GroupPartition::counts(const TokenSet& tokens) const {
  std::vector<std::uint64_t> out(groups_.size(), 0);
  for (const auto& t : tokens) ++out[group_of(t)];
  return out;
}

std::vector<std::size_t> scarce_groups(const SetExpr& inter, const TokenSet& tokens,
                                       const GroupPartition& p) {
  auto fresh = subtract_finite(inter, tokens);
  std::vector<std::size_t> b;
  for (std::size_t g = 0; g < p.size(); ++g)
    if (intersect(p.group(g), fresh).is_empty()) b.push_back(g);
  return b;
}

bool suffers_scarcity(const TokenSet& tokens, const SetExpr& inter, const GroupPartition& p,
                      const Rational& alpha) {
  if (tokens.empty()) return false;
  auto counts = p.counts(tokens);
  auto b = scarce_groups(inter, tokens, p);
  const auto total = static_cast<std::int64_t>(tokens.size());
  Rational scarce_mass = 0;
  for (auto g : b) {
    Rational emp(static_cast<std::int64_t>(counts[g]), total);
    if (emp > alpha) return true;
    scarce_mass += emp;
  }
  return scarce_mass > alpha * static_cast<std::int64_t>(p.size() - b.size());
}

// ---------------------------------------------------------------------------
// Noisy witness optimizer

namespace {

constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

struct PatternRegion {
  std::vector<std::size_t> members;  // indices into the member list, outside which tokens lie
  SetExpr region;
  std::uint64_t size;  // kUnbounded if infinite
};

// Exhaustive multiplicity search; budgets are tiny so this stays exact and fast.
void best_multiplicities(const std::vector<PatternRegion>& regions, std::size_t k,
                         std::vector<std::uint64_t>& budgets, std::vector<std::uint64_t>& cur,
                         std::uint64_t sum, std::uint64_t& best_sum,
                         std::vector<std::uint64_t>& best) {
  if (k == regions.size()) {
    if (sum > best_sum) {
      best_sum = sum;
      best = cur;
    }
    return;
  }
  std::uint64_t remaining = 0;
  for (auto b : budgets) remaining += b;
  if (sum + remaining <= best_sum) return;
  std::uint64_t cap = regions[k].size;
  for (auto m : regions[k].members) cap = std::min(cap, budgets[m]);
  for (std::uint64_t c = cap + 1; c-- > 0;) {
    for (auto m : regions[k].members) budgets[m] -= c;
    cur[k] = c;
    best_multiplicities(regions, k + 1, budgets, cur, sum + c, best_sum, best);
    for (auto m : regions[k].members) budgets[m] += c;
  }
  cur[k] = 0;
}

// Largest finite T for a fixed member list whose language intersection is finite.
TokenSet noisy_t_for(const std::vector<const NoisyMember*>& members, const SetExpr& inter) {
  TokenSet t;
  for (const auto& tok : enumerate_finite(inter)) t.insert(tok);

  std::vector<std::size_t> charged;
  for (std::size_t m = 0; m < members.size(); ++m)
    if (members[m]->noise > 0) charged.push_back(m);
  if (charged.empty()) return t;

  std::vector<PatternRegion> regions;
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << charged.size()); ++v) {
    std::vector<bool> outside(members.size(), false);
    PatternRegion pr{{}, SetExpr::universe(inter.registry()), 0};
    for (std::size_t b = 0; b < charged.size(); ++b)
      if (v & (std::uint64_t{1} << b)) {
        outside[charged[b]] = true;
        pr.members.push_back(b);
      }
    for (std::size_t m = 0; m < members.size(); ++m)
      pr.region = intersect(pr.region, outside[m] ? complement(*members[m]->set) : *members[m]->set);
    auto card = cardinality(pr.region);
    if (card.is_finite() && card.count() == 0) continue;
    pr.size = card.is_finite() ? card.count() : kUnbounded;
    regions.push_back(std::move(pr));
  }

  std::vector<std::uint64_t> budgets;
  for (auto m : charged) budgets.push_back(members[m]->noise);
  std::vector<std::uint64_t> cur(regions.size(), 0), best(regions.size(), 0);
  std::uint64_t best_sum = 0;
  best_multiplicities(regions, 0, budgets, cur, 0, best_sum, best);
  for (std::size_t k = 0; k < regions.size(); ++k)
    for (const auto& tok : canonical_prefix(regions[k].region, best[k])) t.insert(tok);
  return t;
}

bool better_witness(std::uint64_t m, const std::vector<std::size_t>& w, bool have,
                    std::uint64_t best_m, const std::vector<std::size_t>& best_w) {
  if (!have) return true;
  if (m != best_m) return m > best_m;
  return w < best_w;
}

}  // namespace

Evaluation max_noisy_witness(const std::vector<NoisyMember>& prefix, std::size_t j) {
  if (j >= prefix.size()) throw Error(ErrorCode::IndexRange, "candidate outside prefix");
  // Copies of the candidate's own language only tighten constraints, and among
  // copies of another language the highest noise level dominates.
  std::map<std::size_t, std::size_t> loosest;
  for (std::size_t p = 0; p < prefix.size(); ++p) {
    if (p == j || prefix[p].language == prefix[j].language) continue;
    auto it = loosest.find(prefix[p].language);
    if (it == loosest.end() || prefix[p].noise > prefix[it->second].noise) loosest[prefix[p].language] = p;
  }
  std::vector<std::size_t> others;
  for (const auto& [lang, p] : loosest) others.push_back(p);
  std::sort(others.begin(), others.end());
  if (others.size() > 20) throw Error(ErrorCode::Capacity, "too many distinct languages in noisy prefix");

  Evaluation best;
  bool have = false;
  const auto masks = std::uint64_t{1} << others.size();
  std::vector<SetExpr> inter(masks, *prefix[j].set);
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    inter[mask] = intersect(inter[mask & (mask - 1)], *prefix[others[low]].set);
  }
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    if (!inter[mask].is_finite()) continue;
    std::vector<std::size_t> positions;
    std::vector<const NoisyMember*> members{&prefix[j]};
    for (std::size_t b = 0; b < others.size(); ++b)
      if (mask & (std::uint64_t{1} << b)) {
        positions.push_back(others[b]);
        members.push_back(&prefix[others[b]]);
      }
    positions.push_back(j);
    std::sort(positions.begin(), positions.end());
    // Cheap upper bound before the pattern search.
    std::uint64_t bound = cardinality(inter[mask]).count();
    for (auto* m : members) bound += m->noise;
    if (have && bound < best.m) continue;
    auto t = noisy_t_for(members, inter[mask]);
    if (better_witness(t.size(), positions, have, best.m, best.witness)) {
      best = {t.size(), positions, std::move(t)};
      have = true;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Representative witness optimizer

TokenSet max_scarce_subset(const SetExpr& inter, const GroupPartition& p, const Rational& alpha) {
  if (alpha <= 0) throw Error(ErrorCode::Parameter, "alpha must be positive");
  const std::size_t k = p.size();
  std::vector<std::optional<std::uint64_t>> c(k);
  std::vector<SetExpr> parts;
  std::vector<std::size_t> zero, finite;
  for (std::size_t g = 0; g < k; ++g) {
    parts.push_back(intersect(p.group(g), inter));
    auto card = cardinality(parts.back());
    if (card.is_finite()) {
      c[g] = card.count();
      (card.count() == 0 ? zero : finite).push_back(g);
    }
  }

  using Wide = __int128;
  const Wide num = alpha.numerator(), den = alpha.denominator();
  Wide best_n = 0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << finite.size()); ++mask) {
    Wide f = 0, cmax = 0, u = 0;
    bool unbounded = false;
    std::size_t b_size = zero.size();
    std::vector<bool> in_b(k, false);
    for (std::size_t b = 0; b < finite.size(); ++b)
      if (mask & (std::uint64_t{1} << b)) {
        in_b[finite[b]] = true;
        f += *c[finite[b]];
        cmax = std::max<Wide>(cmax, *c[finite[b]]);
        ++b_size;
      }
    for (std::size_t g = 0; g < k; ++g) {
      if (in_b[g] || (c[g] && *c[g] == 0)) continue;
      if (!c[g])
        unbounded = true;
      else
        u += *c[g] - 1;
    }
    const Wide rest = static_cast<Wide>(k - b_size);
    // Largest |T| keeping either scarcity clause strict.
    Wide n1 = (cmax * den - 1) / num;
    Wide n2 = rest == 0 ? f : (f * den - 1) / (num * rest);
    Wide n = std::max(n1, n2);
    if (!unbounded) n = std::min(n, f + u);
    if (n < f || n < 1) continue;
    if (n > best_n) {
      best_n = n;
      best_mask = mask;
    }
  }
  if (best_n == 0) return {};

  TokenSet t;
  std::vector<std::uint64_t> cap(k, kUnbounded);
  for (std::size_t b = 0; b < finite.size(); ++b) {
    auto g = finite[b];
    if (best_mask & (std::uint64_t{1} << b)) {
      for (const auto& tok : enumerate_finite(parts[g])) t.insert(tok);
      cap[g] = 0;
    } else {
      cap[g] = *c[g] - 1;
    }
  }
  CanonicalCursor cursor(inter);
  while (static_cast<Wide>(t.size()) < best_n) {
    auto tok = cursor.next();
    if (!tok) throw Error(ErrorCode::Parameter, "scarce subset construction ran dry");
    auto g = p.group_of(*tok);
    if (cap[g] == 0 || t.count(*tok)) continue;
    if (cap[g] != kUnbounded) --cap[g];
    t.insert(*tok);
  }
  return t;
}

Evaluation max_scarce_witness(std::span<const SetExpr> prefix, std::size_t j, const GroupPartition& p,
                              const Rational& alpha) {
  if (alpha <= 0) throw Error(ErrorCode::Parameter, "alpha must be positive");
  if (j >= prefix.size()) throw Error(ErrorCode::IndexRange, "candidate outside prefix");
  std::vector<std::size_t> others;
  for (std::size_t q = 0; q < prefix.size(); ++q)
    if (q != j) others.push_back(q);

  std::map<SetExpr, TokenSet> cache;
  Evaluation best;
  bool have = false;
  std::vector<std::size_t> chosen;
  std::function<void(const SetExpr&, std::size_t)> visit = [&](const SetExpr& inter, std::size_t from) {
    auto it = cache.find(inter);
    if (it == cache.end()) it = cache.emplace(inter, max_scarce_subset(inter, p, alpha)).first;
    if (!it->second.empty()) {
      auto positions = chosen;
      positions.push_back(j);
      std::sort(positions.begin(), positions.end());
      if (better_witness(it->second.size(), positions, have, best.m, best.witness)) {
        best = {it->second.size(), positions, it->second};
        have = true;
      }
    }
    for (std::size_t k = from; k < others.size(); ++k) {
      chosen.push_back(others[k]);
      visit(intersect(inter, prefix[others[k]]), k + 1);
      chosen.pop_back();
    }
  };
  visit(prefix[j], 0);
  return best;
}

// ---------------------------------------------------------------------------
// Sorters

Sorter::Sorter(Collection c, Setting s, ProcedureOptions options, std::size_t default_capacity)
    : collection_(std::move(c)),
      options_(std::move(options)),
      capacity_(options_.capacity ? options_.capacity : default_capacity) {
  table_.setting = s;
}

void Sorter::extend_to(std::uint64_t limit) {
  if (auto last = last_position()) limit = std::min(limit, *last);
  while (limit_ < limit) process(++limit_);
}

void Sorter::process(std::uint64_t position) {
  auto cell = cell_for(position);
  if (!cell) return;
  if (table_.entries.size() >= capacity_)
    throw Error(ErrorCode::Capacity, std::string(to_string(setting())) + " table capacity " +
                                         std::to_string(capacity_) + " exceeded");
  const auto e = table_.entries.size();
  table_.entries.push_back({*cell, position, 0, {}, {}});
  table_.ordering.push_back(e);

  std::size_t j = table_.ordering.size() - 1;
  Evaluation ev;
  for (;;) {
    std::vector<std::size_t> prefix(table_.ordering.begin(), table_.ordering.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    ev = evaluate(prefix);
    if (j == 0) break;
    auto prev = table_.entries[table_.ordering[j - 1]].m_star;
    bool stop = options_.break_rule == BreakRule::Strict ? ev.m > prev : ev.m >= prev;
    if (stop) break;
    std::swap(table_.ordering[j], table_.ordering[j - 1]);
    --j;
  }
  auto& entry = table_.entries[e];
  entry.m_star = ev.m;
  for (auto pos : ev.witness) entry.witness.push_back(table_.ordering[pos]);
  std::sort(entry.witness.begin(), entry.witness.end());
  entry.witness_set = std::move(ev.witness_set);
  if (options_.after_iteration) options_.after_iteration(*this);
}

Evaluation Sorter::evaluate_at(std::size_t k) const {
  if (k >= table_.ordering.size()) throw Error(ErrorCode::IndexRange, "ordering position out of range");
  std::vector<std::size_t> prefix(table_.ordering.begin(), table_.ordering.begin() + static_cast<std::ptrdiff_t>(k) + 1);
  return evaluate(prefix);
}

PlainSorter::PlainSorter(Collection c, ProcedureOptions options)
    : Sorter(std::move(c), Setting::Plain, std::move(options), kDefaultPlainCapacity) {}

std::optional<Cell> PlainSorter::cell_for(std::uint64_t position) const {
  return Cell{static_cast<std::size_t>(position - 1), 0};
}

Evaluation PlainSorter::evaluate(const std::vector<std::size_t>& prefix) const {
  std::vector<SetExpr> sets;
  for (auto e : prefix) sets.push_back(collection_[table_.entries[e].cell.language]);
  auto r = max_finite_intersection(sets, sets.size() - 1, capacity_);
  Evaluation ev{r.m, r.witness, {}};
  if (!r.witness.empty()) {
    auto inter = SetExpr::universe(collection_.registry());
    for (auto pos : r.witness) inter = intersect(inter, sets[pos]);
    for (const auto& t : enumerate_finite(inter)) ev.witness_set.insert(t);
  }
  return ev;
}

NoisySorter::NoisySorter(Collection c, ProcedureOptions options)
    : Sorter(std::move(c), Setting::Noisy, std::move(options), kDefaultNoisyCapacity) {}

std::optional<Cell> NoisySorter::cell_for(std::uint64_t position) const {
  auto [n, i] = diag_elem(position);
  if (i > collection_.size()) return std::nullopt;
  return Cell{static_cast<std::size_t>(i - 1), static_cast<std::uint32_t>(n)};
}

Evaluation NoisySorter::evaluate(const std::vector<std::size_t>& prefix) const {
  std::vector<NoisyMember> members;
  for (auto e : prefix) {
    const auto& cell = table_.entries[e].cell;
    members.push_back({&collection_[cell.language], cell.language, cell.noise});
  }
  return max_noisy_witness(members, members.size() - 1);
}

RepresentativeSorter::RepresentativeSorter(Collection c, GroupPartition p, Rational alpha,
                                           ProcedureOptions options)
    : Sorter(std::move(c), Setting::Representative, std::move(options), kDefaultRepresentativeCapacity),
      partition_(std::move(p)),
      alpha_(alpha) {
  if (alpha_ <= 0 || alpha_ > 1) throw Error(ErrorCode::Parameter, "alpha must lie in (0,1]");
  table_.alpha = alpha_;
}

std::optional<Cell> RepresentativeSorter::cell_for(std::uint64_t position) const {
  return Cell{static_cast<std::size_t>(position - 1), 0};
}

Evaluation RepresentativeSorter::evaluate(const std::vector<std::size_t>& prefix) const {
  if (prefix.size() > capacity_)
    throw Error(ErrorCode::Capacity, "representative prefix exceeds capacity " + std::to_string(capacity_));
  std::vector<SetExpr> sets;
  for (auto e : prefix) sets.push_back(collection_[table_.entries[e].cell.language]);
  return max_scarce_witness(sets, sets.size() - 1, partition_, alpha_);
}

ComplexityTable procedure1(const Collection& c, std::size_t n, ProcedureOptions options) {
  if (n > c.size()) throw Error(ErrorCode::IndexRange, "prefix longer than the collection");
  PlainSorter s(c, std::move(options));
  s.extend_to(n);
  return s.table();
}

ComplexityTable procedure2(const Collection& c, std::uint64_t l_max, ProcedureOptions options) {
  NoisySorter s(c, std::move(options));
  s.extend_to(l_max);
  return s.table();
}

ComplexityTable procedure3(const Collection& c, const GroupPartition& p, const Rational& alpha,
                           std::size_t n, ProcedureOptions options) {
  if (n > c.size()) throw Error(ErrorCode::IndexRange, "prefix longer than the collection");
  RepresentativeSorter s(c, p, alpha, std::move(options));
  s.extend_to(n);
  return s.table();
}

SetExpr witness_intersection(const Collection& c, const ComplexityTable& t,
                             const std::vector<std::size_t>& entries) {
  auto inter = SetExpr::universe(c.registry());
  for (auto e : entries) inter = intersect(inter, c[t.entries.at(e).cell.language]);
  return inter;
}

// ---------------------------------------------------------------------------
// Schedules

ScheduleFn ScheduleFn::identity() { return ScheduleFn(Kind::Identity); }

ScheduleFn ScheduleFn::power(std::uint64_t base) {
  if (base < 2) throw Error(ErrorCode::Parameter, "power schedule needs base >= 2");
  ScheduleFn f(Kind::Power);
  f.base_ = base;
  return f;
}

ScheduleFn ScheduleFn::explicit_table(std::vector<std::uint64_t> values) {
  if (values.empty()) throw Error(ErrorCode::Parameter, "explicit schedule is empty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw Error(ErrorCode::Parameter, "explicit schedule must be non-decreasing");
  ScheduleFn f(Kind::Explicit);
  f.values_ = std::move(values);
  return f;
}

ScheduleFn ScheduleFn::from_complexities(const ComplexityTable& table) {
  std::uint64_t horizon = 1;
  for (const auto& e : table.entries) horizon = std::max(horizon, e.m_star + 1);
  ScheduleFn f(Kind::FromComplexities);
  f.values_.assign(horizon, 0);
  for (const auto& e : table.entries) {
    auto& slot = f.values_[e.m_star];
    slot = std::max(slot, e.position);
  }
  for (std::size_t t = 1; t < f.values_.size(); ++t) f.values_[t] = std::max(f.values_[t], f.values_[t - 1]);
  return f;
}

std::uint64_t ScheduleFn::operator()(std::uint64_t t) const {
  if (t == 0) throw Error(ErrorCode::Parameter, "schedules start at t = 1");
  switch (kind_) {
    case Kind::Identity:
      return t;
    case Kind::Power: {
      std::uint64_t v = 1;
      for (std::uint64_t k = 0; k < t; ++k) {
        if (v > std::numeric_limits<std::uint64_t>::max() / base_) return std::numeric_limits<std::uint64_t>::max();
        v *= base_;
      }
      return v;
    }
    case Kind::Explicit:
    case Kind::FromComplexities:
      return values_[std::min<std::size_t>(t, values_.size()) - 1];
  }
  return 0;
}

std::uint64_t ScheduleFn::g(std::uint64_t target) const {
  switch (kind_) {
    case Kind::Identity:
      return std::max<std::uint64_t>(target, 1);
    case Kind::Power: {
      std::uint64_t j = 1;
      while ((*this)(j) < target) ++j;
      return j;
    }
    case Kind::Explicit:
    case Kind::FromComplexities:
      for (std::size_t j = 0; j < values_.size(); ++j)
        if (values_[j] >= target) return j + 1;
      throw Error(ErrorCode::UnboundedSchedule,
                  "schedule never reaches " + std::to_string(target) + " within its known values");
  }
  return 0;
}

std::string ScheduleFn::describe() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Power: return "pow" + std::to_string(base_);
    case Kind::Explicit: return "table";
    case Kind::FromComplexities: return "sufficient";
  }
  return "unknown";
}

ScheduleFn sufficient_f(const ComplexityTable& table) { return ScheduleFn::from_complexities(table); }

}  // namespace genlimit
