#include "genlimit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "genlimit/error.hpp"

namespace genlimit::oracle {

namespace {

SetExpr fold(const std::vector<const SetExpr*>& sets, const RegistryPtr& reg) {
  auto acc = SetExpr::universe(reg);
  for (const auto* s : sets) acc = intersect(acc, *s);
  return acc;
}

struct Pick {
  bool found = false;
  std::uint64_t m = 0;
  std::vector<std::size_t> positions;
};

// Step i with every subset of positions [0, j] that contains j.
Pick step_i(const std::vector<const SetExpr*>& prefix, std::size_t j, const RegistryPtr& reg) {
  Pick best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << j); ++mask) {
    std::vector<const SetExpr*> members;
    std::vector<std::size_t> positions;
    for (std::size_t b = 0; b < j; ++b)
      if (mask >> b & 1) {
        members.push_back(prefix[b]);
        positions.push_back(b);
      }
    members.push_back(prefix[j]);
    positions.push_back(j);
    auto inter = fold(members, reg);
    auto card = cardinality(inter);
    if (card.is_infinite()) continue;
    if (!best.found || card.count() > best.m || (card.count() == best.m && positions < best.positions))
      best = {true, card.count(), positions};
  }
  return best;
}

std::vector<Token> window_tokens(const AtomRegistry& reg, std::int64_t w) {
  std::vector<Token> out;
  for (std::int64_t v = -w; v <= w; ++v) out.push_back(Token::integer(v));
  for (AtomId a = 0; a < reg.size(); ++a)
    for (std::int64_t k = 0; k <= w; ++k) out.push_back(Token::atom(a, static_cast<std::uint64_t>(k)));
  return out;
}

}  // namespace

ComplexityTable oracle_mstar(const Collection& c, std::size_t n) {
  if (n > kMaxOraclePrefix) throw Error(ErrorCode::Capacity, "oracle prefix limited to 12 languages");
  if (n > c.size()) throw Error(ErrorCode::IndexRange, "prefix longer than the collection");
  ComplexityTable t;
  t.setting = Setting::Plain;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.push_back(i);
    std::size_t j = i;
    Pick chk;
    for (;;) {
      std::vector<const SetExpr*> prefix;
      for (std::size_t q = 0; q <= j; ++q) prefix.push_back(&c[order[q]]);
      chk = step_i(prefix, j, c.registry());
      if (j == 0 || chk.m > t.entries[order[j - 1]].m_star) break;
      std::swap(order[j], order[j - 1]);
      --j;
    }
    TableEntry e{{i, 0}, i + 1, chk.m, {}, {}};
    if (chk.found && j > 0) {
      std::vector<const SetExpr*> members;
      for (auto pos : chk.positions) {
        e.witness.push_back(order[pos]);
        members.push_back(&c[order[pos]]);
      }
      std::sort(e.witness.begin(), e.witness.end());
      for (const auto& tok : enumerate_finite(fold(members, c.registry()))) e.witness_set.insert(tok);
    } else {
      e.m_star = 0;
    }
    t.entries.push_back(std::move(e));
  }
  t.ordering = order;
  return t;
}

std::uint64_t oracle_noisy_T(const std::vector<NoisyMember>& prefix, std::size_t j, std::int64_t w) {
  if (prefix.size() > 16) throw Error(ErrorCode::Capacity, "oracle noisy prefix limited to 16 cells");
  if (j >= prefix.size()) throw Error(ErrorCode::IndexRange, "candidate outside prefix");
  const auto& reg = prefix[j].set->registry();
  auto toks = window_tokens(*reg, w);
  std::uint64_t best = 0;
  std::vector<std::size_t> others;
  for (std::size_t q = 0; q < prefix.size(); ++q)
    if (q != j) others.push_back(q);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
    std::vector<const NoisyMember*> members{&prefix[j]};
    for (std::size_t b = 0; b < others.size(); ++b)
      if (mask >> b & 1) members.push_back(&prefix[others[b]]);
    std::vector<const SetExpr*> sets;
    for (auto* m : members) sets.push_back(m->set);
    if (!fold(sets, reg).is_finite()) continue;

    // Count window tokens per membership pattern.
    std::map<std::vector<bool>, std::uint64_t> patterns;
    for (const auto& tok : toks) {
      std::vector<bool> out;
      for (auto* m : members) out.push_back(!m->set->contains(tok));
      ++patterns[out];
    }
    std::vector<std::pair<std::vector<bool>, std::uint64_t>> list(patterns.begin(), patterns.end());
    std::vector<std::int64_t> budget;
    for (auto* m : members) budget.push_back(m->noise);
    std::function<std::uint64_t(std::size_t)> go = [&](std::size_t k) -> std::uint64_t {
      if (k == list.size()) return 0;
      std::uint64_t top = 0;
      for (std::uint64_t n = 0; n <= list[k].second; ++n) {
        bool ok = true;
        for (std::size_t m = 0; m < members.size(); ++m)
          if (list[k].first[m] && budget[m] < static_cast<std::int64_t>(n)) ok = false;
        if (!ok) break;
        for (std::size_t m = 0; m < members.size(); ++m)
          if (list[k].first[m]) budget[m] -= static_cast<std::int64_t>(n);
        top = std::max(top, n + go(k + 1));
        for (std::size_t m = 0; m < members.size(); ++m)
          if (list[k].first[m]) budget[m] += static_cast<std::int64_t>(n);
      }
      return top;
    };
    best = std::max(best, go(0));
  }
  return best;
}

std::uint64_t oracle_scarce_T(const std::vector<SetExpr>& prefix, std::size_t j, const GroupPartition& p,
                              const Rational& alpha, std::int64_t w) {
  if (prefix.size() > 12) throw Error(ErrorCode::Capacity, "oracle representative prefix limited to 12");
  if (p.size() > 3) throw Error(ErrorCode::Capacity, "oracle representative search limited to 3 groups");
  if (alpha <= 0) throw Error(ErrorCode::Parameter, "alpha must be positive");
  const auto& reg = prefix[j].registry();
  auto small = window_tokens(*reg, w);
  auto large = window_tokens(*reg, 2 * w);
  const std::size_t k = p.size();
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << prefix.size()); ++mask) {
    if (!(mask >> j & 1)) continue;
    std::vector<const SetExpr*> sets;
    for (std::size_t q = 0; q < prefix.size(); ++q)
      if (mask >> q & 1) sets.push_back(&prefix[q]);
    auto inter = fold(sets, reg);
    std::vector<std::uint64_t> cs(k, 0), cl(k, 0);
    for (const auto& t : small)
      if (inter.contains(t)) ++cs[p.group_of(t)];
    for (const auto& t : large)
      if (inter.contains(t)) ++cl[p.group_of(t)];
    std::vector<bool> finite(k);
    for (std::size_t g = 0; g < k; ++g) finite[g] = cs[g] == cl[g];

    std::vector<std::uint64_t> n(k, 0);
    std::function<void(std::size_t)> go = [&](std::size_t g) {
      if (g == k) {
        std::uint64_t total = 0;
        for (auto v : n) total += v;
        if (total == 0 || total <= best) return;
        std::size_t b_size = 0;
        Rational mass = 0;
        bool clause1 = false;
        for (std::size_t h = 0; h < k; ++h) {
          if (!(finite[h] && n[h] == cs[h])) continue;
          ++b_size;
          Rational emp(static_cast<std::int64_t>(n[h]), static_cast<std::int64_t>(total));
          clause1 = clause1 || emp > alpha;
          mass += emp;
        }
        if (clause1 || mass > alpha * static_cast<std::int64_t>(k - b_size)) best = total;
        return;
      }
      for (std::uint64_t v = 0; v <= cs[g]; ++v) {
        n[g] = v;
        go(g + 1);
      }
      n[g] = 0;
    };
    go(0);
  }
  return best;
}

const char* to_string(Dominance d) noexcept {
  switch (d) {
    case Dominance::Equal: return "Equal";
    case Dominance::Dominates: return "Dominates";
    case Dominance::DominatedBy: return "DominatedBy";
    case Dominance::Incomparable: return "Incomparable";
  }
  return "unknown";
}

Dominance pareto_dominance(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::Parameter, "time sequences differ in length");
  bool less = false, greater = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    less = less || a[i] < b[i];
    greater = greater || a[i] > b[i];
  }
  if (less && greater) return Dominance::Incomparable;
  if (less) return Dominance::Dominates;
  if (greater) return Dominance::DominatedBy;
  return Dominance::Equal;
}

Collection random_collection(std::uint64_t seed, std::size_t languages) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto reg = make_registry({"a1", "a2", "a3", "a4", "a5"});
  std::vector<Language> out;
  for (std::size_t i = 0; i < languages; ++i) {
    std::vector<Interval> ivs;
    auto count = pick(1, 3);
    for (std::int64_t k = 0; k < count; ++k) {
      auto lo = pick(-20, 40);
      auto hi = std::min<std::int64_t>(40, lo + pick(0, 20));
      switch (rng() % 5) {
        case 0: lo = kNegInf; break;
        case 1: hi = kPosInf; break;
        default: break;
      }
      ivs.push_back({lo, hi});
    }
    std::map<AtomId, AtomPart> atoms;
    for (auto k = pick(0, 2); k > 0; --k) atoms[static_cast<AtomId>(rng() % 5)] = AtomPart{};
    auto set = SetExpr::from_parts(reg, ivs, atoms);
    if (set.is_finite()) {
      // Keep the language infinite: stretch the last interval into a ray.
      ivs.back().hi = kPosInf;
      set = SetExpr::from_parts(reg, ivs, atoms);
    }
    out.push_back({"R" + std::to_string(i + 1), set});
  }
  return Collection(reg, std::move(out));
}

}  // namespace genlimit::oracle
