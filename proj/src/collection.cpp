#include "genlimit/collection.hpp"

#include <algorithm>
#include <map>

#include "genlimit/error.hpp"

namespace genlimit {

Collection::Collection(RegistryPtr registry, std::vector<Language> languages, LrtLimit limit)
    : registry_(std::move(registry)), languages_(std::move(languages)), limit_(limit) {
  for (std::size_t i = 0; i < languages_.size(); ++i) {
    const auto& set = languages_[i].set;
    if (!same_registry(set, SetExpr::empty(registry_)))
      throw Error(ErrorCode::Registry, "language " + std::to_string(i + 1) + " uses another registry");
    if (set.is_finite())
      throw Error(ErrorCode::FiniteLanguage,
                  "language " + std::to_string(i + 1) + " ('" + languages_[i].name + "') is finite");
  }
}

std::vector<SetExpr> Collection::sets() const {
  std::vector<SetExpr> out;
  out.reserve(languages_.size());
  for (const auto& l : languages_) out.push_back(l.set);
  return out;
}

Collection Collection::prefix(std::size_t n) const {
  n = std::min(n, languages_.size());
  return Collection(registry_, {languages_.begin(), languages_.begin() + static_cast<std::ptrdiff_t>(n)},
                    limit_);
}

Collection Collection::reordered(const std::vector<std::size_t>& order) const {
  std::vector<Language> out;
  out.reserve(order.size());
  for (auto i : order) {
    if (i >= languages_.size()) throw Error(ErrorCode::IndexRange, "reordering index out of range");
    out.push_back(languages_[i]);
  }
  return Collection(registry_, std::move(out), limit_);
}

namespace {

bool superset_of(const SetExpr& l, const SetExpr& i) { return intersect(l, i) == i; }

class FiniteIntersectionSearch {
 public:
  FiniteIntersectionSearch(std::span<const SetExpr> prefix, std::size_t must)
      : prefix_(prefix) {
    for (std::size_t p = 0; p < prefix.size(); ++p)
      if (p != must) others_.push_back(p);
  }

  void run(const SetExpr& start) {
    if (start.is_finite()) {
      record(start);
      return;
    }
    extend(start, 0);
  }

  bool found() const { return found_; }
  std::uint64_t best() const { return best_; }
  const std::vector<SetExpr>& maximizers() const { return maximizers_; }

 private:
  // Supersets of a finite-intersection mask only shrink it, so recursion stops
  // there. A language that leaves the running intersection unchanged (such as a
  // duplicate) adds nothing and is skipped.
  void extend(const SetExpr& current, std::size_t from) {
    for (std::size_t k = from; k < others_.size(); ++k) {
      auto next = intersect(current, prefix_[others_[k]]);
      if (next == current) continue;
      if (next.is_finite()) {
        record(next);
        continue;
      }
      auto [it, inserted] = visited_.try_emplace(next, k + 1);
      if (!inserted) {
        if (it->second <= k + 1) continue;
        it->second = k + 1;
      }
      extend(next, k + 1);
    }
  }

  void record(const SetExpr& inter) {
    auto m = cardinality(inter).count();
    if (!found_ || m > best_) {
      found_ = true;
      best_ = m;
      maximizers_.clear();
    }
    if (m == best_ && std::find(maximizers_.begin(), maximizers_.end(), inter) == maximizers_.end())
      maximizers_.push_back(inter);
  }

  std::span<const SetExpr> prefix_;
  std::vector<std::size_t> others_;
  std::map<SetExpr, std::size_t> visited_;
  bool found_ = false;
  std::uint64_t best_ = 0;
  std::vector<SetExpr> maximizers_;
};

SetExpr intersect_positions(std::span<const SetExpr> prefix, const std::vector<std::size_t>& ps) {
  auto acc = SetExpr::universe(prefix.front().registry());
  for (auto p : ps) acc = intersect(acc, prefix[p]);
  return acc;
}

// Lexicographically smallest ascending position set containing `must` whose
// intersection is exactly `target`.
std::vector<std::size_t> lex_min_witness(std::span<const SetExpr> prefix, std::size_t must,
                                         const SetExpr& target) {
  std::vector<std::size_t> cands;
  for (std::size_t p = 0; p < prefix.size(); ++p)
    if (superset_of(prefix[p], target)) cands.push_back(p);

  std::vector<std::size_t> chosen;
  for (;;) {
    bool has_must = std::find(chosen.begin(), chosen.end(), must) != chosen.end();
    if (has_must && intersect_positions(prefix, chosen) == target) return chosen;
    bool extended = false;
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      auto p = cands[ci];
      if (!chosen.empty() && p <= chosen.back()) continue;
      if (!has_must && p > must) break;
      auto completion = chosen;
      completion.insert(completion.end(), cands.begin() + static_cast<std::ptrdiff_t>(ci), cands.end());
      if (intersect_positions(prefix, completion) == target) {
        chosen.push_back(p);
        extended = true;
        break;
      }
    }
    if (!extended) throw Error(ErrorCode::Parameter, "witness reconstruction failed");
  }
}

}  // namespace

WitnessResult max_finite_intersection(std::span<const SetExpr> prefix, std::size_t must,
                                      std::size_t capacity) {
  if (prefix.size() > capacity)
    throw Error(ErrorCode::Capacity, "prefix of " + std::to_string(prefix.size()) +
                                         " languages exceeds capacity " + std::to_string(capacity));
  if (must >= prefix.size()) throw Error(ErrorCode::IndexRange, "required index outside prefix");

  FiniteIntersectionSearch search(prefix, must);
  search.run(prefix[must]);
  if (!search.found()) return {};

  WitnessResult result{search.best(), {}};
  bool first = true;
  for (const auto& target : search.maximizers()) {
    auto w = lex_min_witness(prefix, must, target);
    if (first || w < result.witness) result.witness = std::move(w);
    first = false;
  }
  return result;
}

std::uint64_t closure_dimension(std::span<const SetExpr> prefix, std::size_t capacity) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    d = std::max(d, max_finite_intersection(prefix.first(i + 1), i, capacity).m);
  return d;
}

std::uint64_t cp_complexity(const Collection& c, std::size_t i, std::size_t capacity) {
  if (i == 0 || i > c.size()) throw Error(ErrorCode::IndexRange, "language index out of range");
  auto sets = c.sets();
  return max_finite_intersection(std::span<const SetExpr>(sets).first(i), i - 1, capacity).m;
}

std::vector<std::uint64_t> baseline_times(const Collection& c, Baseline which, std::size_t capacity) {
  std::vector<std::uint64_t> out;
  out.reserve(c.size());
  auto sets = c.sets();
  std::uint64_t d = 0;
  for (std::size_t i = 1; i <= c.size(); ++i) {
    if (which == Baseline::Lrt && c.lrt_limit().finite) {
      out.push_back(std::max<std::uint64_t>(i, c.lrt_limit().c + 1));
      continue;
    }
    auto m = max_finite_intersection(std::span<const SetExpr>(sets).first(i), i - 1, capacity).m;
    if (which == Baseline::Cp) {
      out.push_back(std::max<std::uint64_t>(i, m + 1));
    } else {
      d = std::max(d, m);
      out.push_back(d + 1);
    }
  }
  return out;
}

}  // namespace genlimit
