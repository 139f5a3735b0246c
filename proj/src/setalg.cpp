#include "genlimit/setalg.hpp"

#include <algorithm>
#include <iterator>
#include <tuple>
#include <utility>

#include "genlimit/error.hpp"

namespace genlimit {

// ---------------------------------------------------------------------------
// AtomRegistry

AtomRegistry::AtomRegistry(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error(ErrorCode::Schema, "atom names must be non-empty");
    if (!seen.insert(n).second) throw Error(ErrorCode::Schema, "duplicate atom name '" + n + "'");
  }
}

const std::string& AtomRegistry::name(AtomId id) const {
  if (id >= names_.size()) throw Error(ErrorCode::Registry, "atom id out of registry");
  return names_[id];
}

std::optional<AtomId> AtomRegistry::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<AtomId>(std::distance(names_.begin(), it));
}

RegistryPtr make_registry(std::vector<std::string> names) {
  return std::make_shared<const AtomRegistry>(std::move(names));
}

// ---------------------------------------------------------------------------
// Token

Token Token::integer(std::int64_t value) {
  if (value == kNegInf || value == kPosInf)
    throw Error(ErrorCode::Parameter, "integer token out of representable range");
  Token t;
  t.value_ = value;
  return t;
}

Token Token::atom(AtomId atom, std::uint64_t index) {
  Token t;
  t.is_atom_ = true;
  t.atom_ = atom;
  t.index_ = index;
  return t;
}

std::uint64_t Token::round() const noexcept {
  if (is_atom_) return index_;
  return value_ >= 0 ? static_cast<std::uint64_t>(value_)
                     : static_cast<std::uint64_t>(-(value_ + 1)) + 1;
}

std::strong_ordering Token::operator<=>(const Token& other) const noexcept {
  auto slot = [](const Token& t) -> std::uint64_t {
    if (t.is_atom_) return 2 + static_cast<std::uint64_t>(t.atom_);
    return t.value_ >= 0 ? 0 : 1;
  };
  return std::tuple(round(), slot(*this)) <=> std::tuple(other.round(), slot(other));
}

std::string to_string(const Token& token, const AtomRegistry& registry) {
  if (token.is_integer()) return std::to_string(token.value());
  return registry.name(token.atom_id()) + "[" + std::to_string(token.index()) + "]";
}

// ---------------------------------------------------------------------------
// Interval / Cardinality

std::uint64_t Interval::size() const noexcept {
  return static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
}

std::uint64_t Cardinality::count() const {
  if (!count_) throw Error(ErrorCode::Parameter, "cardinality is infinite");
  return *count_;
}

std::string to_string(const Cardinality& c) {
  return c.is_finite() ? "Finite(" + std::to_string(c.count()) + ")" : "Infinite";
}

// ---------------------------------------------------------------------------
// SetExpr

SetExpr::SetExpr(RegistryPtr registry) : registry_(std::move(registry)) {
  if (!registry_) registry_ = make_registry({});
}

SetExpr SetExpr::empty(RegistryPtr registry) { return SetExpr(std::move(registry)); }

SetExpr SetExpr::universe(RegistryPtr registry) {
  SetExpr s(std::move(registry));
  s.intervals_.push_back({kNegInf, kPosInf});
  for (AtomId a = 0; a < s.registry_->size(); ++a) s.atoms_[a] = AtomPart{};
  return s;
}

SetExpr SetExpr::from_parts(RegistryPtr registry, std::vector<Interval> intervals,
                            std::map<AtomId, AtomPart> atoms) {
  SetExpr s(std::move(registry));
  s.intervals_ = std::move(intervals);
  s.atoms_ = std::move(atoms);
  s.normalize();
  return s;
}

SetExpr SetExpr::from_tokens(RegistryPtr registry, const TokenSet& tokens) {
  std::vector<Interval> ivs;
  std::map<AtomId, AtomPart> atoms;
  for (const auto& t : tokens) {
    if (t.is_integer()) {
      ivs.push_back({t.value(), t.value()});
    } else {
      auto& part = atoms.try_emplace(t.atom_id(), AtomPart{false, {}}).first->second;
      part.indices.insert(t.index());
    }
  }
  return from_parts(std::move(registry), std::move(ivs), std::move(atoms));
}

void SetExpr::normalize() {
  std::vector<Interval> ivs;
  ivs.reserve(intervals_.size());
  for (const auto& iv : intervals_)
    if (iv.lo <= iv.hi) ivs.push_back(iv);
  std::sort(ivs.begin(), ivs.end());
  std::vector<Interval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty()) {
      auto& last = merged.back();
      if (last.hi == kPosInf || iv.lo <= last.hi + 1) {
        last.hi = std::max(last.hi, iv.hi);
        continue;
      }
    }
    merged.push_back(iv);
  }
  intervals_ = std::move(merged);

  for (auto it = atoms_.begin(); it != atoms_.end();) {
    if (it->first >= registry_->size())
      throw Error(ErrorCode::Registry, "atom id " + std::to_string(it->first) + " not in registry");
    if (!it->second.cofinite && it->second.indices.empty())
      it = atoms_.erase(it);
    else
      ++it;
  }
}

bool SetExpr::contains(const Token& token) const {
  if (token.is_integer()) {
    auto v = token.value();
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), v,
                               [](std::int64_t x, const Interval& iv) { return x < iv.lo; });
    if (it == intervals_.begin()) return false;
    return std::prev(it)->contains(v);
  }
  auto it = atoms_.find(token.atom_id());
  return it != atoms_.end() && it->second.contains(token.index());
}

bool SetExpr::is_finite() const noexcept {
  for (const auto& iv : intervals_)
    if (!iv.bounded()) return false;
  for (const auto& [id, part] : atoms_)
    if (part.cofinite) return false;
  return true;
}

bool SetExpr::operator==(const SetExpr& other) const {
  return intervals_ == other.intervals_ && atoms_ == other.atoms_ &&
         (registry_ == other.registry_ || *registry_ == *other.registry_);
}

bool SetExpr::operator<(const SetExpr& other) const {
  return std::tie(intervals_, atoms_) < std::tie(other.intervals_, other.atoms_);
}

bool same_registry(const SetExpr& a, const SetExpr& b) noexcept {
  return a.registry() == b.registry() || *a.registry() == *b.registry();
}

namespace {

void require_same_registry(const SetExpr& a, const SetExpr& b) {
  if (!same_registry(a, b)) throw Error(ErrorCode::Registry, "mismatched atom registries");
}

std::set<std::uint64_t> set_union(const std::set<std::uint64_t>& a,
                                  const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::set<std::uint64_t> set_inter(const std::set<std::uint64_t>& a,
                                  const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::set<std::uint64_t> set_minus(const std::set<std::uint64_t>& a,
                                  const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

SetExpr intersect(const SetExpr& a, const SetExpr& b) {
  require_same_registry(a, b);
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    auto lo = std::max(x[i].lo, y[j].lo);
    auto hi = std::min(x[i].hi, y[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi)
      ++i;
    else
      ++j;
  }

  std::map<AtomId, AtomPart> atoms;
  for (const auto& [id, pa] : a.atom_parts()) {
    auto it = b.atom_parts().find(id);
    if (it == b.atom_parts().end()) continue;
    const auto& pb = it->second;
    if (pa.cofinite && pb.cofinite)
      atoms[id] = AtomPart{true, set_union(pa.indices, pb.indices)};
    else if (pa.cofinite)
      atoms[id] = AtomPart{false, set_minus(pb.indices, pa.indices)};
    else if (pb.cofinite)
      atoms[id] = AtomPart{false, set_minus(pa.indices, pb.indices)};
    else
      atoms[id] = AtomPart{false, set_inter(pa.indices, pb.indices)};
  }
  return SetExpr::from_parts(a.registry(), std::move(out), std::move(atoms));
}

SetExpr unite(const SetExpr& a, const SetExpr& b) {
  require_same_registry(a, b);
  auto ivs = a.intervals();
  ivs.insert(ivs.end(), b.intervals().begin(), b.intervals().end());
  auto atoms = a.atom_parts();
  for (const auto& [id, pb] : b.atom_parts()) {
    auto it = atoms.find(id);
    if (it == atoms.end()) {
      atoms[id] = pb;
      continue;
    }
    auto& pa = it->second;
    if (pa.cofinite && pb.cofinite)
      pa.indices = set_inter(pa.indices, pb.indices);
    else if (pa.cofinite)
      pa.indices = set_minus(pa.indices, pb.indices);
    else if (pb.cofinite)
      pa = AtomPart{true, set_minus(pb.indices, pa.indices)};
    else
      pa.indices = set_union(pa.indices, pb.indices);
  }
  return SetExpr::from_parts(a.registry(), std::move(ivs), std::move(atoms));
}

SetExpr complement(const SetExpr& a) {
  std::vector<Interval> out;
  std::int64_t start = kNegInf;
  bool closed = false;
  for (const auto& iv : a.intervals()) {
    if (iv.lo != kNegInf && iv.lo > start) out.push_back({start, iv.lo - 1});
    if (iv.hi == kPosInf) {
      closed = true;
      break;
    }
    start = iv.hi + 1;
  }
  if (!closed) out.push_back({start, kPosInf});

  std::map<AtomId, AtomPart> atoms;
  for (AtomId id = 0; id < a.registry()->size(); ++id) {
    auto it = a.atom_parts().find(id);
    if (it == a.atom_parts().end())
      atoms[id] = AtomPart{};
    else
      atoms[id] = AtomPart{!it->second.cofinite, it->second.indices};
  }
  return SetExpr::from_parts(a.registry(), std::move(out), std::move(atoms));
}

SetExpr subtract_finite(const SetExpr& a, const TokenSet& tokens) {
  std::set<std::int64_t> ints;
  auto atoms = a.atom_parts();
  for (const auto& t : tokens) {
    if (t.is_integer()) {
      ints.insert(t.value());
      continue;
    }
    auto it = atoms.find(t.atom_id());
    if (it == atoms.end()) continue;
    if (it->second.cofinite)
      it->second.indices.insert(t.index());
    else
      it->second.indices.erase(t.index());
  }
  std::vector<Interval> out;
  for (auto iv : a.intervals()) {
    for (auto it = ints.lower_bound(iv.lo); it != ints.end() && *it <= iv.hi; ++it) {
      if (*it > iv.lo) out.push_back({iv.lo, *it - 1});
      iv.lo = *it + 1;
    }
    out.push_back(iv);
  }
  return SetExpr::from_parts(a.registry(), std::move(out), std::move(atoms));
}

Cardinality cardinality(const SetExpr& a) {
  if (!a.is_finite()) return Cardinality::infinite();
  std::uint64_t n = 0;
  for (const auto& iv : a.intervals()) n += iv.size();
  for (const auto& [id, part] : a.atom_parts()) n += part.indices.size();
  return Cardinality::finite(n);
}

std::size_t violations(const TokenSet& tokens, const SetExpr& l) {
  std::size_t n = 0;
  for (const auto& t : tokens)
    if (!l.contains(t)) ++n;
  return n;
}

bool contains_all(const SetExpr& l, const TokenSet& tokens) {
  return std::all_of(tokens.begin(), tokens.end(), [&](const Token& t) { return l.contains(t); });
}

// ---------------------------------------------------------------------------
// Canonical enumeration

struct CanonicalCursor::Stream {
  enum class Kind { Ascending, Descending, AroundZero, Atom };

  Kind kind = Kind::Ascending;
  Interval range{0, -1};
  std::int64_t cur = 0;
  std::uint64_t r = 0;
  bool negative_phase = false;

  AtomId atom = 0;
  AtomPart part;
  std::uint64_t k = 0;
  std::set<std::uint64_t>::const_iterator it;

  std::optional<Token> head;

  static Stream for_interval(const Interval& iv) {
    Stream s;
    s.range = iv;
    if (iv.lo >= 0) {
      s.kind = Kind::Ascending;
      s.cur = iv.lo;
      s.head = Token::integer(iv.lo);
    } else if (iv.hi < 0) {
      s.kind = Kind::Descending;
      s.cur = iv.hi;
      s.head = Token::integer(iv.hi);
    } else {
      s.kind = Kind::AroundZero;
      s.head = Token::integer(0);
    }
    return s;
  }

  static Stream for_atom(AtomId atom, const AtomPart& part) {
    Stream s;
    s.kind = Kind::Atom;
    s.atom = atom;
    s.part = part;
    if (part.cofinite) {
      while (s.part.indices.count(s.k)) ++s.k;
      s.head = Token::atom(atom, s.k);
    } else {
      s.it = s.part.indices.begin();
      if (s.it != s.part.indices.end()) s.head = Token::atom(atom, *s.it);
    }
    return s;
  }

  void advance() {
    switch (kind) {
      case Kind::Ascending:
        if (cur == range.hi || cur + 1 == kPosInf) {
          head.reset();
        } else {
          head = Token::integer(++cur);
        }
        return;
      case Kind::Descending:
        if (cur == range.lo || cur - 1 == kNegInf) {
          head.reset();
        } else {
          head = Token::integer(--cur);
        }
        return;
      case Kind::AroundZero:
        advance_around_zero();
        return;
      case Kind::Atom:
        if (part.cofinite) {
          ++k;
          while (part.indices.count(k)) ++k;
          head = Token::atom(atom, k);
        } else {
          ++it;
          if (it == part.indices.end())
            head.reset();
          else
            head = Token::atom(atom, *it);
        }
        return;
    }
  }

  // Sequence 0, 1, -1, 2, -2, ... restricted to `range` (which contains 0).
  void advance_around_zero() {
    const std::uint64_t up_limit = static_cast<std::uint64_t>(range.hi);
    const std::uint64_t down_limit = range.lo == kNegInf
                                         ? static_cast<std::uint64_t>(kPosInf) - 1
                                         : static_cast<std::uint64_t>(-range.lo);
    for (;;) {
      if (!negative_phase) {
        negative_phase = true;
        if (r > 0 && r <= down_limit) {
          head = Token::integer(-static_cast<std::int64_t>(r));
          return;
        }
      } else {
        negative_phase = false;
        ++r;
        if (r > up_limit && r > down_limit) {
          head.reset();
          return;
        }
        if (r <= up_limit && r < static_cast<std::uint64_t>(kPosInf)) {
          head = Token::integer(static_cast<std::int64_t>(r));
          return;
        }
      }
    }
  }
};

CanonicalCursor::CanonicalCursor(const SetExpr& set) {
  for (const auto& iv : set.intervals()) streams_.push_back(Stream::for_interval(iv));
  for (const auto& [id, part] : set.atom_parts()) {
    auto s = Stream::for_atom(id, part);
    if (s.head) streams_.push_back(std::move(s));
  }
  // Iterators into a moved AtomPart would dangle; rebind after the vector settles.
  for (auto& s : streams_) {
    if (s.kind == Stream::Kind::Atom && !s.part.cofinite && s.head)
      s.it = s.part.indices.find(s.head->index());
  }
}

CanonicalCursor::~CanonicalCursor() = default;
CanonicalCursor::CanonicalCursor(CanonicalCursor&&) noexcept = default;
CanonicalCursor& CanonicalCursor::operator=(CanonicalCursor&&) noexcept = default;

std::optional<Token> CanonicalCursor::next() {
  Stream* best = nullptr;
  for (auto& s : streams_) {
    if (s.head && (!best || *s.head < *best->head)) best = &s;
  }
  if (!best) return std::nullopt;
  auto out = best->head;
  best->advance();
  return out;
}

std::vector<Token> canonical_prefix(const SetExpr& a, std::size_t n, const TokenSet& skip) {
  std::vector<Token> out;
  CanonicalCursor cursor(a);
  while (out.size() < n) {
    auto t = cursor.next();
    if (!t) break;
    if (!skip.count(*t)) out.push_back(*t);
  }
  return out;
}

std::optional<Token> least_new(const SetExpr& a, const TokenSet& forbidden) {
  auto v = canonical_prefix(a, 1, forbidden);
  if (v.empty()) return std::nullopt;
  return v.front();
}

std::vector<Token> enumerate_finite(const SetExpr& a) {
  auto card = cardinality(a);
  if (card.is_infinite()) throw Error(ErrorCode::Parameter, "cannot enumerate an infinite set");
  return canonical_prefix(a, card.count());
}

}  // namespace genlimit
