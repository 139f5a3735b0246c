#include "genlimit/adversary.hpp"

#include "genlimit/error.hpp"

namespace genlimit {

std::vector<Token> enumeration_order(const SetExpr& l, std::size_t horizon, const TokenSet& skip) {
  if (l.is_finite()) throw Error(ErrorCode::Parameter, "enumerations need an infinite language");
  std::vector<SetExpr> finite, infinite;
  for (const auto& iv : l.intervals())
    (iv.bounded() ? finite : infinite).push_back(SetExpr::from_parts(l.registry(), {iv}, {}));
  for (const auto& [id, part] : l.atom_parts())
    (part.cofinite ? infinite : finite).push_back(SetExpr::from_parts(l.registry(), {}, {{id, part}}));

  std::vector<Token> out;
  auto take = [&](const Token& t) {
    if (!skip.count(t)) out.push_back(t);
    return out.size() >= horizon;
  };
  if (horizon == 0) return out;
  for (const auto& f : finite)
    for (const auto& t : enumerate_finite(f))
      if (take(t)) return out;
  std::vector<CanonicalCursor> cursors;
  for (const auto& s : infinite) cursors.emplace_back(s);
  for (;;)
    for (auto& cur : cursors)
      if (take(*cur.next())) return out;
}

EnumerationScript canonical_enumeration(const Collection& c, std::size_t target, std::size_t horizon) {
  return {enumeration_order(c[target], horizon), target, 0};
}

EnumerationScript noisy_enumeration(const Collection& c, std::size_t target, std::uint32_t noise,
                                    std::size_t horizon) {
  EnumerationScript s{canonical_prefix(complement(c[target]), std::min<std::size_t>(noise, horizon)), target,
                      noise};
  if (s.tokens.size() < std::min<std::size_t>(noise, horizon))
    throw Error(ErrorCode::Parameter, "not enough tokens outside the target for the junk budget");
  auto rest = enumeration_order(c[target], horizon - s.tokens.size());
  s.tokens.insert(s.tokens.end(), rest.begin(), rest.end());
  return s;
}

EnumerationScript witness_attack(const Collection& c, const ComplexityTable& table, Cell cell,
                                 std::size_t horizon) {
  auto e = table.find(cell);
  if (!e) throw Error(ErrorCode::IndexRange, "cell not in the table");
  const auto& entry = table.entries[*e];
  if (entry.m_star == 0)
    throw Error(ErrorCode::NoAttack, "language " + std::to_string(cell.language + 1) + " at noise " +
                                         std::to_string(cell.noise) + " has m* = 0");
  EnumerationScript s{{}, cell.language, cell.noise};
  TokenSet used;
  auto push = [&](const Token& t) {
    if (s.tokens.size() < horizon && used.insert(t).second) s.tokens.push_back(t);
  };
  for (const auto& t : entry.witness_set) push(t);
  auto inter = witness_intersection(c, table, entry.witness);
  if (inter.is_finite())
    for (const auto& t : enumerate_finite(inter)) push(t);
  if (s.tokens.size() < horizon)
    for (const auto& t : enumeration_order(c[cell.language], horizon - s.tokens.size(), used)) push(t);
  return s;
}

EnumerationScript intersection_first_attack(const Collection& c, const ComplexityTable& table,
                                            std::size_t target, std::size_t horizon) {
  return witness_attack(c, table, {target, 0}, horizon);
}

ScriptCheck validate_script(const EnumerationScript& s, const Collection& c) {
  ScriptCheck out;
  for (std::size_t k = 0; k < s.tokens.size(); ++k) {
    if (c[s.target].contains(s.tokens[k])) continue;
    ++out.out_of_language;
    if (out.out_of_language > s.noise) {
      out.ok = false;
      out.offending.push_back(k);
    }
  }
  return out;
}

Json script_to_json(const EnumerationScript& s, const AtomRegistry& registry) {
  Json tokens = Json::array();
  for (const auto& t : s.tokens) tokens.push_back(token_to_json(t, registry));
  return {{"target", s.target + 1}, {"noise", s.noise}, {"tokens", tokens}};
}

EnumerationScript script_from_json(const Json& j, const AtomRegistry& registry) {
  try {
    EnumerationScript s;
    auto target = j.at("target").get<std::size_t>();
    if (target == 0) throw Error(ErrorCode::Schema, "script target is 1-based");
    s.target = target - 1;
    s.noise = j.value("noise", 0u);
    for (const auto& t : j.at("tokens")) s.tokens.push_back(token_from_json(t, registry));
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("script: ") + e.what());
  }
}

}  // namespace genlimit
