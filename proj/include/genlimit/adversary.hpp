#pragma once
// Finite enumeration scripts: canonical enumerations, the lower-bound attacks
// and noisy scripts.

#include <cstdint>
#include <optional>
#include <vector>

#include "genlimit/collection.hpp"
#include "genlimit/json_io.hpp"
#include "genlimit/procedures.hpp"

namespace genlimit {

struct EnumerationScript {
  std::vector<Token> tokens;
  /// 0-based language index.
  std::size_t target = 0;
  std::uint32_t noise = 0;
  bool operator==(const EnumerationScript&) const = default;
};

/// Bounded intervals and finite atom parts in canonical order, then the
/// infinite components round-robin. Throws Parameter if `l` is finite.
std::vector<Token> enumeration_order(const SetExpr& l, std::size_t horizon, const TokenSet& skip = {});

EnumerationScript canonical_enumeration(const Collection& c, std::size_t target, std::size_t horizon);

/// `noise` canonical-least junk tokens outside the target, then the target.
EnumerationScript noisy_enumeration(const Collection& c, std::size_t target, std::uint32_t noise,
                                    std::size_t horizon);

/// The witness set of the table entry for `cell` first, then the rest of the
/// witness intersection, then the target language. Throws NoAttack at m* = 0.
/// Works for every setting; the representative witness set is T itself.
EnumerationScript witness_attack(const Collection& c, const ComplexityTable& table, Cell cell,
                                 std::size_t horizon);

/// Plain shorthand for witness_attack at noise level 0.
EnumerationScript intersection_first_attack(const Collection& c, const ComplexityTable& table,
                                            std::size_t target, std::size_t horizon);

struct ScriptCheck {
  bool ok = true;
  std::size_t out_of_language = 0;
  /// 0-based positions whose junk token exceeds the budget.
  std::vector<std::size_t> offending;
};

/// Every out-of-language step is charged, repeats included.
ScriptCheck validate_script(const EnumerationScript& s, const Collection& c);

Json script_to_json(const EnumerationScript& s, const AtomRegistry& registry);
EnumerationScript script_from_json(const Json& j, const AtomRegistry& registry);

}  // namespace genlimit
