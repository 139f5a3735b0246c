#pragma once

#include <string>

#include "genlimit/json_io.hpp"
#include "genlimit/procedures.hpp"

inline genlimit::Collection corpus(const std::string& name) {
  return genlimit::load_collection_file(std::string(GENLIMIT_DATA_DIR) + "/" + name);
}

// A1 = all integers, A2 = the single atom stream.
inline genlimit::GroupPartition ints_vs_atom(const genlimit::RegistryPtr& r) {
  using namespace genlimit;
  return GroupPartition({"integers", "atom1"},
                        {SetExpr::from_parts(r, {{kNegInf, kPosInf}}, {}),
                         SetExpr::from_parts(r, {}, {{0, AtomPart{}}})});
}
