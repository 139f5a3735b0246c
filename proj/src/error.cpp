#include "genlimit/error.hpp"

namespace genlimit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Schema: return "schema";
    case ErrorCode::FiniteLanguage: return "finite-language";
    case ErrorCode::Registry: return "registry";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::Parameter: return "parameter";
    case ErrorCode::IndexRange: return "index-range";
    case ErrorCode::NoAttack: return "no-attack";
    case ErrorCode::Admissibility: return "admissibility";
    case ErrorCode::UnboundedSchedule: return "unbounded-schedule";
    case ErrorCode::Io: return "io";
    case ErrorCode::Configuration: return "configuration";
  }
  return "unknown";
}

}  // namespace genlimit
