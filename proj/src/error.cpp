#include "ratiocut/error.hpp"

namespace ratiocut {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid parameter";
    case ErrorCode::degenerate_scale: return "degenerate scale";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::negative_weight: return "negative weight";
    case ErrorCode::self_loop: return "self-loop";
    case ErrorCode::conflicting_edge: return "conflicting edge";
    case ErrorCode::length_mismatch: return "length mismatch";
    case ErrorCode::undefined_energy: return "undefined energy";
    case ErrorCode::invalid_partition: return "invalid partition";
    case ErrorCode::disconnected_graph: return "disconnected graph";
    case ErrorCode::numerical_failure: return "numerical failure";
    case ErrorCode::too_large: return "problem too large";
    case ErrorCode::io_error: return "I/O error";
  }
  return "unknown error";
}

}  // namespace ratiocut
