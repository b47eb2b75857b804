#include "homlab/error.hpp"

namespace homlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::no_coloring: return "no-coloring";
    case ErrorCode::unsupported_representation: return "unsupported-representation";
    case ErrorCode::corrupt_polymorphism: return "corrupt-polymorphism";
    case ErrorCode::no_generator: return "no-generator";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::internal_consistency: return "internal-consistency";
    case ErrorCode::degenerate_step: return "degenerate-step";
    case ErrorCode::certificate_violation: return "certificate-violation";
    case ErrorCode::pipeline_error: return "pipeline-error";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace homlab
