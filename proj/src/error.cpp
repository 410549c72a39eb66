#include "infoflow/error.hpp"

namespace infoflow {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::invalid_pair:
    case ErrorKind::invalid_stride:
    case ErrorKind::resolution:
      return 2;
    case ErrorKind::io:
    case ErrorKind::parse:
    case ErrorKind::format:
    case ErrorKind::insufficient_data:
    case ErrorKind::validation:
    case ErrorKind::input:
      return 3;
    case ErrorKind::singular_covariance:
    case ErrorKind::no_stationary_distribution:
    case ErrorKind::instability:
    case ErrorKind::degenerate_component:
    case ErrorKind::degenerate_normalizer:
    case ErrorKind::invalid_transform:
      return 4;
  }
  return 1;
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::invalid_pair: return "invalid-pair";
    case ErrorKind::invalid_stride: return "invalid-stride";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::format: return "format";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::validation: return "validation";
    case ErrorKind::input: return "input";
    case ErrorKind::singular_covariance: return "singular-covariance";
    case ErrorKind::no_stationary_distribution: return "no-stationary-distribution";
    case ErrorKind::instability: return "instability";
    case ErrorKind::degenerate_component: return "degenerate-component";
    case ErrorKind::degenerate_normalizer: return "degenerate-normalizer";
    case ErrorKind::invalid_transform: return "invalid-transform";
  }
  return "unknown";
}

}  // namespace infoflow
