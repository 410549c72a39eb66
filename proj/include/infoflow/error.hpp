#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infoflow {

enum class ErrorKind {
  usage,
  invalid_pair,
  invalid_stride,
  resolution,
  io,
  parse,
  format,
  insufficient_data,
  validation,
  input,
  singular_covariance,
  no_stationary_distribution,
  instability,
  degenerate_component,
  degenerate_normalizer,
  invalid_transform,
};

/// Exit-code class of an error: 2 usage, 3 data, 4 numerical.
int exit_code(ErrorKind kind) noexcept;
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace infoflow
