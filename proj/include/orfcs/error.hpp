// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_ERROR_HPP_
#define ORFCS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace orfcs {

enum class ErrorCode {
  InvalidArgument,
  PoleOutsideDisk,
  KindPoleMismatch,
  PoleOnGrid,
  LengthMismatch,
  EmptyDictionary,
  TailDominates,
  NonpositiveMu,
  MOutOfRange,
  ShapeMismatch,
  TooLarge,
  BadDelta,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every precondition failure raised by the library. The code identifies the
/// contract that was violated; what() carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orfcs

#endif  // ORFCS_ERROR_HPP_
