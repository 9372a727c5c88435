// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/error.hpp"

namespace orfcs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::PoleOutsideDisk:
      return "PoleOutsideDisk";
    case ErrorCode::KindPoleMismatch:
      return "KindPoleMismatch";
    case ErrorCode::PoleOnGrid:
      return "PoleOnGrid";
    case ErrorCode::LengthMismatch:
      return "LengthMismatch";
    case ErrorCode::EmptyDictionary:
      return "EmptyDictionary";
    case ErrorCode::TailDominates:
      return "TailDominates";
    case ErrorCode::NonpositiveMu:
      return "NonpositiveMu";
    case ErrorCode::MOutOfRange:
      return "MOutOfRange";
    case ErrorCode::ShapeMismatch:
      return "ShapeMismatch";
    case ErrorCode::TooLarge:
      return "TooLarge";
    case ErrorCode::BadDelta:
      return "BadDelta";
    case ErrorCode::ConfigError:
      return "ConfigError";
  }
  return "Unknown";
}

}  // namespace orfcs
