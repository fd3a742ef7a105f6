// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace urm {

enum class ErrorCode {
  InvalidArgument,
  NotStandardForm,
  PcOutOfRange,
  Incompatible,
  NotAbstractProgram,
  UnsupportedAtom,
  InvalidCertificate,
  Source,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A parse failure pinned to a 1-based line and column of the input text.
class SourceError : public Error {
 public:
  SourceError(std::size_t line, std::size_t column, std::string message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace urm
