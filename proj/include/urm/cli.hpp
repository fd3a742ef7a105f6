// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace urm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kFuelExhausted = 2,
  kCertificateRejected = 3,
};

inline constexpr std::size_t kDefaultFuel = 100000;

/// Runs `urm <command> ...`. argv[0] is the program name.
int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace urm::cli
