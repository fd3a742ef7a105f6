// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// On-disk formats.
//
// Program:  one instruction per line, `Z i`, `S i`, `T i j`, `J i j k`;
//           `#` comments, blank lines ignored.
// Config:   `5,3,0`.
// Certificate: `key: value` lines, see parse_cert.

#pragma once

#include <string>
#include <string_view>

#include "urm/certificates.hpp"
#include "urm/machine.hpp"

namespace urm {

Program parse_program(std::string_view text);
std::string print_program(const Program& p);

FiniteConfig parse_config(std::string_view text);

/// Keys: kind (diverges|terminates), params, constraint*, init, head,
/// invariant*, split and ranking (terminates only), bound.
Certificate parse_cert(std::string_view text);

/// Reads a whole file; throws Error(InvalidArgument) if unreadable.
std::string read_file(const std::string& path);

}  // namespace urm
