// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "urm/cli.hpp"

int main(int argc, char** argv) {
  return urm::cli::main(argc, argv, std::cout, std::cerr);
}
