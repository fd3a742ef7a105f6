// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

#include "urm/error.hpp"

namespace urm::kernels {

void relax_row_scalar(std::span<Weight> row, std::span<const Weight> pivot,
                      Weight via) {
  assert(row.size() == pivot.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (pivot[j] == kInfinity) continue;
    const Weight candidate = via + pivot[j];
    if (candidate < row[j]) row[j] = candidate;
  }
}

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(URM_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect() {
  if (const char* force = std::getenv("URM_FORCE_SCALAR");
      force != nullptr && std::string(force) == "1") {
    return Isa::Scalar;
  }
  return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

RelaxRowFn relax_row_for(Isa isa) {
  if (!supported(isa)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("kernel '") + std::string(to_string(isa)) +
                    "' is not supported on this CPU");
  }
  switch (isa) {
    case Isa::Scalar:
      return &relax_row_scalar;
    case Isa::Avx2:
#ifdef URM_HAVE_AVX2_KERNEL
      return &relax_row_avx2;
#else
      break;
#endif
  }
  return &relax_row_scalar;
}

RelaxRowFn relax_row() {
  static const RelaxRowFn selected = relax_row_for(detect());
  return selected;
}

void close(std::span<Weight> matrix, std::size_t size, RelaxRowFn relax) {
  assert(matrix.size() == size * size);
  for (std::size_t k = 0; k < size; ++k) {
    std::span<const Weight> pivot = matrix.subspan(k * size, size);
    for (std::size_t i = 0; i < size; ++i) {
      // Row k through itself is a no-op unless a negative cycle is
      // already on the diagonal.
      if (i == k) continue;
      const Weight via = matrix[i * size + k];
      if (via == kInfinity) continue;
      relax(matrix.subspan(i * size, size), pivot, via);
    }
  }
}

}  // namespace urm::kernels
