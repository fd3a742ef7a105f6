// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// Min-plus row relaxation, the inner loop of the shortest-path closure
// used by the constraint engine. A scalar reference kernel is always
// available; an AVX2 variant is picked at runtime when the CPU has it.
// Both produce bit-identical results.

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace urm::kernels {

using Weight = std::int64_t;

/// Absent edge. Finite weights must stay well inside (-kInfinity, kInfinity).
inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max() / 4;

/// row[j] = min(row[j], via + pivot[j]) for every j where pivot[j] is
/// finite. `via` must be finite. Spans must have equal length.
using RelaxRowFn = void (*)(std::span<Weight> row,
                            std::span<const Weight> pivot, Weight via);

void relax_row_scalar(std::span<Weight> row, std::span<const Weight> pivot,
                      Weight via);

#if defined(__x86_64__) || defined(_M_X64)
#define URM_HAVE_AVX2_KERNEL 1
void relax_row_avx2(std::span<Weight> row, std::span<const Weight> pivot,
                    Weight via);
#endif

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// True when the running CPU can execute the given variant.
bool supported(Isa isa);

/// Best supported variant. Setting URM_FORCE_SCALAR=1 in the environment
/// pins the scalar kernel.
Isa detect();

RelaxRowFn relax_row_for(Isa isa);

/// Kernel selected once per process by detect().
RelaxRowFn relax_row();

/// Floyd-Warshall over a dense row-major `size` x `size` matrix.
void close(std::span<Weight> matrix, std::size_t size, RelaxRowFn relax);

}  // namespace urm::kernels
