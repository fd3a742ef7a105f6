// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// Built with -mavx2; only reached through relax_row_for(Isa::Avx2) after
// the runtime CPU check.

#include <immintrin.h>

#include "urm/kernels.hpp"

namespace urm::kernels {

void relax_row_avx2(std::span<Weight> row, std::span<const Weight> pivot,
                    Weight via) {
  const std::size_t n = row.size();
  const __m256i inf = _mm256_set1_epi64x(kInfinity);
  const __m256i via_v = _mm256_set1_epi64x(via);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256i p =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pivot.data() + j));
    const __m256i r =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row.data() + j));
    const __m256i candidate = _mm256_add_epi64(via_v, p);
    const __m256i absent = _mm256_cmpeq_epi64(p, inf);
    const __m256i better = _mm256_cmpgt_epi64(r, candidate);
    const __m256i take = _mm256_andnot_si256(absent, better);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row.data() + j),
                        _mm256_blendv_epi8(r, candidate, take));
  }
  relax_row_scalar(row.subspan(j), pivot.subspan(j), via);
}

}  // namespace urm::kernels
