#include "spinkit/simd/kernels.hpp"

#if defined(SPINKIT_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace spinkit::simd::detail {

namespace {

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

bool and_parity_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_xor_si256(acc, _mm256_and_si256(x, y));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t folded = lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
  for (; i < words; ++i) folded ^= a[i] & b[i];
  return (std::popcount(folded) & 1) != 0;
}

// Four candidates per register. Coordinates and Gram entries fit in the low
// 32 bits of each lane, so _mm256_mul_epi32 yields exact 64-bit products.
void quadratic_forms_avx2(const std::int64_t* gram, std::size_t dim,
                          const std::int64_t* coords, std::size_t count,
                          std::int64_t* out) {
  std::size_t c = 0;
  for (; c + 4 <= count; c += 4) {
    __m256i total = _mm256_setzero_si256();
    for (std::size_t i = 0; i < dim; ++i) {
      const __m256i vi =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coords + i * count + c));
      for (std::size_t j = 0; j < dim; ++j) {
        const std::int64_t g = gram[i * dim + j];
        if (g == 0) continue;
        const __m256i vj =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coords + j * count + c));
        const __m256i prod = _mm256_mul_epi32(vi, vj);
        total = _mm256_add_epi64(total, _mm256_mul_epi32(_mm256_set1_epi64x(g), prod));
      }
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + c), total);
  }
  for (; c < count; ++c) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        total += gram[i * dim + j] * coords[i * count + c] * coords[j * count + c];
    out[c] = total;
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::Avx2, xor_words_avx2, and_parity_avx2,
                                 quadratic_forms_avx2};
  return &table;
}

}  // namespace spinkit::simd::detail

#else

namespace spinkit::simd::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace spinkit::simd::detail

#endif
