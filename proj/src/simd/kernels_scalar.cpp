#include "spinkit/simd/kernels.hpp"

#include <bit>

namespace spinkit::simd::detail {

namespace {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

bool and_parity_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words; ++i) acc ^= a[i] & b[i];
  return (std::popcount(acc) & 1) != 0;
}

void quadratic_forms_scalar(const std::int64_t* gram, std::size_t dim,
                            const std::int64_t* coords, std::size_t count,
                            std::int64_t* out) {
  for (std::size_t c = 0; c < count; ++c) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::int64_t vi = coords[i * count + c];
      if (vi == 0) continue;
      std::int64_t w = 0;
      for (std::size_t j = 0; j < dim; ++j) w += gram[i * dim + j] * coords[j * count + c];
      total += vi * w;
    }
    out[c] = total;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, xor_words_scalar, and_parity_scalar,
                                 quadratic_forms_scalar};
  return table;
}

}  // namespace spinkit::simd::detail
