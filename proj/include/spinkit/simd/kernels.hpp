#pragma once

// Data-parallel inner loops shared by the F2 solver and the evenization search.
// Every kernel has a scalar reference implementation; vector variants are
// selected once at runtime and must agree with the scalar path bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace spinkit::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  /// dst[i] ^= src[i] for i < words.
  void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  /// Parity of popcount(a & b) over the first `words` words.
  bool (*and_parity)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  /// out[c] = v_c^T G v_c for `count` candidate vectors of length `dim`.
  /// `gram` is dim x dim row-major; `coords` is coordinate-major
  /// (coords[i * count + c] is coordinate i of candidate c).
  /// Entries must satisfy the bounds checked by evaluate_quadratic_forms.
  void (*quadratic_forms)(const std::int64_t* gram, std::size_t dim,
                          const std::int64_t* coords, std::size_t count,
                          std::int64_t* out);
};

bool isa_supported(Isa isa);

/// Table for a specific ISA; throws std::runtime_error when unsupported here.
const KernelTable& kernels_for(Isa isa);

/// Table chosen at first use: the widest supported ISA, unless the
/// SPINKIT_ISA environment variable names a narrower one ("scalar", "avx2").
const KernelTable& active_kernels();

/// Bound-checked front end for KernelTable::quadratic_forms.
/// Requires |gram entries| < 2^20, |coords| < 2^8 and dim <= 64.
void evaluate_quadratic_forms(const KernelTable& table, std::span<const std::int64_t> gram,
                              std::size_t dim, std::span<const std::int64_t> coords,
                              std::span<std::int64_t> out);

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace spinkit::simd
