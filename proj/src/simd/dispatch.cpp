#include "spinkit/simd/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spinkit::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::runtime_error("ISA not supported on this machine: " + std::string(isa_name(isa)));
  }
  return isa == Isa::Avx2 ? *detail::avx2_table() : detail::scalar_table();
}

namespace {

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("SPINKIT_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return detail::scalar_table();
    if (want == "avx2" && isa_supported(Isa::Avx2)) return *detail::avx2_table();
  }
  if (isa_supported(Isa::Avx2)) return *detail::avx2_table();
  return detail::scalar_table();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

void evaluate_quadratic_forms(const KernelTable& table, std::span<const std::int64_t> gram,
                              std::size_t dim, std::span<const std::int64_t> coords,
                              std::span<std::int64_t> out) {
  constexpr std::int64_t kGramBound = std::int64_t{1} << 20;
  constexpr std::int64_t kCoordBound = std::int64_t{1} << 8;
  if (dim > 64) throw std::invalid_argument("quadratic_forms: dimension above 64");
  if (gram.size() != dim * dim) throw std::invalid_argument("quadratic_forms: gram size");
  const std::size_t count = out.size();
  if (coords.size() != dim * count) throw std::invalid_argument("quadratic_forms: coords size");
  for (std::int64_t g : gram)
    if (g <= -kGramBound || g >= kGramBound)
      throw std::out_of_range("quadratic_forms: gram entry out of kernel range");
  for (std::int64_t v : coords)
    if (v <= -kCoordBound || v >= kCoordBound)
      throw std::out_of_range("quadratic_forms: coordinate out of kernel range");
  if (count == 0) return;
  table.quadratic_forms(gram.data(), dim, coords.data(), count, out.data());
}

}  // namespace spinkit::simd
