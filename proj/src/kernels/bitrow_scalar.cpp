#include <bit>

#include "analogy/kernels.hpp"

namespace analogy::kernels::scalar {

void or_into(Word* dst, const Word* src, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

std::size_t andnot_count(const Word* a, const Word* b, std::size_t n) noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

bool is_subset(const Word* a, const Word* b, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

}  // namespace analogy::kernels::scalar
