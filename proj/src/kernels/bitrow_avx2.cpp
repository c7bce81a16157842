#include <immintrin.h>

#include <bit>

#include "analogy/kernels.hpp"

namespace analogy::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;  // 64-bit words per __m256i
}

void or_into(Word* dst, const Word* src, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const auto* s = reinterpret_cast<const __m256i*>(src + i);
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

std::size_t andnot_count(const Word* a, const Word* b, std::size_t n) noexcept {
  std::size_t total = 0;
  std::size_t i = 0;
  alignas(32) Word lanes[kLanes];
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot(x, y) computes ~x & y
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_andnot_si256(vb, va));
    total += _mm_popcnt_u64(lanes[0]) + _mm_popcnt_u64(lanes[1]) +
             _mm_popcnt_u64(lanes[2]) + _mm_popcnt_u64(lanes[3]);
  }
  for (; i < n; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

bool is_subset(const Word* a, const Word* b, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i extra = _mm256_andnot_si256(vb, va);
    if (!_mm256_testz_si256(extra, extra)) return false;
  }
  for (; i < n; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

}  // namespace analogy::kernels::avx2
