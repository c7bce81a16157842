#pragma once

// Word-parallel kernels over packed bit rows. Relations on n vertices are
// stored as n rows of ceil(n/64) words; closure, inclusion and difference
// counting reduce to these three loops.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2 variant. The public entry points dispatch through a table chosen once
// at startup from the host CPU features.

#include <cstddef>
#include <cstdint>
#include <span>

namespace analogy::kernels {

using Word = std::uint64_t;

enum class Backend { kScalar, kAvx2 };

const char* to_string(Backend backend) noexcept;

bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;
// Pins the dispatch table to one backend. Throws std::invalid_argument if
// the backend is not supported on this host.
void force_backend(Backend backend);
// Restores the startup choice (best available).
void reset_backend() noexcept;

// dst[i] |= src[i]
void or_into(std::span<Word> dst, std::span<const Word> src) noexcept;
// popcount(a[i] & ~b[i]) summed over all words.
std::size_t andnot_count(std::span<const Word> a, std::span<const Word> b) noexcept;
// true iff a[i] & ~b[i] == 0 for all i, i.e. a is a subset of b.
bool is_subset(std::span<const Word> a, std::span<const Word> b) noexcept;

namespace scalar {
void or_into(Word* dst, const Word* src, std::size_t n) noexcept;
std::size_t andnot_count(const Word* a, const Word* b, std::size_t n) noexcept;
bool is_subset(const Word* a, const Word* b, std::size_t n) noexcept;
}  // namespace scalar

#if defined(ANALOGY_HAVE_AVX2)
namespace avx2 {
void or_into(Word* dst, const Word* src, std::size_t n) noexcept;
std::size_t andnot_count(const Word* a, const Word* b, std::size_t n) noexcept;
bool is_subset(const Word* a, const Word* b, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace analogy::kernels
