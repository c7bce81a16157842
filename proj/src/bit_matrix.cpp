#include "analogy/bit_matrix.hpp"

namespace analogy {

BitMatrix::BitMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {}

void BitMatrix::set(std::size_t row, std::size_t col, bool value) noexcept {
  auto& word = bits_[row * stride_ + col / 64];
  const kernels::Word mask = kernels::Word{1} << (col % 64);
  if (value) {
    word |= mask;
  } else {
    word &= ~mask;
  }
}

std::size_t BitMatrix::count() const noexcept {
  const std::vector<kernels::Word> zero(bits_.size(), 0);
  return kernels::andnot_count(bits_, zero);
}

std::size_t BitMatrix::count_not_in(const BitMatrix& other) const noexcept {
  return kernels::andnot_count(bits_, other.bits_);
}

bool BitMatrix::is_subset_of(const BitMatrix& other) const noexcept {
  return n_ == other.n_ && kernels::is_subset(bits_, other.bits_);
}

void BitMatrix::close_reflexive_transitive() noexcept {
  for (std::size_t i = 0; i < n_; ++i) set(i, i);
  for (std::size_t k = 0; k < n_; ++k) {
    const auto pivot = row(k);
    for (std::size_t i = 0; i < n_; ++i) {
      if (i != k && test(i, k)) kernels::or_into(row(i), pivot);
    }
  }
}

}  // namespace analogy
