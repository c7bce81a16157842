#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "analogy/kernels.hpp"

namespace analogy {

// Square boolean matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool test(std::size_t row, std::size_t col) const noexcept {
    return (bits_[row * stride_ + col / 64] >> (col % 64)) & 1U;
  }
  void set(std::size_t row, std::size_t col, bool value = true) noexcept;

  std::span<kernels::Word> row(std::size_t r) noexcept { return {bits_.data() + r * stride_, stride_}; }
  std::span<const kernels::Word> row(std::size_t r) const noexcept {
    return {bits_.data() + r * stride_, stride_};
  }
  std::span<const kernels::Word> words() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  // Number of set entries of *this that are clear in other.
  std::size_t count_not_in(const BitMatrix& other) const noexcept;
  bool is_subset_of(const BitMatrix& other) const noexcept;

  // In-place reflexive-transitive closure (Warshall, row-parallel).
  void close_reflexive_transitive() noexcept;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<kernels::Word> bits_;
};

}  // namespace analogy
