#include <atomic>
#include <stdexcept>

#include "analogy/kernels.hpp"

namespace analogy::kernels {

namespace {

struct DispatchTable {
  Backend backend;
  void (*or_into)(Word*, const Word*, std::size_t) noexcept;
  std::size_t (*andnot_count)(const Word*, const Word*, std::size_t) noexcept;
  bool (*is_subset)(const Word*, const Word*, std::size_t) noexcept;
};

constexpr DispatchTable kScalarTable{Backend::kScalar, &scalar::or_into, &scalar::andnot_count,
                                     &scalar::is_subset};
#if defined(ANALOGY_HAVE_AVX2)
constexpr DispatchTable kAvx2Table{Backend::kAvx2, &avx2::or_into, &avx2::andnot_count,
                                   &avx2::is_subset};
#endif

bool host_has_avx2() noexcept {
#if defined(ANALOGY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const DispatchTable* best_table() noexcept {
#if defined(ANALOGY_HAVE_AVX2)
  if (host_has_avx2()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

std::atomic<const DispatchTable*>& current() noexcept {
  static std::atomic<const DispatchTable*> table{best_table()};
  return table;
}

}  // namespace

const char* to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2: return host_has_avx2();
  }
  return false;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed)->backend; }

void force_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw std::invalid_argument(std::string("kernel backend not available: ") + to_string(backend));
  }
  switch (backend) {
    case Backend::kScalar: current().store(&kScalarTable); return;
    case Backend::kAvx2:
#if defined(ANALOGY_HAVE_AVX2)
      current().store(&kAvx2Table);
#endif
      return;
  }
}

void reset_backend() noexcept { current().store(best_table()); }

void or_into(std::span<Word> dst, std::span<const Word> src) noexcept {
  current().load(std::memory_order_relaxed)->or_into(dst.data(), src.data(), dst.size());
}

std::size_t andnot_count(std::span<const Word> a, std::span<const Word> b) noexcept {
  return current().load(std::memory_order_relaxed)->andnot_count(a.data(), b.data(), a.size());
}

bool is_subset(std::span<const Word> a, std::span<const Word> b) noexcept {
  return current().load(std::memory_order_relaxed)->is_subset(a.data(), b.data(), a.size());
}

}  // namespace analogy::kernels
