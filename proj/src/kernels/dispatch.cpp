#include "qdeform/kernels.hpp"
#include "qdeform/error.hpp"

#include <atomic>

namespace qdeform::kernels {

namespace {
// -1: auto, otherwise the Backend value
std::atomic<int> g_forced{-1};

bool cpu_has_avx2() {
#if defined(QDEFORM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
} // namespace

const char *to_string(Backend backend) {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend backend) {
  if (backend == Backend::scalar)
    return true;
  static const bool has = cpu_has_avx2();
  return has;
}

const KernelTable &kernel_table(Backend backend) {
  if (!backend_available(backend))
    throw DomainError(std::string("kernel backend not available: ") +
                      to_string(backend));
#if defined(QDEFORM_HAVE_AVX2)
  if (backend == Backend::avx2)
    return detail::avx2_table;
#endif
  return detail::scalar_table;
}

Backend active_backend() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0)
    return static_cast<Backend>(forced);
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

const KernelTable &active() { return kernel_table(active_backend()); }

void force_backend(std::optional<Backend> backend) {
  if (backend && !backend_available(*backend))
    throw DomainError(std::string("kernel backend not available: ") +
                      to_string(*backend));
  g_forced.store(backend ? static_cast<int>(*backend) : -1,
                 std::memory_order_relaxed);
}

} // namespace qdeform::kernels
