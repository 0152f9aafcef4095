#pragma once
// Hot loops of the shooting oracle and the wavefunction checks, with a
// portable reference implementation and an AVX2/FMA variant picked at run
// time. The Numerov sweep advances four trial energies at once.
//
// The scalar Numerov and residual kernels use the same operation order (and
// std::fma where the vector code fuses), so both backends agree bit for bit.
// weighted_sum_squares reassociates the sum and agrees only to rounding.

#include <cstddef>
#include <optional>

namespace qdeform::kernels {

inline constexpr int kLanes = 4;

enum class Backend { scalar, avx2 };

const char *to_string(Backend backend);

//! Per-point coefficients of k(t) = P a(t) - E~ b(t) + s(t).
struct NumerovTables {
  const double *a = nullptr;
  const double *b = nullptr;
  const double *s = nullptr;
  std::size_t n = 0;
  double h2_12 = 0.0; //!< dt^2 / 12
};

struct NumerovLanes {
  double p[kLanes];       //!< M + E - C
  double e_tilde[kLanes]; //!< E~
  double w0[kLanes];      //!< start values at points 0 and 1
  double w1[kLanes];
};

struct NumerovResult {
  double w[kLanes];  //!< w at point n-2
  double dw[kLanes]; //!< 2 dt w'(n-2), fourth order
  int nodes[kLanes]; //!< sign changes of w over points 0..n-2
};

struct KernelTable {
  void (*numerov_sweep)(const NumerovTables &, const NumerovLanes &,
                        NumerovResult &);
  //! sum_i weight_i (f_i^2 + g_i^2)
  double (*weighted_sum_squares)(const double *weight, const double *f,
                                 const double *g, std::size_t n);
  //! max_i |u''_i - k_i u_i| over the points where the stencil fits;
  //! stencil is 3 or 5.
  double (*residual_max)(const double *u, const double *k, std::size_t n,
                         double inv_h2, int stencil);
};

bool backend_available(Backend backend);
//! Kernels of one backend; throws DomainError when it is not available.
const KernelTable &kernel_table(Backend backend);

//! Backend in use: the forced one if set, else avx2 when the CPU has it.
Backend active_backend();
const KernelTable &active();
//! Pin a backend (tests, benchmarks); nullopt restores auto-detection.
void force_backend(std::optional<Backend> backend);

namespace detail {
extern const KernelTable scalar_table;
#if defined(QDEFORM_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
} // namespace detail

} // namespace qdeform::kernels
