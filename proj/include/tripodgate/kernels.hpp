#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace tripodgate::kernels {

using cplx = std::complex<double>;

// Dense complex kernels powering the Hamiltonian accumulation and the
// propagator inner loop. A scalar reference implementation always exists;
// AVX2 (x86-64) and NEON (aarch64) variants are selected at runtime and are
// required to agree with the reference to floating-point roundoff (see
// tests/test_kernels.cpp). Selection can be forced with the environment
// variable TRIPODGATE_KERNELS=scalar|avx2|neon.
enum class Impl { scalar, avx2, neon };

Impl active();
void force(Impl impl); // throws if the implementation is unavailable on this CPU
std::string_view impl_name(Impl impl);

struct Dispatch {
    // y = A x, A row-major n x n
    void (*matvec)(const cplx* A, const cplx* x, cplx* y, int n);
    // out = base + sum_k coeff[k] * term[k], arrays of length len, real coeffs
    void (*scaled_sum)(cplx* out, const cplx* base, const double* coeff,
                       const cplx* const* term, int nterms, int len);
    // y += a * x
    void (*axpy)(cplx a, const cplx* x, cplx* y, int n);
    // sum |x_i|^2
    double (*norm_sq)(const cplx* x, int n);
};

const Dispatch& table();

inline void matvec(const cplx* A, const cplx* x, cplx* y, int n) { table().matvec(A, x, y, n); }
inline void scaled_sum(cplx* out, const cplx* base, const double* coeff,
                       const cplx* const* term, int nterms, int len)
{
    table().scaled_sum(out, base, coeff, term, nterms, len);
}
inline void axpy(cplx a, const cplx* x, cplx* y, int n) { table().axpy(a, x, y, n); }
inline double norm_sq(const cplx* x, int n) { return table().norm_sq(x, n); }

namespace detail {
extern const Dispatch scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const Dispatch avx2_table;
#endif
#if defined(__aarch64__)
extern const Dispatch neon_table;
#endif
} // namespace detail

} // namespace tripodgate::kernels
