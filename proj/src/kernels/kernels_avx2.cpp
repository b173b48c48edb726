// AVX2+FMA variants. Compiled with -mavx2 -mfma in its own translation unit;
// only reached after the runtime cpuid check in kernels.cpp.
#include "tripodgate/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace tripodgate::kernels::detail {

namespace {

// Complex multiply-accumulate on two packed complex<double>:
// acc += a * b with a=[ar0 ai0 ar1 ai1], b likewise.
inline __m256d cmul_acc(__m256d acc, __m256d a, __m256d b)
{
    const __m256d are = _mm256_movedup_pd(a);             // [ar0 ar0 ar1 ar1]
    const __m256d aim = _mm256_permute_pd(a, 0xF);        // [ai0 ai0 ai1 ai1]
    const __m256d bsw = _mm256_permute_pd(b, 0x5);        // [bi0 br0 bi1 br1]
    // are*b ± aim*bsw with sign pattern (-, +) per lane pair
    const __m256d t = _mm256_mul_pd(aim, bsw);
    const __m256d neg = _mm256_set_pd(1.0, -1.0, 1.0, -1.0); // lanes: [lo=-,hi=+]...
    return _mm256_add_pd(acc, _mm256_fmadd_pd(are, b, _mm256_mul_pd(t, neg)));
}

void matvec_avx2(const cplx* A, const cplx* x, cplx* y, int n)
{
    const double* xd = reinterpret_cast<const double*>(x);
    for (int i = 0; i < n; ++i) {
        const double* row = reinterpret_cast<const double*>(A + static_cast<std::ptrdiff_t>(i) * n);
        __m256d acc = _mm256_setzero_pd();
        int j = 0;
        for (; j + 2 <= n; j += 2) {
            const __m256d a = _mm256_loadu_pd(row + 2 * j);
            const __m256d b = _mm256_loadu_pd(xd + 2 * j);
            acc = cmul_acc(acc, a, b);
        }
        // fold the two packed complex partial sums
        __m128d lo = _mm256_castpd256_pd128(acc);
        __m128d hi = _mm256_extractf128_pd(acc, 1);
        __m128d sum = _mm_add_pd(lo, hi);
        double re = _mm_cvtsd_f64(sum);
        double im = _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
        for (; j < n; ++j) {
            const double ar = row[2 * j], ai = row[2 * j + 1];
            const double xr = xd[2 * j], xi = xd[2 * j + 1];
            re += ar * xr - ai * xi;
            im += ar * xi + ai * xr;
        }
        y[i] = cplx(re, im);
    }
}

void scaled_sum_avx2(cplx* out, const cplx* base, const double* coeff,
                     const cplx* const* term, int nterms, int len)
{
    double* o = reinterpret_cast<double*>(out);
    const double* b = reinterpret_cast<const double*>(base);
    const int m = 2 * len;
    int i = 0;
    for (; i + 4 <= m; i += 4)
        _mm256_storeu_pd(o + i, _mm256_loadu_pd(b + i));
    for (; i < m; ++i)
        o[i] = b[i];
    for (int k = 0; k < nterms; ++k) {
        const __m256d c = _mm256_set1_pd(coeff[k]);
        const double* t = reinterpret_cast<const double*>(term[k]);
        int j = 0;
        for (; j + 4 <= m; j += 4) {
            const __m256d acc = _mm256_fmadd_pd(c, _mm256_loadu_pd(t + j), _mm256_loadu_pd(o + j));
            _mm256_storeu_pd(o + j, acc);
        }
        for (; j < m; ++j)
            o[j] += coeff[k] * t[j];
    }
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, int n)
{
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    const __m256d neg = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    int j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d b = _mm256_loadu_pd(xd + 2 * j);
        const __m256d bsw = _mm256_permute_pd(b, 0x5);
        const __m256d t = _mm256_mul_pd(_mm256_mul_pd(aim, bsw), neg);
        const __m256d r = _mm256_fmadd_pd(are, b, t);
        _mm256_storeu_pd(yd + 2 * j, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * j), r));
    }
    for (; j < n; ++j) {
        const double xr = xd[2 * j], xi = xd[2 * j + 1];
        yd[2 * j] += a.real() * xr - a.imag() * xi;
        yd[2 * j + 1] += a.real() * xi + a.imag() * xr;
    }
}

double norm_sq_avx2(const cplx* x, int n)
{
    const double* xd = reinterpret_cast<const double*>(x);
    const int m = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(sum) + _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
    for (; i < m; ++i)
        s += xd[i] * xd[i];
    return s;
}

} // namespace

const Dispatch avx2_table{matvec_avx2, scaled_sum_avx2, axpy_avx2, norm_sq_avx2};

} // namespace tripodgate::kernels::detail

#endif // x86-64
