// NEON (aarch64) variants. One complex<double> per 128-bit vector.
#include "tripodgate/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace tripodgate::kernels::detail {

namespace {

inline float64x2_t cmul_acc(float64x2_t acc, float64x2_t a, float64x2_t b)
{
    // acc += a*b for one complex pair [re, im]
    const float64x2_t are = vdupq_laneq_f64(a, 0);
    const float64x2_t aim = vdupq_laneq_f64(a, 1);
    const float64x2_t bsw = vextq_f64(b, b, 1); // [bi, br]
    float64x2_t t = vmulq_f64(aim, bsw);        // [ai*bi, ai*br]
    const float64x2_t sign = {-1.0, 1.0};
    t = vmulq_f64(t, sign);
    return vaddq_f64(acc, vfmaq_f64(t, are, b));
}

void matvec_neon(const cplx* A, const cplx* x, cplx* y, int n)
{
    const double* xd = reinterpret_cast<const double*>(x);
    for (int i = 0; i < n; ++i) {
        const double* row = reinterpret_cast<const double*>(A + static_cast<std::ptrdiff_t>(i) * n);
        float64x2_t acc = vdupq_n_f64(0.0);
        for (int j = 0; j < n; ++j)
            acc = cmul_acc(acc, vld1q_f64(row + 2 * j), vld1q_f64(xd + 2 * j));
        vst1q_f64(reinterpret_cast<double*>(y + i), acc);
    }
}

void scaled_sum_neon(cplx* out, const cplx* base, const double* coeff,
                     const cplx* const* term, int nterms, int len)
{
    double* o = reinterpret_cast<double*>(out);
    const double* b = reinterpret_cast<const double*>(base);
    const int m = 2 * len;
    int i = 0;
    for (; i + 2 <= m; i += 2)
        vst1q_f64(o + i, vld1q_f64(b + i));
    for (; i < m; ++i)
        o[i] = b[i];
    for (int k = 0; k < nterms; ++k) {
        const float64x2_t c = vdupq_n_f64(coeff[k]);
        const double* t = reinterpret_cast<const double*>(term[k]);
        int j = 0;
        for (; j + 2 <= m; j += 2)
            vst1q_f64(o + j, vfmaq_f64(vld1q_f64(o + j), c, vld1q_f64(t + j)));
        for (; j < m; ++j)
            o[j] += coeff[k] * t[j];
    }
}

void axpy_neon(cplx a, const cplx* x, cplx* y, int n)
{
    double ab[2] = {a.real(), a.imag()};
    const float64x2_t av = vld1q_f64(ab);
    for (int j = 0; j < n; ++j) {
        float64x2_t acc = vld1q_f64(reinterpret_cast<const double*>(y + j));
        acc = cmul_acc(acc, av, vld1q_f64(reinterpret_cast<const double*>(x + j)));
        vst1q_f64(reinterpret_cast<double*>(y + j), acc);
    }
}

double norm_sq_neon(const cplx* x, int n)
{
    const double* xd = reinterpret_cast<const double*>(x);
    const int m = 2 * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 2 <= m; i += 2) {
        const float64x2_t v = vld1q_f64(xd + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < m; ++i)
        s += xd[i] * xd[i];
    return s;
}

} // namespace

const Dispatch neon_table{matvec_neon, scaled_sum_neon, axpy_neon, norm_sq_neon};

} // namespace tripodgate::kernels::detail

#endif // __aarch64__
