#include "tripodgate/kernels.hpp"

namespace tripodgate::kernels::detail {

namespace {

void matvec_scalar(const cplx* A, const cplx* x, cplx* y, int n)
{
    for (int i = 0; i < n; ++i) {
        const cplx* row = A + static_cast<std::ptrdiff_t>(i) * n;
        double re = 0.0, im = 0.0;
        for (int j = 0; j < n; ++j) {
            const double ar = row[j].real(), ai = row[j].imag();
            const double xr = x[j].real(), xi = x[j].imag();
            re += ar * xr - ai * xi;
            im += ar * xi + ai * xr;
        }
        y[i] = cplx(re, im);
    }
}

void scaled_sum_scalar(cplx* out, const cplx* base, const double* coeff,
                       const cplx* const* term, int nterms, int len)
{
    double* o = reinterpret_cast<double*>(out);
    const double* b = reinterpret_cast<const double*>(base);
    const int m = 2 * len;
    for (int i = 0; i < m; ++i)
        o[i] = b[i];
    for (int k = 0; k < nterms; ++k) {
        const double c = coeff[k];
        const double* t = reinterpret_cast<const double*>(term[k]);
        for (int i = 0; i < m; ++i)
            o[i] += c * t[i];
    }
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, int n)
{
    const double ar = a.real(), ai = a.imag();
    for (int i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

double norm_sq_scalar(const cplx* x, int n)
{
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

} // namespace

const Dispatch scalar_table{matvec_scalar, scaled_sum_scalar, axpy_scalar, norm_sq_scalar};

} // namespace tripodgate::kernels::detail
