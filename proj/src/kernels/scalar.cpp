#include "w2pt/kernels.hpp"

namespace w2pt::kernels {
namespace {

void shifted_step_scalar(double* out, const double* c, const double* q, const double* a_dup,
                         double cc, double b, int n_cols) {
    out[0] = out[1] = 0.0;
    out[2 * n_cols - 2] = out[2 * n_cols - 1] = 0.0;
    const int kend = 2 * n_cols - 2;
    for (int k = 2; k < kend; ++k) {
        out[k] = a_dup[k] * c[k] + cc * (c[k - 2] + c[k + 2]) + b * q[k];
    }
}

void shifted_step_uniform_scalar(double* out, const double* c, const double* q, double a,
                                 double cc, double b, int n_cols) {
    out[0] = out[1] = 0.0;
    out[2 * n_cols - 2] = out[2 * n_cols - 1] = 0.0;
    const int kend = 2 * n_cols - 2;
    for (int k = 2; k < kend; ++k) {
        out[k] = a * c[k] + cc * (c[k - 2] + c[k + 2]) + b * q[k];
    }
}

void row_step_scalar(double* out, const double* c, const double* q, const double* up,
                     const double* dn, double a, double cc, double b, int n_cols) {
    const int n = 2 * n_cols;
    for (int k = 0; k < n; ++k) {
        out[k] = a * c[k] + cc * (up[k] + dn[k]) + b * q[k];
    }
}

void combine4_scalar(double* out, const double* a, const double* b, const double* c,
                     const double* d, double s1, double s2, double s3, double s4, int n_doubles) {
    for (int k = 0; k < n_doubles; ++k) {
        out[k] = s1 * a[k] + s2 * b[k] + s3 * c[k] + s4 * d[k];
    }
}

void axpy_real_scalar(double* acc, const double* s, double coef, int n) {
    for (int j = 0; j < n; ++j) acc[j] += coef * s[j];
}

void cdot_real_scalar(const double* row, const double* u_dup, int n_cols, double* re, double* im) {
    // Four-lane accumulation, matching the SIMD variants' summation order.
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    const int n = 2 * n_cols;
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        acc0 += row[k] * u_dup[k];
        acc1 += row[k + 1] * u_dup[k + 1];
        acc2 += row[k + 2] * u_dup[k + 2];
        acc3 += row[k + 3] * u_dup[k + 3];
    }
    if (k < n) {  // one complex left (n_cols odd)
        acc0 += row[k] * u_dup[k];
        acc1 += row[k + 1] * u_dup[k + 1];
    }
    *re = acc0 + acc2;
    *im = acc1 + acc3;
}

double sum_squares_scalar(const double* z, int n_doubles) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    int k = 0;
    for (; k + 4 <= n_doubles; k += 4) {
        acc0 += z[k] * z[k];
        acc1 += z[k + 1] * z[k + 1];
        acc2 += z[k + 2] * z[k + 2];
        acc3 += z[k + 3] * z[k + 3];
    }
    for (; k < n_doubles; ++k) acc0 += z[k] * z[k];
    return (acc0 + acc2) + (acc1 + acc3);
}

}  // namespace

const KernelSet& scalar() {
    static const KernelSet set{
        "scalar",
        shifted_step_scalar,
        shifted_step_uniform_scalar,
        row_step_scalar,
        combine4_scalar,
        axpy_real_scalar,
        cdot_real_scalar,
        sum_squares_scalar,
    };
    return set;
}

}  // namespace w2pt::kernels
