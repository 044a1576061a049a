#include <cmath>
#include <immintrin.h>

#include "w2pt/kernels.hpp"

namespace w2pt::kernels {
namespace {

void shifted_step_avx2(double* out, const double* c, const double* q, const double* a_dup,
                       double cc, double b, int n_cols) {
    out[0] = out[1] = 0.0;
    out[2 * n_cols - 2] = out[2 * n_cols - 1] = 0.0;
    const int kend = 2 * n_cols - 2;
    const __m256d vcc = _mm256_set1_pd(cc);
    const __m256d vb = _mm256_set1_pd(b);
    int k = 2;
    for (; k + 4 <= kend; k += 4) {
        __m256d vc = _mm256_loadu_pd(c + k);
        __m256d vl = _mm256_loadu_pd(c + k - 2);
        __m256d vr = _mm256_loadu_pd(c + k + 2);
        __m256d va = _mm256_loadu_pd(a_dup + k);
        __m256d vq = _mm256_loadu_pd(q + k);
        __m256d r = _mm256_mul_pd(va, vc);
        r = _mm256_fmadd_pd(vcc, _mm256_add_pd(vl, vr), r);
        r = _mm256_fmadd_pd(vb, vq, r);
        _mm256_storeu_pd(out + k, r);
    }
    for (; k < kend; ++k) {
        out[k] = std::fma(b, q[k], std::fma(cc, c[k - 2] + c[k + 2], a_dup[k] * c[k]));
    }
}

void shifted_step_uniform_avx2(double* out, const double* c, const double* q, double a,
                               double cc, double b, int n_cols) {
    out[0] = out[1] = 0.0;
    out[2 * n_cols - 2] = out[2 * n_cols - 1] = 0.0;
    const int kend = 2 * n_cols - 2;
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vcc = _mm256_set1_pd(cc);
    const __m256d vb = _mm256_set1_pd(b);
    int k = 2;
    for (; k + 4 <= kend; k += 4) {
        __m256d vc = _mm256_loadu_pd(c + k);
        __m256d vl = _mm256_loadu_pd(c + k - 2);
        __m256d vr = _mm256_loadu_pd(c + k + 2);
        __m256d vq = _mm256_loadu_pd(q + k);
        __m256d r = _mm256_mul_pd(va, vc);
        r = _mm256_fmadd_pd(vcc, _mm256_add_pd(vl, vr), r);
        r = _mm256_fmadd_pd(vb, vq, r);
        _mm256_storeu_pd(out + k, r);
    }
    for (; k < kend; ++k) {
        out[k] = std::fma(b, q[k], std::fma(cc, c[k - 2] + c[k + 2], a * c[k]));
    }
}

void row_step_avx2(double* out, const double* c, const double* q, const double* up,
                   const double* dn, double a, double cc, double b, int n_cols) {
    const int n = 2 * n_cols;
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vcc = _mm256_set1_pd(cc);
    const __m256d vb = _mm256_set1_pd(b);
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d vc = _mm256_loadu_pd(c + k);
        __m256d vu = _mm256_loadu_pd(up + k);
        __m256d vd = _mm256_loadu_pd(dn + k);
        __m256d vq = _mm256_loadu_pd(q + k);
        __m256d r = _mm256_mul_pd(va, vc);
        r = _mm256_fmadd_pd(vcc, _mm256_add_pd(vu, vd), r);
        r = _mm256_fmadd_pd(vb, vq, r);
        _mm256_storeu_pd(out + k, r);
    }
    for (; k < n; ++k) {
        out[k] = std::fma(b, q[k], std::fma(cc, up[k] + dn[k], a * c[k]));
    }
}

void combine4_avx2(double* out, const double* a, const double* b, const double* c,
                   const double* d, double s1, double s2, double s3, double s4, int n_doubles) {
    const __m256d v1 = _mm256_set1_pd(s1);
    const __m256d v2 = _mm256_set1_pd(s2);
    const __m256d v3 = _mm256_set1_pd(s3);
    const __m256d v4 = _mm256_set1_pd(s4);
    int k = 0;
    for (; k + 4 <= n_doubles; k += 4) {
        __m256d r = _mm256_mul_pd(v1, _mm256_loadu_pd(a + k));
        r = _mm256_fmadd_pd(v2, _mm256_loadu_pd(b + k), r);
        r = _mm256_fmadd_pd(v3, _mm256_loadu_pd(c + k), r);
        r = _mm256_fmadd_pd(v4, _mm256_loadu_pd(d + k), r);
        _mm256_storeu_pd(out + k, r);
    }
    for (; k < n_doubles; ++k) {
        out[k] = std::fma(s4, d[k], std::fma(s3, c[k], std::fma(s2, b[k], s1 * a[k])));
    }
}

void axpy_real_avx2(double* acc, const double* s, double coef, int n) {
    const __m256d vc = _mm256_set1_pd(coef);
    int j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d r = _mm256_fmadd_pd(vc, _mm256_loadu_pd(s + j), _mm256_loadu_pd(acc + j));
        _mm256_storeu_pd(acc + j, r);
    }
    for (; j < n; ++j) acc[j] = std::fma(coef, s[j], acc[j]);
}

void cdot_real_avx2(const double* row, const double* u_dup, int n_cols, double* re, double* im) {
    __m256d acc = _mm256_setzero_pd();
    const int n = 2 * n_cols;
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + k), _mm256_loadu_pd(u_dup + k), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r0 = lanes[0], r1 = lanes[1], r2 = lanes[2], r3 = lanes[3];
    if (k < n) {
        r0 += row[k] * u_dup[k];
        r1 += row[k + 1] * u_dup[k + 1];
    }
    *re = r0 + r2;
    *im = r1 + r3;
}

double sum_squares_avx2(const double* z, int n_doubles) {
    __m256d acc = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= n_doubles; k += 4) {
        __m256d v = _mm256_loadu_pd(z + k);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r0 = lanes[0];
    for (; k < n_doubles; ++k) r0 += z[k] * z[k];
    return (r0 + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace

const KernelSet& avx2_kernels() {
    static const KernelSet set{
        "avx2",
        shifted_step_avx2,
        shifted_step_uniform_avx2,
        row_step_avx2,
        combine4_avx2,
        axpy_real_avx2,
        cdot_real_avx2,
        sum_squares_avx2,
    };
    return set;
}

}  // namespace w2pt::kernels
