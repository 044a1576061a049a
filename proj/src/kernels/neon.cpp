#include <arm_neon.h>

#include <cmath>

#include "w2pt/kernels.hpp"

namespace w2pt::kernels {
namespace {

void shifted_step_neon(double* out, const double* c, const double* q, const double* a_dup,
                       double cc, double b, int n_cols) {
    out[0] = out[1] = 0.0;
    out[2 * n_cols - 2] = out[2 * n_cols - 1] = 0.0;
    const int kend = 2 * n_cols - 2;
    const float64x2_t vcc = vdupq_n_f64(cc);
    const float64x2_t vb = vdupq_n_f64(b);
    int k = 2;
    for (; k + 2 <= kend; k += 2) {
        float64x2_t r = vmulq_f64(vld1q_f64(a_dup + k), vld1q_f64(c + k));
        r = vfmaq_f64(r, vcc, vaddq_f64(vld1q_f64(c + k - 2), vld1q_f64(c + k + 2)));
        r = vfmaq_f64(r, vb, vld1q_f64(q + k));
        vst1q_f64(out + k, r);
    }
    for (; k < kend; ++k) {
        out[k] = std::fma(b, q[k], std::fma(cc, c[k - 2] + c[k + 2], a_dup[k] * c[k]));
    }
}

void shifted_step_uniform_neon(double* out, const double* c, const double* q, double a,
                               double cc, double b, int n_cols) {
    out[0] = out[1] = 0.0;
    out[2 * n_cols - 2] = out[2 * n_cols - 1] = 0.0;
    const int kend = 2 * n_cols - 2;
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vcc = vdupq_n_f64(cc);
    const float64x2_t vb = vdupq_n_f64(b);
    int k = 2;
    for (; k + 2 <= kend; k += 2) {
        float64x2_t r = vmulq_f64(va, vld1q_f64(c + k));
        r = vfmaq_f64(r, vcc, vaddq_f64(vld1q_f64(c + k - 2), vld1q_f64(c + k + 2)));
        r = vfmaq_f64(r, vb, vld1q_f64(q + k));
        vst1q_f64(out + k, r);
    }
    for (; k < kend; ++k) {
        out[k] = std::fma(b, q[k], std::fma(cc, c[k - 2] + c[k + 2], a * c[k]));
    }
}

void row_step_neon(double* out, const double* c, const double* q, const double* up,
                   const double* dn, double a, double cc, double b, int n_cols) {
    const int n = 2 * n_cols;
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vcc = vdupq_n_f64(cc);
    const float64x2_t vb = vdupq_n_f64(b);
    int k = 0;
    for (; k + 2 <= n; k += 2) {
        float64x2_t r = vmulq_f64(va, vld1q_f64(c + k));
        r = vfmaq_f64(r, vcc, vaddq_f64(vld1q_f64(up + k), vld1q_f64(dn + k)));
        r = vfmaq_f64(r, vb, vld1q_f64(q + k));
        vst1q_f64(out + k, r);
    }
    for (; k < n; ++k) {
        out[k] = std::fma(b, q[k], std::fma(cc, up[k] + dn[k], a * c[k]));
    }
}

void combine4_neon(double* out, const double* a, const double* b, const double* c,
                   const double* d, double s1, double s2, double s3, double s4, int n_doubles) {
    const float64x2_t v1 = vdupq_n_f64(s1);
    const float64x2_t v2 = vdupq_n_f64(s2);
    const float64x2_t v3 = vdupq_n_f64(s3);
    const float64x2_t v4 = vdupq_n_f64(s4);
    int k = 0;
    for (; k + 2 <= n_doubles; k += 2) {
        float64x2_t r = vmulq_f64(v1, vld1q_f64(a + k));
        r = vfmaq_f64(r, v2, vld1q_f64(b + k));
        r = vfmaq_f64(r, v3, vld1q_f64(c + k));
        r = vfmaq_f64(r, v4, vld1q_f64(d + k));
        vst1q_f64(out + k, r);
    }
    for (; k < n_doubles; ++k) {
        out[k] = std::fma(s4, d[k], std::fma(s3, c[k], std::fma(s2, b[k], s1 * a[k])));
    }
}

void axpy_real_neon(double* acc, const double* s, double coef, int n) {
    const float64x2_t vc = vdupq_n_f64(coef);
    int j = 0;
    for (; j + 2 <= n; j += 2) {
        vst1q_f64(acc + j, vfmaq_f64(vld1q_f64(acc + j), vc, vld1q_f64(s + j)));
    }
    for (; j < n; ++j) acc[j] = std::fma(coef, s[j], acc[j]);
}

void cdot_real_neon(const double* row, const double* u_dup, int n_cols, double* re, double* im) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    const int n = 2 * n_cols;
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        acc01 = vfmaq_f64(acc01, vld1q_f64(row + k), vld1q_f64(u_dup + k));
        acc23 = vfmaq_f64(acc23, vld1q_f64(row + k + 2), vld1q_f64(u_dup + k + 2));
    }
    double r0 = vgetq_lane_f64(acc01, 0), r1 = vgetq_lane_f64(acc01, 1);
    double r2 = vgetq_lane_f64(acc23, 0), r3 = vgetq_lane_f64(acc23, 1);
    if (k < n) {
        r0 += row[k] * u_dup[k];
        r1 += row[k + 1] * u_dup[k + 1];
    }
    *re = r0 + r2;
    *im = r1 + r3;
}

double sum_squares_neon(const double* z, int n_doubles) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    int k = 0;
    for (; k + 4 <= n_doubles; k += 4) {
        float64x2_t a = vld1q_f64(z + k);
        float64x2_t c = vld1q_f64(z + k + 2);
        acc01 = vfmaq_f64(acc01, a, a);
        acc23 = vfmaq_f64(acc23, c, c);
    }
    double r0 = vgetq_lane_f64(acc01, 0);
    double r1 = vgetq_lane_f64(acc01, 1);
    double r2 = vgetq_lane_f64(acc23, 0);
    double r3 = vgetq_lane_f64(acc23, 1);
    for (; k < n_doubles; ++k) r0 += z[k] * z[k];
    return (r0 + r2) + (r1 + r3);
}

}  // namespace

const KernelSet& neon_kernels() {
    static const KernelSet set{
        "neon",
        shifted_step_neon,
        shifted_step_uniform_neon,
        row_step_neon,
        combine4_neon,
        axpy_real_neon,
        cdot_real_neon,
        sum_squares_neon,
    };
    return set;
}

}  // namespace w2pt::kernels
