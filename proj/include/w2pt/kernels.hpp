#pragma once

#include <string>
#include <vector>

namespace w2pt::kernels {

/// Inner loops of the evolver and the observable reductions, operating on
/// interleaved complex data (re,im pairs) with real coefficients.
///
/// Every function has a scalar reference implementation and, where the
/// target supports it, an AVX2 or NEON variant. The active set is selected
/// once at startup from CPU features; W2PT_KERNELS=scalar|avx2|neon
/// overrides the choice. Variants are equivalence-tested against the scalar
/// reference.
struct KernelSet {
    const char* name;

    /// out[j] = a[j]*c[j] + cc*(c[j-1] + c[j+1]) + b*q[j] over interior
    /// columns j = 1..n_cols-2; out[0] and out[n_cols-1] are set to zero.
    /// c, q, out are complex rows (2*n_cols doubles); a is a real
    /// per-column coefficient duplicated into (re,im) lanes (2*n_cols).
    void (*shifted_step)(double* out, const double* c, const double* q, const double* a_dup,
                         double cc, double b, int n_cols);

    /// Same stencil with a uniform coefficient a for the whole row.
    void (*shifted_step_uniform)(double* out, const double* c, const double* q, double a,
                                 double cc, double b, int n_cols);

    /// out[k] = a*c[k] + cc*(up[k] + dn[k]) + b*q[k] over the full row
    /// (2*n_cols doubles); neighbor rows live at +/- one grid row.
    void (*row_step)(double* out, const double* c, const double* q, const double* up,
                     const double* dn, double a, double cc, double b, int n_cols);

    /// out[k] = s1*a[k] + s2*b[k] + s3*c[k] + s4*d[k] over n_doubles.
    void (*combine4)(double* out, const double* a, const double* b, const double* c,
                     const double* d, double s1, double s2, double s3, double s4, int n_doubles);

    /// acc[j] += coef * s[j] over n real entries.
    void (*axpy_real)(double* acc, const double* s, double coef, int n);

    /// Complex dot of an interleaved complex row with a real vector
    /// duplicated into (re,im) lanes: re = sum row[2j]*u[j], im = sum
    /// row[2j+1]*u[j].
    void (*cdot_real)(const double* row, const double* u_dup, int n_cols, double* re, double* im);

    /// Sum of squares of n_doubles entries (Frobenius norm squared when fed
    /// a whole complex matrix).
    double (*sum_squares)(const double* z, int n_doubles);
};

/// The kernel set selected for this process.
const KernelSet& active();

/// All sets this build can run on this machine (scalar first).
std::vector<const KernelSet*> available();

const KernelSet& scalar();

}  // namespace w2pt::kernels
