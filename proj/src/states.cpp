#include "w2pt/states.hpp"

#include <cmath>
#include <stdexcept>

#include "w2pt/errors.hpp"
#include "w2pt/kernels.hpp"

namespace w2pt {

namespace {
constexpr double kPi = ModeBasis::kPi;

void check_in_box(double x, double length) {
    if (x < -1e-12 || x > length + 1e-12) {
        throw std::invalid_argument("coordinate outside the computational box");
    }
}

/// sines[n-1][i] = sin(k_n x_i) for the given grid. Endpoints are pinned to
/// exact zeros: sin(n pi) evaluates to ~1e-16 in floating point, and the
/// Dirichlet invariant requires boundary entries to vanish exactly.
std::vector<std::vector<double>> sine_table(const ModeBasis& basis, const SpatialGrid& grid) {
    std::vector<std::vector<double>> s(basis.n_modes, std::vector<double>(grid.n_points));
    for (int n = 1; n <= basis.n_modes; ++n) {
        const double k = basis.wavenumber(n);
        for (int i = 0; i < grid.n_points; ++i) s[n - 1][i] = std::sin(k * grid.x(i));
        s[n - 1][0] = 0.0;
        s[n - 1][grid.n_points - 1] = 0.0;
    }
    return s;
}

/// dest += coef_n * s_n s_n^T accumulated over all modes, written into the
/// real or imaginary parts of a complex matrix.
void accumulate_rank1(ComplexMatrix& dest, const std::vector<std::vector<double>>& sines,
                      const std::vector<double>& coef, bool imaginary_part) {
    const int nx = dest.cols();
    const int n_modes = static_cast<int>(coef.size());
    const auto& k = kernels::active();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        std::vector<double> row(nx, 0.0);
        for (int m = 0; m < n_modes; ++m) {
            k.axpy_real(row.data(), sines[m].data(), coef[m] * sines[m][i], nx);
        }
        auto drow = dest.row(i);
        if (imaginary_part) {
            for (int j = 0; j < nx; ++j) drow[j].imag(drow[j].imag() + row[j]);
        } else {
            for (int j = 0; j < nx; ++j) drow[j].real(drow[j].real() + row[j]);
        }
    }
}

}  // namespace

void SmearingParams::validate() const {
    if (!(sigma_x > 0.0) || !(sigma_t > 0.0)) throw ConfigError("smearing widths must be positive");
}

ModeBasis ModeBasis::truncated(double box_length, const SmearingParams& smearing, int nyquist_cap,
                               double threshold) {
    const double se2 = smearing.sigma_eff2();
    int n = nyquist_cap;
    if (se2 > 0.0) {
        const double k_star = std::sqrt(-std::log(threshold) / se2);
        n = std::min(n, static_cast<int>(std::ceil(k_star * box_length / kPi)));
    }
    return ModeBasis{box_length, std::max(1, n)};
}

WavepacketSpec wavepacket_coefficients(const ModeBasis& basis, double alpha, double x0, int n_modes) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(x0 > 0.0) || !(x0 < basis.box_length)) {
        throw std::invalid_argument("x0 must lie inside the box");
    }
    if (n_modes < 1) throw std::invalid_argument("n_modes must be at least 1");
    WavepacketSpec spec;
    spec.width = alpha;
    spec.center = x0;
    spec.n_modes = n_modes;
    spec.coefficients.resize(n_modes);
    double norm2 = 0.0;
    for (int n = 1; n <= n_modes; ++n) {
        const double k = basis.wavenumber(n);
        const cplx c = std::exp(-alpha * alpha * k * k / 2.0) *
                       std::exp(cplx(0.0, k * x0));
        spec.coefficients[n - 1] = c;
        norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : spec.coefficients) c *= inv;
    return spec;
}

cplx vacuum_wightman(const ModeBasis& basis, const SmearingParams& smearing, double x, double t,
                     double xp, double tp) {
    check_in_box(x, basis.box_length);
    check_in_box(xp, basis.box_length);
    if (x == 0.0 || x == basis.box_length || xp == 0.0 || xp == basis.box_length) return cplx{};
    const double se2 = smearing.sigma_eff2();
    cplx sum{};
    for (int n = 1; n <= basis.n_modes; ++n) {
        const double k = basis.wavenumber(n);
        const double amp = std::exp(-k * k * se2) / (n * kPi);
        sum += amp * std::sin(k * x) * std::sin(k * xp) * std::exp(cplx(0.0, -k * (t - tp)));
    }
    return sum;
}

InitialData vacuum_initial_data(const ModeBasis& basis, const SmearingParams& smearing,
                                const SpatialGrid& grid) {
    if (std::abs(grid.length - basis.box_length) > 1e-12 * basis.box_length) {
        throw std::invalid_argument("grid length must match the mode basis box length");
    }
    const int nx = grid.n_points;
    const double se2 = smearing.sigma_eff2();
    const auto sines = sine_table(basis, grid);

    std::vector<double> a_phiphi(basis.n_modes), a_pi(basis.n_modes), a_pipi(basis.n_modes);
    for (int n = 1; n <= basis.n_modes; ++n) {
        const double k = basis.wavenumber(n);
        const double e = std::exp(-k * k * se2);
        a_phiphi[n - 1] = e / (n * kPi);
        a_pi[n - 1] = k * e / (n * kPi);
        a_pipi[n - 1] = k * k * e / (n * kPi);
    }

    InitialData data{ComplexMatrix(nx, nx), ComplexMatrix(nx, nx), ComplexMatrix(nx, nx),
                     ComplexMatrix(nx, nx)};
    accumulate_rank1(data.w_phiphi, sines, a_phiphi, false);
    accumulate_rank1(data.w_pipi, sines, a_pipi, false);
    // d/dt' brings +i k; d/dt is its exact mirror.
    accumulate_rank1(data.w_phipi, sines, a_pi, true);

    // The row-wise accumulation is symmetric only up to rounding; pin exact
    // symmetry (and with it exact Hermiticity of the seeds, which the
    // evolver's conjugate pairing relies on) by mirroring the upper
    // triangle.
    auto symmetrize = [nx](ComplexMatrix& m) {
        for (int i = 0; i < nx; ++i) {
            for (int j = i + 1; j < nx; ++j) m(j, i) = m(i, j);
        }
    };
    symmetrize(data.w_phiphi);
    symmetrize(data.w_pipi);
    symmetrize(data.w_phipi);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nx; ++j) data.w_piphi(i, j) = -data.w_phipi(i, j);
    }
    return data;
}

cplx one_particle_F(const WavepacketSpec& spec, const ModeBasis& basis, double x, double t) {
    check_in_box(x, basis.box_length);
    cplx sum{};
    for (int n = 1; n <= spec.n_modes; ++n) {
        const double k = basis.wavenumber(n);
        sum += spec.coefficients[n - 1] / std::sqrt(n * kPi) * std::sin(k * x) *
               std::exp(cplx(0.0, -k * t));
    }
    return sum;
}

cplx one_particle_F_smeared(const WavepacketSpec& spec, const ModeBasis& basis,
                            const SmearingParams& smearing, double x, double t) {
    check_in_box(x, basis.box_length);
    const double half = smearing.sigma_eff2() / 2.0;
    cplx sum{};
    for (int n = 1; n <= spec.n_modes; ++n) {
        const double k = basis.wavenumber(n);
        sum += spec.coefficients[n - 1] * std::exp(-k * k * half) / std::sqrt(n * kPi) *
               std::sin(k * x) * std::exp(cplx(0.0, -k * t));
    }
    return sum;
}

namespace {

/// F and dF/dt on the grid at t = 0, with per-argument smearing damping.
void wavepacket_amplitudes(const WavepacketSpec& spec, const ModeBasis& basis,
                           const SmearingParams& smearing, const SpatialGrid& grid,
                           std::vector<cplx>& f, std::vector<cplx>& fdot) {
    const int nx = grid.n_points;
    const double half = smearing.sigma_eff2() / 2.0;
    f.assign(nx, cplx{});
    fdot.assign(nx, cplx{});
    for (int n = 1; n <= spec.n_modes; ++n) {
        const double k = basis.wavenumber(n);
        const cplx amp = spec.coefficients[n - 1] * std::exp(-k * k * half) / std::sqrt(n * kPi);
        const cplx damp = cplx(0.0, -k) * amp;
        for (int i = 0; i < nx; ++i) {
            const double s = std::sin(k * grid.x(i));
            f[i] += amp * s;
            fdot[i] += damp * s;
        }
    }
    f[0] = f[nx - 1] = cplx{};
    fdot[0] = fdot[nx - 1] = cplx{};
}

void add_bilinear(ComplexMatrix& dest, const std::vector<cplx>& a, const std::vector<cplx>& b) {
    // dest += a*(x) b(x') + a(x) b*(x')  (real by construction)
    const int nx = dest.cols();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        const cplx ai = std::conj(a[i]);
        auto row = dest.row(i);
        for (int j = 0; j < nx; ++j) {
            row[j] += 2.0 * std::real(ai * b[j]);
        }
    }
}

InitialData h_part(const WavepacketSpec& spec, const ModeBasis& basis,
                   const SmearingParams& smearing, const SpatialGrid& grid) {
    const int nx = grid.n_points;
    std::vector<cplx> f, fdot;
    wavepacket_amplitudes(spec, basis, smearing, grid, f, fdot);
    InitialData h{ComplexMatrix(nx, nx), ComplexMatrix(nx, nx), ComplexMatrix(nx, nx),
                  ComplexMatrix(nx, nx)};
    add_bilinear(h.w_phiphi, f, f);
    add_bilinear(h.w_piphi, fdot, f);
    add_bilinear(h.w_phipi, f, fdot);
    add_bilinear(h.w_pipi, fdot, fdot);
    return h;
}

}  // namespace

InitialData one_particle_initial_data(const WavepacketSpec& spec, const ModeBasis& basis,
                                      const SmearingParams& smearing, const SpatialGrid& grid) {
    InitialData data = vacuum_initial_data(basis, smearing, grid);
    InitialData h = h_part(spec, basis, smearing, grid);
    const int nx = grid.n_points;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nx; ++j) {
            data.w_phiphi(i, j) += h.w_phiphi(i, j);
            data.w_piphi(i, j) += h.w_piphi(i, j);
            data.w_phipi(i, j) += h.w_phipi(i, j);
            data.w_pipi(i, j) += h.w_pipi(i, j);
        }
    }
    return data;
}

InitialData excitation_initial_data(const WavepacketSpec& spec, const ModeBasis& basis,
                                    const SmearingParams& smearing, const SpatialGrid& grid) {
    return h_part(spec, basis, smearing, grid);
}

cplx kg_inner_product(std::span<const cplx> f1, std::span<const cplx> df1_dt,
                      std::span<const cplx> f2, std::span<const cplx> df2_dt,
                      const SpatialGrid& grid) {
    const size_t n = f1.size();
    if (df1_dt.size() != n || f2.size() != n || df2_dt.size() != n ||
        n != static_cast<size_t>(grid.n_points)) {
        throw std::invalid_argument("kg_inner_product: length mismatch");
    }
    cplx acc{};
    for (size_t i = 0; i < n; ++i) {
        const cplx term = std::conj(f1[i]) * df2_dt[i] - f2[i] * std::conj(df1_dt[i]);
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * term;
    }
    return cplx(0.0, 1.0) * acc * grid.spacing;
}

VacuumReference::VacuumReference(ModeBasis basis, SmearingParams smearing, const SpatialGrid& grid)
    : basis_(basis), smearing_(smearing), xs_(grid.points()) {
    const double se2 = smearing_.sigma_eff2();
    amp_.resize(basis_.n_modes);
    wavenums_.resize(basis_.n_modes);
    for (int n = 1; n <= basis_.n_modes; ++n) {
        const double k = basis_.wavenumber(n);
        wavenums_[n - 1] = k;
        amp_[n - 1] = std::exp(-k * k * se2) / (n * kPi);
    }
    sines_.resize(basis_.n_modes, std::vector<double>(xs_.size()));
    for (int m = 0; m < basis_.n_modes; ++m) {
        for (size_t i = 0; i < xs_.size(); ++i) sines_[m][i] = std::sin(wavenums_[m] * xs_[i]);
        sines_[m][0] = 0.0;
        sines_[m][xs_.size() - 1] = 0.0;
    }
}

ComplexMatrix VacuumReference::slice(double lag) const {
    const int nx = static_cast<int>(xs_.size());
    ComplexMatrix out(nx, nx);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        auto row = out.row(i);
        for (size_t m = 0; m < amp_.size(); ++m) {
            const cplx c = amp_[m] * std::exp(cplx(0.0, -wavenums_[m] * lag)) * sines_[m][i];
            for (int j = 0; j < nx; ++j) row[j] += c * sines_[m][j];
        }
    }
    return out;
}

VacuumReference::Band VacuumReference::band(double lag) const {
    const int nx = static_cast<int>(xs_.size());
    Band b;
    b.diag.assign(nx, cplx{});
    b.sup.assign(nx - 1, cplx{});
    b.sub.assign(nx - 1, cplx{});
    for (size_t m = 0; m < amp_.size(); ++m) {
        const cplx c = amp_[m] * std::exp(cplx(0.0, -wavenums_[m] * lag));
        const auto& s = sines_[m];
        for (int i = 0; i < nx; ++i) b.diag[i] += c * s[i] * s[i];
        for (int i = 0; i < nx - 1; ++i) {
            const cplx v = c * s[i] * s[i + 1];
            b.sup[i] += v;
            b.sub[i] += v;
        }
    }
    return b;
}

}  // namespace w2pt
