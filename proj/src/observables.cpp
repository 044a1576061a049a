#include "w2pt/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "w2pt/errors.hpp"
#include "w2pt/kernels.hpp"

namespace w2pt {

double trapz_1d(std::span<const double> values, double dx) {
    if (values.size() < 2) throw std::invalid_argument("trapz_1d needs at least 2 samples");
    double acc = 0.5 * (values.front() + values.back());
    for (size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
    return acc * dx;
}

double trapz_2d(std::span<const double> values, int rows, int cols, double dx) {
    if (rows < 2 || cols < 2) throw std::invalid_argument("trapz_2d needs at least 2x2 samples");
    if (values.size() != static_cast<size_t>(rows) * cols) {
        throw std::invalid_argument("trapz_2d: size mismatch");
    }
    double acc = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double wi = (i == 0 || i == rows - 1) ? 0.5 : 1.0;
        double rowacc = 0.0;
        for (int j = 0; j < cols; ++j) {
            const double wj = (j == 0 || j == cols - 1) ? 0.5 : 1.0;
            rowacc += wj * values[static_cast<size_t>(i) * cols + j];
        }
        acc += wi * rowacc;
    }
    return acc * dx * dx;
}

void RegionSpec::validate(double box_length) const {
    if (!(0.0 <= x_left) || !(x_left < x_right) || !(x_right <= box_length)) {
        throw ConfigError("region must satisfy 0 <= x_left < x_right <= L");
    }
}

ModeProfile ModeProfile::sine(int mode_number, const RegionSpec& region, const SpatialGrid& grid) {
    if (mode_number < 1) throw std::invalid_argument("mode_number must be at least 1");
    region.validate(grid.length);
    ModeProfile p;
    p.mode_number = mode_number;
    p.region = region;
    p.values.assign(grid.n_points, 0.0);
    const double l = region.length();
    const double amp = std::sqrt(2.0 / l);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        if (x >= region.x_left && x <= region.x_right) {
            p.values[i] = amp * std::sin(mode_number * ModeBasis::kPi * (x - region.x_left) / l);
        }
    }
    return p;
}

RenormalizedRecord renormalize(const DiagonalRecord& record, const VacuumReference& reference) {
    const ComplexMatrix ref0 = reference.slice(0.0);
    const ComplexMatrix refm = reference.slice(-record.dt);
    const ComplexMatrix refp = reference.slice(+record.dt);
    if (!same_shape(ref0, *record.w_nn)) {
        throw std::invalid_argument("renormalize: reference grid does not match the record");
    }
    RenormalizedRecord out;
    out.n = record.n;
    out.t = record.t;
    out.dt = record.dt;
    out.dx = record.dx;
    const int nx = record.w_nn->rows();
    auto subtract = [nx](const ComplexMatrix& w, const ComplexMatrix& ref) {
        ComplexMatrix r(nx, nx);
        for (int i = 0; i < nx; ++i) {
            auto rw = w.row(i);
            auto rr = ref.row(i);
            auto ro = r.row(i);
            for (int j = 0; j < nx; ++j) ro[j] = rw[j] - rr[j];
        }
        return r;
    };
    out.r_nn = subtract(*record.w_nn, ref0);
    out.r_n_np1 = subtract(*record.w_n_np1, refm);
    out.r_np1_n = subtract(*record.w_np1_n, refp);
    out.r_np1_np1 = subtract(*record.w_np1_np1, ref0);
    return out;
}

namespace {

/// Shared core: diagonals and first off-diagonals of the renormalized
/// slices in, T00 out.
std::vector<double> t00_from_bands(std::span<const cplx> d00, std::span<const cplx> sup00,
                                   std::span<const cplx> sub00, std::span<const cplx> d01,
                                   std::span<const cplx> d10, std::span<const cplx> d11,
                                   std::span<const double> v_row, double dt, double dx) {
    const int nx = static_cast<int>(d00.size());
    std::vector<double> t00(nx);
    const double inv_dt2 = 1.0 / (dt * dt);
    const double inv_dx2 = 1.0 / (dx * dx);
    for (int i = 0; i < nx; ++i) {
        const cplx dtt = (d11[i] - d01[i] - d10[i] + d00[i]) * inv_dt2;
        cplx dxx;
        if (i < nx - 1) {
            dxx = (d00[i + 1] - sup00[i] - sub00[i] + d00[i]) * inv_dx2;
        } else {
            dxx = (d00[i] - sup00[i - 1] - sub00[i - 1] + d00[i - 1]) * inv_dx2;
        }
        const cplx val = 0.5 * (dtt + dxx + 2.0 * v_row[i] * d00[i]);
        const double scale =
            (std::abs(d11[i]) + std::abs(d01[i]) + std::abs(d10[i]) + std::abs(d00[i])) * inv_dt2;
        if (std::abs(val.imag()) > 1e-9 * std::max(1.0, scale)) {
            throw ConsistencyError("energy density imaginary residue " +
                                   std::to_string(val.imag()) + " at grid point " +
                                   std::to_string(i));
        }
        t00[i] = val.real();
    }
    return t00;
}

}  // namespace

std::vector<double> energy_density(const RenormalizedRecord& renorm, std::span<const double> v_row) {
    const int nx = renorm.r_nn.rows();
    if (static_cast<int>(v_row.size()) != nx) {
        throw std::invalid_argument("energy_density: potential row size mismatch");
    }
    std::vector<cplx> d00(nx), sup(nx - 1), sub(nx - 1), d01(nx), d10(nx), d11(nx);
    for (int i = 0; i < nx; ++i) {
        d00[i] = renorm.r_nn(i, i);
        d01[i] = renorm.r_n_np1(i, i);
        d10[i] = renorm.r_np1_n(i, i);
        d11[i] = renorm.r_np1_np1(i, i);
        if (i < nx - 1) {
            sup[i] = renorm.r_nn(i, i + 1);
            sub[i] = renorm.r_nn(i + 1, i);
        }
    }
    return t00_from_bands(d00, sup, sub, d01, d10, d11, v_row, renorm.dt, renorm.dx);
}

VacuumBands make_vacuum_bands(const VacuumReference& reference, double dt) {
    return {reference.band(0.0), reference.band(-dt), reference.band(+dt)};
}

std::vector<double> energy_density_banded(const DiagonalRecord& record, const VacuumBands* bands,
                                          std::span<const double> v_row) {
    const int nx = record.w_nn->rows();
    if (static_cast<int>(v_row.size()) != nx) {
        throw std::invalid_argument("energy_density_banded: potential row size mismatch");
    }
    std::vector<cplx> d00(nx), sup(nx - 1), sub(nx - 1), d01(nx), d10(nx), d11(nx);
    for (int i = 0; i < nx; ++i) {
        d00[i] = (*record.w_nn)(i, i);
        d01[i] = (*record.w_n_np1)(i, i);
        d10[i] = (*record.w_np1_n)(i, i);
        d11[i] = (*record.w_np1_np1)(i, i);
        if (i < nx - 1) {
            sup[i] = (*record.w_nn)(i, i + 1);
            sub[i] = (*record.w_nn)(i + 1, i);
        }
    }
    if (bands != nullptr) {
        for (int i = 0; i < nx; ++i) {
            d00[i] -= bands->lag0.diag[i];
            d01[i] -= bands->lag_minus.diag[i];
            d10[i] -= bands->lag_plus.diag[i];
            d11[i] -= bands->lag0.diag[i];
            if (i < nx - 1) {
                sup[i] -= bands->lag0.sup[i];
                sub[i] -= bands->lag0.sub[i];
            }
        }
    }
    return t00_from_bands(d00, sup, sub, d01, d10, d11, v_row, record.dt, record.dx);
}

double region_energy(std::span<const double> t00, const RegionSpec& region, const SpatialGrid& grid) {
    region.validate(grid.length);
    const double dx = grid.spacing;
    auto value_at = [&](double x) {
        const int i = std::min(static_cast<int>(x / dx), grid.n_points - 2);
        const double w = (x - grid.x(i)) / dx;
        return (1.0 - w) * t00[i] + w * t00[i + 1];
    };
    const int il = static_cast<int>(std::ceil(region.x_left / dx - 1e-12));
    const int ir = static_cast<int>(std::floor(region.x_right / dx + 1e-12));
    double acc = 0.0;
    if (il <= ir) {
        // interior trapezoid over aligned points
        for (int i = il; i < ir; ++i) acc += 0.5 * (t00[i] + t00[i + 1]) * dx;
        const double wl = grid.x(il) - region.x_left;
        if (wl > 1e-12 * dx) acc += 0.5 * (value_at(region.x_left) + t00[il]) * wl;
        const double wr = region.x_right - grid.x(ir);
        if (wr > 1e-12 * dx) acc += 0.5 * (t00[ir] + value_at(region.x_right)) * wr;
    } else {
        // region inside one cell
        acc = 0.5 * (value_at(region.x_left) + value_at(region.x_right)) * region.length();
    }
    return acc;
}

double quality_factor(std::span<const EnergyRecord> series, const RegionSpec& region) {
    const double cycle = region.length();
    if (series.size() < 2 || series.back().t - series.front().t < cycle) {
        throw std::invalid_argument("energy series must span one light-crossing time");
    }
    const double t0 = series.front().t;
    const double e0 = series.front().interior;
    const double target = t0 + cycle;
    double e_l = series.back().interior;
    for (size_t i = 1; i < series.size(); ++i) {
        if (series[i].t >= target) {
            const auto& a = series[i - 1];
            const auto& b = series[i];
            const double w = (target - a.t) / (b.t - a.t);
            e_l = (1.0 - w) * a.interior + w * b.interior;
            break;
        }
    }
    const double loss = e0 - e_l;
    if (loss <= 0.0) return std::numeric_limits<double>::infinity();
    return e0 / std::max(loss, 1e-15 * std::abs(e0));
}

namespace {

/// u^T W u with u real; lane-split accumulation through the kernels.
cplx bilinear(const ComplexMatrix& w, std::span<const double> u, std::span<const double> u_dup) {
    const auto& k = kernels::active();
    const int nx = w.rows();
    double acc_re = 0.0, acc_im = 0.0;
    for (int i = 0; i < nx; ++i) {
        if (u[i] == 0.0) continue;
        double re, im;
        k.cdot_real(w.row_doubles(i), u_dup.data(), nx, &re, &im);
        acc_re += u[i] * re;
        acc_im += u[i] * im;
    }
    return {acc_re, acc_im};
}

}  // namespace

QuadratureMoments quadrature_moments(const DiagonalRecord& record, const ModeProfile& profile,
                                     const SpatialGrid& grid) {
    const int nx = grid.n_points;
    if (static_cast<int>(profile.values.size()) != nx) {
        throw std::invalid_argument("quadrature_moments: profile not sampled on this grid");
    }
    // Quadrature weights folded into the profile: u_i = tau_i f_i dx.
    std::vector<double> u(nx), u_dup(2 * nx);
    for (int i = 0; i < nx; ++i) {
        const double tau = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
        u[i] = tau * profile.values[i] * grid.spacing;
        u_dup[2 * i] = u[i];
        u_dup[2 * i + 1] = u[i];
    }
    const cplx s00 = bilinear(*record.w_nn, u, u_dup);
    const cplx s01 = bilinear(*record.w_n_np1, u, u_dup);
    const cplx s10 = bilinear(*record.w_np1_n, u, u_dup);
    const cplx s11 = bilinear(*record.w_np1_np1, u, u_dup);
    const double dt = record.dt;

    const cplx q2 = s00;
    const cplx qp = (s01 - s00) / dt;
    const cplx p2 = (s11 - s01 - s10 + s00) / (dt * dt);

    const double p2_scale =
        (std::abs(s11) + std::abs(s01) + std::abs(s10) + std::abs(s00)) / (dt * dt);
    if (std::abs(q2.imag()) > 1e-9 * std::max(1.0, std::abs(s00)) ||
        std::abs(p2.imag()) > 1e-9 * std::max(1.0, p2_scale)) {
        throw ConsistencyError("quadrature moments carry an imaginary residue above threshold");
    }
    return {q2.real(), qp.real(), p2.real()};
}

double symplectic_eigenvalue(const CovarianceMatrix& cov) {
    const double disc = cov.qq * cov.pp - cov.qp * cov.qp;
    const double scale = std::abs(cov.qq * cov.pp) + cov.qp * cov.qp;
    if (disc < -1e-12 * std::max(1.0, scale)) {
        throw ConsistencyError("covariance discriminant is negative: " + std::to_string(disc));
    }
    return std::sqrt(std::max(disc, 0.0));
}

double ground_state_probability(double nu) {
    if (nu < 1.0 - 5e-3) {
        throw std::invalid_argument("nu = " + std::to_string(nu) + " is below the uncertainty bound");
    }
    return 2.0 / (std::max(nu, 1.0) + 1.0);
}

PurityStats purity_stats(std::span<const std::pair<double, double>> nu_series, double window,
                         double t_start) {
    std::vector<double> ts, vs;
    for (const auto& [t, v] : nu_series) {
        if (t >= t_start - 1e-12 && t <= t_start + window + 1e-12) {
            ts.push_back(t);
            vs.push_back(v);
        }
    }
    if (ts.size() < 3 || ts.back() - ts.front() < 0.9 * window) {
        throw std::invalid_argument("nu series does not span the averaging window");
    }
    // Trapezoid time averages (series is uniformly sampled by construction).
    double span = ts.back() - ts.front();
    double m1 = 0.0, m2 = 0.0;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        const double h = ts[i + 1] - ts[i];
        m1 += 0.5 * h * (vs[i] + vs[i + 1]);
        m2 += 0.5 * h * (vs[i] * vs[i] + vs[i + 1] * vs[i + 1]);
    }
    m1 /= span;
    m2 /= span;
    PurityStats stats;
    stats.mean_nu = m1;
    stats.std_nu = std::sqrt(std::max(0.0, m2 - m1 * m1));
    stats.p0 = ground_state_probability(m1);
    stats.window = window;
    return stats;
}

double dominant_period(std::span<const double> values, double dt_sample, double min_period,
                       double max_period) {
    const int n = static_cast<int>(values.size());
    const int lag_lo = std::max(1, static_cast<int>(min_period / dt_sample));
    const int lag_hi = std::min(n - 2, static_cast<int>(max_period / dt_sample));
    if (lag_hi <= lag_lo) throw std::invalid_argument("dominant_period: window too short");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    auto corr = [&](int lag) {
        double acc = 0.0;
        for (int i = 0; i + lag < n; ++i) acc += (values[i] - mean) * (values[i + lag] - mean);
        return acc / (n - lag);
    };
    int best = lag_lo;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<double> cache(lag_hi + 1, 0.0);
    for (int lag = lag_lo; lag <= lag_hi; ++lag) {
        cache[lag] = corr(lag);
        if (cache[lag] > best_val) {
            best_val = cache[lag];
            best = lag;
        }
    }
    double refined = best;
    if (best > lag_lo && best < lag_hi) {
        const double ym = cache[best - 1], y0 = cache[best], yp = cache[best + 1];
        const double den = ym - 2.0 * y0 + yp;
        if (den != 0.0) refined += 0.5 * (ym - yp) / den;
    }
    return refined * dt_sample;
}

}  // namespace w2pt
