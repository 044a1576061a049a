#include "w2pt/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "w2pt/errors.hpp"
#include "w2pt/kernels.hpp"

namespace w2pt {

namespace {

void check_square(const ComplexMatrix& m, int nx, const char* what) {
    if (m.rows() != nx || m.cols() != nx) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(nx) + "x" +
                                    std::to_string(nx) + " matrix");
    }
}

/// Duplicate a real coefficient vector into (re,im) lanes.
void duplicate_lanes(std::span<const double> a, std::vector<double>& out) {
    out.resize(2 * a.size());
    for (size_t j = 0; j < a.size(); ++j) {
        out[2 * j] = a[j];
        out[2 * j + 1] = a[j];
    }
}

/// out = a_j .* curr + cc*(curr shifted in j) + b*q, boundary columns pinned.
void apply_shifted(ComplexMatrix& out, const ComplexMatrix& curr, const ComplexMatrix& q,
                   const std::vector<double>& a_dup, double cc, double b) {
    const int nx = curr.cols();
    const auto& k = kernels::active();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        k.shifted_step(out.row_doubles(i), curr.row_doubles(i), q.row_doubles(i), a_dup.data(), cc,
                       b, nx);
    }
}

/// Same with a per-row uniform coefficient a[i] (paper-literal t' stencil).
void apply_shifted_rowwise(ComplexMatrix& out, const ComplexMatrix& curr, const ComplexMatrix& q,
                           std::span<const double> a_row, double cc, double b) {
    const int nx = curr.cols();
    const auto& k = kernels::active();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        k.shifted_step_uniform(out.row_doubles(i), curr.row_doubles(i), q.row_doubles(i), a_row[i],
                               cc, b, nx);
    }
}

/// out = a_i .* curr + cc*(rows above/below) + b*q, boundary rows zeroed.
void apply_rows(ComplexMatrix& out, const ComplexMatrix& curr, const ComplexMatrix& q,
                std::span<const double> a_row, double cc, double b) {
    const int nx = curr.cols();
    const auto& k = kernels::active();
    std::fill_n(out.row_doubles(0), 2 * nx, 0.0);
    std::fill_n(out.row_doubles(nx - 1), 2 * nx, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 1; i < nx - 1; ++i) {
        k.row_step(out.row_doubles(i), curr.row_doubles(i), q.row_doubles(i),
                   curr.row_doubles(i + 1), curr.row_doubles(i - 1), a_row[i], cc, b, nx);
    }
}

}  // namespace

void EvolutionConfig::validate() const {
    if (!initial) throw ConfigError("evolution config has no initial data");
    const int nx = spatial.n_points;
    check_square(initial->w_phiphi, nx, "w_phiphi");
    check_square(initial->w_piphi, nx, "w_piphi");
    check_square(initial->w_phipi, nx, "w_phipi");
    check_square(initial->w_pipi, nx, "w_pipi");
    const double bound = cfl_max_timestep(spatial.spacing, potential.max_value());
    if (time.dt > bound * (1.0 + 1e-12)) {
        throw CflError("dt = " + std::to_string(time.dt) + " exceeds the stability bound " +
                       std::to_string(bound));
    }
}

ComplexMatrix first_step_tprime(const ComplexMatrix& w00, const ComplexMatrix& w_phipi,
                                const EvolutionConfig& cfg) {
    const int nx = cfg.spatial.n_points;
    check_square(w00, nx, "w00");
    check_square(w_phipi, nx, "w_phipi");
    const double dt = cfg.time.dt;
    const double c2 = cfg.time.cfl_factor * cfg.time.cfl_factor;
    std::vector<double> v(nx);
    cfg.potential.sample(cfg.spatial, cfg.potential_time_offset, v);
    std::vector<double> a(nx), a_dup;
    for (int j = 0; j < nx; ++j) a[j] = 1.0 - c2 - dt * dt * v[j];
    duplicate_lanes(a, a_dup);
    ComplexMatrix out(nx, nx);
    apply_shifted(out, w00, w_phipi, a_dup, c2 / 2.0, dt);
    return out;
}

ComplexMatrix first_step_t(const ComplexMatrix& w00, const ComplexMatrix& w_piphi,
                           const EvolutionConfig& cfg) {
    const int nx = cfg.spatial.n_points;
    check_square(w00, nx, "w00");
    check_square(w_piphi, nx, "w_piphi");
    const double dt = cfg.time.dt;
    const double c2 = cfg.time.cfl_factor * cfg.time.cfl_factor;
    std::vector<double> v(nx);
    cfg.potential.sample(cfg.spatial, cfg.potential_time_offset, v);
    std::vector<double> a(nx);
    for (int i = 0; i < nx; ++i) a[i] = 1.0 - c2 - dt * dt * v[i];
    ComplexMatrix out(nx, nx);
    apply_rows(out, w00, w_piphi, a, c2 / 2.0, dt);
    return out;
}

ComplexMatrix corner_step(const ComplexMatrix& w00, const ComplexMatrix& w01,
                          const ComplexMatrix& w10, const ComplexMatrix& w_pipi, double dt) {
    if (!same_shape(w00, w01) || !same_shape(w00, w10) || !same_shape(w00, w_pipi)) {
        throw std::invalid_argument("corner_step: dimension mismatch");
    }
    const int nx = w00.cols();
    ComplexMatrix out(nx, nx);
    const auto& k = kernels::active();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        k.combine4(out.row_doubles(i), w_pipi.row_doubles(i), w01.row_doubles(i),
                   w10.row_doubles(i), w00.row_doubles(i), dt * dt, 1.0, 1.0, -1.0, 2 * nx);
    }
    return out;
}

namespace {

/// Core t-direction stencil on raw matrices.
void t_step_core(ComplexMatrix& out, const ComplexMatrix& prev, const ComplexMatrix& curr,
                 const EvolutionConfig& cfg, std::span<const double> v_row) {
    const int nx = cfg.spatial.n_points;
    const double dt = cfg.time.dt;
    const double c2 = cfg.time.cfl_factor * cfg.time.cfl_factor;
    std::vector<double> a(nx);
    for (int i = 0; i < nx; ++i) a[i] = 2.0 - 2.0 * c2 - 2.0 * dt * dt * v_row[i];
    apply_rows(out, curr, prev, a, c2, -1.0);
}

/// Core t'-direction stencil. By default the potential row holds
/// V(x'_j, t'_m); with paper_literal_vprime it holds V(x_i, t_n) and acts
/// per grid row.
void tprime_step_core(ComplexMatrix& out, const ComplexMatrix& prev, const ComplexMatrix& curr,
                      const EvolutionConfig& cfg, std::span<const double> v_row) {
    const int nx = cfg.spatial.n_points;
    const double dt = cfg.time.dt;
    const double c2 = cfg.time.cfl_factor * cfg.time.cfl_factor;
    std::vector<double> a(nx);
    for (int j = 0; j < nx; ++j) a[j] = 2.0 - 2.0 * c2 - 2.0 * dt * dt * v_row[j];
    if (cfg.paper_literal_vprime) {
        apply_shifted_rowwise(out, curr, prev, a, c2, -1.0);
    } else {
        std::vector<double> a_dup;
        duplicate_lanes(a, a_dup);
        apply_shifted(out, curr, prev, a_dup, c2, -1.0);
    }
}

}  // namespace

CorrelatorSlice step_t(const CorrelatorSlice& prev, const CorrelatorSlice& curr,
                       const EvolutionConfig& cfg, std::span<const double> v_row_at_tn) {
    if (prev.m != curr.m || prev.n + 1 != curr.n) {
        throw std::invalid_argument("step_t: slices not aligned as (n-1,m), (n,m)");
    }
    CorrelatorSlice next{curr.n + 1, curr.m, ComplexMatrix(curr.data.rows(), curr.data.cols())};
    t_step_core(next.data, prev.data, curr.data, cfg, v_row_at_tn);
    return next;
}

CorrelatorSlice step_tprime(const CorrelatorSlice& prev, const CorrelatorSlice& curr,
                            const EvolutionConfig& cfg, std::span<const double> v_row_at_tpm) {
    if (prev.n != curr.n || prev.m + 1 != curr.m) {
        throw std::invalid_argument("step_tprime: slices not aligned as (n,m-1), (n,m)");
    }
    CorrelatorSlice next{curr.n, curr.m + 1, ComplexMatrix(curr.data.rows(), curr.data.cols())};
    tprime_step_core(next.data, prev.data, curr.data, cfg, v_row_at_tpm);
    return next;
}

DiagonalMarcher::DiagonalMarcher(EvolutionConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const int nx = cfg_.spatial.n_points;
    b00_ = cfg_.initial->w_phiphi;
    b00_.zero_boundary();
    b01_ = first_step_tprime(b00_, cfg_.initial->w_phipi, cfg_);
    b10_ = first_step_t(b00_, cfg_.initial->w_piphi, cfg_);
    b11_ = corner_step(b00_, b01_, b10_, cfg_.initial->w_pipi, cfg_.time.dt);
    tmp_ = ComplexMatrix(nx, nx);
    tmp2_ = ComplexMatrix(nx, nx);
    v_scratch_.resize(nx);
    record_.n = 0;
    record_.dt = cfg_.time.dt;
    record_.dx = cfg_.spatial.spacing;
    refresh_record();
}

void DiagonalMarcher::refresh_record() {
    record_.t = record_.n * cfg_.time.dt;
    record_.w_nn = &b00_;
    record_.w_n_np1 = &b01_;
    record_.w_np1_n = &b10_;
    record_.w_np1_np1 = &b11_;
}

bool DiagonalMarcher::advance() {
    if (record_.n + 1 >= cfg_.time.n_steps) return false;
    const int n = record_.n;
    const double t_lev = (n + 1) * cfg_.time.dt + cfg_.potential_time_offset;
    cfg_.potential.sample(cfg_.spatial, t_lev, v_scratch_);

    // Four stencils per step, all with the potential at level n+1. Buffers
    // rotate; the old base becomes dead storage and is reused in place.
    tprime_step_core(tmp_, b00_, b01_, cfg_, v_scratch_);   // tmp  = (n,   n+2)
    tprime_step_core(tmp2_, b10_, b11_, cfg_, v_scratch_);  // tmp2 = (n+1, n+2)
    t_step_core(b00_, b01_, b11_, cfg_, v_scratch_);        // b00 <- (n+2, n+1)
    t_step_core(b10_, tmp_, tmp2_, cfg_, v_scratch_);       // b10 <- (n+2, n+2)

    ComplexMatrix c = std::move(b00_);
    ComplexMatrix d = std::move(b10_);
    b00_ = std::move(b11_);   // (n+1, n+1)
    std::swap(b01_, tmp2_);   // (n+1, n+2); tmp2_ keeps the dead storage
    b10_ = std::move(c);
    b11_ = std::move(d);
    record_.n = n + 1;
    refresh_record();
    return true;
}

void evolve_diagonal(const EvolutionConfig& cfg,
                     const std::function<void(const DiagonalRecord&)>& f) {
    DiagonalMarcher marcher(cfg);
    f(marcher.current());
    while (marcher.advance()) f(marcher.current());
}

Wightman4D evolve_full_twopass(const EvolutionConfig& cfg, size_t max_bytes) {
    cfg.validate();
    const int nx = cfg.spatial.n_points;
    const int levels = cfg.time.n_steps + 1;
    const size_t bytes = static_cast<size_t>(levels) * levels * nx * nx * sizeof(cplx);
    if (bytes > max_bytes) {
        throw MemoryBudgetError("two-pass storage needs " + std::to_string(bytes) +
                                " bytes, budget is " + std::to_string(max_bytes));
    }

    Wightman4D w;
    w.n_levels = levels;
    w.nx = nx;
    w.slices.assign(static_cast<size_t>(levels) * levels, ComplexMatrix());
    auto at = [&](int n, int m) -> ComplexMatrix& {
        return w.slices[static_cast<size_t>(n) * levels + m];
    };

    std::vector<double> v(nx);
    auto v_at = [&](double t) -> std::span<const double> {
        cfg.potential.sample(cfg.spatial, t + cfg.potential_time_offset, v);
        return v;
    };

    at(0, 0) = cfg.initial->w_phiphi;
    at(0, 0).zero_boundary();
    if (levels > 1) {
        at(0, 1) = first_step_tprime(at(0, 0), cfg.initial->w_phipi, cfg);
        at(1, 0) = first_step_t(at(0, 0), cfg.initial->w_piphi, cfg);
        at(1, 1) = corner_step(at(0, 0), at(0, 1), at(1, 0), cfg.initial->w_pipi, cfg.time.dt);
    }
    // First two t-rows along m.
    for (int n = 0; n <= std::min(1, levels - 1); ++n) {
        for (int m = 1; m + 1 < levels; ++m) {
            at(n, m + 1) = ComplexMatrix(nx, nx);
            tprime_step_core(at(n, m + 1), at(n, m - 1), at(n, m),
                             cfg, v_at(m * cfg.time.dt));
        }
    }
    // Sweep n for every m.
    for (int m = 0; m < levels; ++m) {
        for (int n = 1; n + 1 < levels; ++n) {
            at(n + 1, m) = ComplexMatrix(nx, nx);
            t_step_core(at(n + 1, m), at(n - 1, m), at(n, m), cfg, v_at(n * cfg.time.dt));
        }
    }
    return w;
}

ComplexMatrix evolve_fixed_tprime(const EvolutionConfig& cfg, int j_fixed, int m_fixed, int n_max) {
    cfg.validate();
    const int nx = cfg.spatial.n_points;
    if (j_fixed < 0 || j_fixed >= nx) throw std::invalid_argument("j_fixed outside the grid");
    if (m_fixed < 0 || m_fixed > cfg.time.n_steps) throw std::invalid_argument("m_fixed outside the time grid");

    std::vector<double> v(nx);
    auto v_at = [&](double t) -> std::span<const double> {
        cfg.potential.sample(cfg.spatial, t + cfg.potential_time_offset, v);
        return v;
    };

    // Sweep the n = 0 and n = 1 rows in t' up to m_fixed, full matrices.
    ComplexMatrix w00 = cfg.initial->w_phiphi;
    w00.zero_boundary();
    ComplexMatrix r0_prev = w00;
    ComplexMatrix r0_curr = first_step_tprime(w00, cfg.initial->w_phipi, cfg);
    ComplexMatrix r1_prev = first_step_t(w00, cfg.initial->w_piphi, cfg);
    ComplexMatrix r1_curr = corner_step(w00, r0_curr, r1_prev, cfg.initial->w_pipi, cfg.time.dt);
    // Now r0_* hold (0, m-1..m) and r1_* hold (1, m-1..m) at m = 1.
    ComplexMatrix nxt(nx, nx);
    for (int m = 1; m < m_fixed; ++m) {
        auto vr = v_at(m * cfg.time.dt);
        tprime_step_core(nxt, r0_prev, r0_curr, cfg, vr);
        std::swap(r0_prev, r0_curr);
        std::swap(r0_curr, nxt);
        tprime_step_core(nxt, r1_prev, r1_curr, cfg, vr);
        std::swap(r1_prev, r1_curr);
        std::swap(r1_curr, nxt);
    }
    const ComplexMatrix& row0 = (m_fixed == 0) ? r0_prev : r0_curr;
    const ComplexMatrix& row1 = (m_fixed == 0) ? r1_prev : r1_curr;

    ComplexMatrix out(n_max + 1, nx);
    std::vector<cplx> u_prev(nx), u_curr(nx), u_next(nx);
    for (int i = 0; i < nx; ++i) {
        u_prev[i] = row0(i, j_fixed);
        u_curr[i] = row1(i, j_fixed);
        out(0, i) = u_prev[i];
        if (n_max >= 1) out(1, i) = u_curr[i];
    }
    const double dt = cfg.time.dt;
    const double c2 = cfg.time.cfl_factor * cfg.time.cfl_factor;
    for (int n = 1; n < n_max; ++n) {
        auto vr = v_at(n * dt);
        u_next[0] = u_next[nx - 1] = cplx{};
        for (int i = 1; i < nx - 1; ++i) {
            const double a = 2.0 - 2.0 * c2 - 2.0 * dt * dt * vr[i];
            u_next[i] = a * u_curr[i] + c2 * (u_curr[i + 1] + u_curr[i - 1]) - u_prev[i];
        }
        for (int i = 0; i < nx; ++i) out(n + 1, i) = u_next[i];
        std::swap(u_prev, u_curr);
        std::swap(u_curr, u_next);
    }
    return out;
}

}  // namespace w2pt
