#include "w2pt/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "w2pt/errors.hpp"

namespace w2pt {

void RefinementSpec::validate() const {
    if (h < 2) throw ConfigError("refinement factor h must be an integer >= 2");
    if (!initial_builder) throw ConfigError("refinement spec needs an initial data builder");
    if (!(t_max > 0.0)) throw ConfigError("refinement t_max must be positive");
}

TripleSolutions run_triple(const RefinementSpec& spec, const FixedPoint& fixed) {
    spec.validate();
    TripleSolutions out;
    out.grid = spec.coarse_grid;
    out.fixed = fixed;

    const double dt_c = spec.cfl_factor * spec.coarse_grid.spacing;
    out.dt_coarse = dt_c;
    const int n_coarse = static_cast<int>(std::llround(spec.t_max / dt_c));

    ComplexMatrix* dest[3] = {&out.coarse, &out.medium, &out.fine};
    for (int lev = 0; lev < 3; ++lev) {
        int stride = 1;
        for (int s = 0; s < lev; ++s) stride *= spec.h;
        const SpatialGrid grid =
            SpatialGrid::make(spec.coarse_grid.length, (spec.coarse_grid.n_points - 1) * stride + 1);

        EvolutionConfig cfg;
        cfg.spatial = grid;
        cfg.time = TimeGrid::with_cfl(grid, spec.t_max + 2.0 * dt_c, spec.cfl_factor);
        cfg.potential = spec.potential;
        cfg.initial = spec.initial_builder(grid);
        if (spec.degrade_first_order) cfg.potential_time_offset = cfg.time.dt;

        const int j_fixed = grid.index_of(fixed.x_prime);
        const double m_exact = fixed.t_prime / cfg.time.dt;
        const int m_fixed = static_cast<int>(std::llround(m_exact));
        if (std::abs(m_exact - m_fixed) > 1e-9) {
            throw ConfigError("t_prime is not representable on the refined time grid");
        }
        const ComplexMatrix full = evolve_fixed_tprime(cfg, j_fixed, m_fixed, n_coarse * stride);

        ComplexMatrix& r = *dest[lev];
        r = ComplexMatrix(n_coarse + 1, spec.coarse_grid.n_points);
        for (int n = 0; n <= n_coarse; ++n) {
            for (int i = 0; i < spec.coarse_grid.n_points; ++i) {
                r(n, i) = full(n * stride, i * stride);
            }
        }
    }
    return out;
}

ConvergenceCurves spatial_convergence_curves(const TripleSolutions& sols, double t, double p,
                                             int h) {
    const int n = static_cast<int>(std::llround(t / sols.dt_coarse));
    if (n < 0 || n >= sols.coarse.rows()) throw ConfigError("t outside the evolved range");
    ConvergenceCurves curves;
    curves.p = p;
    const double scale = std::pow(static_cast<double>(h), p);
    for (int i = 0; i < sols.grid.n_points; ++i) {
        const cplx cm = sols.coarse(n, i) - sols.medium(n, i);
        const cplx mf = sols.medium(n, i) - sols.fine(n, i);
        curves.abscissa.push_back(sols.grid.x(i));
        curves.diff_cm_re.push_back(cm.real());
        curves.diff_cm_im.push_back(cm.imag());
        curves.diff_mf_scaled_re.push_back(scale * mf.real());
        curves.diff_mf_scaled_im.push_back(scale * mf.imag());
    }
    return curves;
}

std::vector<std::pair<double, double>> temporal_convergence_order(const TripleSolutions& sols) {
    std::vector<std::pair<double, double>> series;
    const int nx = sols.grid.n_points;
    for (int n = 2; n < sols.coarse.rows(); ++n) {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < nx; ++i) {
            num += std::norm(sols.coarse(n, i) - sols.medium(n, i));
            den += std::norm(sols.medium(n, i) - sols.fine(n, i));
        }
        if (den == 0.0) {
            throw std::domain_error("convergence order undefined: refined solutions coincide");
        }
        series.emplace_back(n * sols.dt_coarse, 0.5 * std::log2(num / den));
    }
    return series;
}

}  // namespace w2pt
