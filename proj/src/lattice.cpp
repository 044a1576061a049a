#include "w2pt/lattice.hpp"

#include <cmath>
#include <string>

#include "w2pt/errors.hpp"

namespace w2pt {

SpatialGrid SpatialGrid::make(double length, int n_points) {
    if (!(length > 0.0)) throw ConfigError("grid length must be positive");
    if (n_points < 4) throw ConfigError("grid needs at least 4 points");
    SpatialGrid g;
    g.length = length;
    g.n_points = n_points;
    g.spacing = length / (n_points - 1);
    return g;
}

std::vector<double> SpatialGrid::points() const {
    std::vector<double> xs(n_points);
    for (int i = 0; i < n_points; ++i) xs[i] = x(i);
    return xs;
}

int SpatialGrid::index_of(double xq, double tol) const {
    const double fi = xq / spacing;
    const int i = static_cast<int>(std::lround(fi));
    if (i < 0 || i >= n_points || std::abs(fi - i) > tol) {
        throw ConfigError("coordinate " + std::to_string(xq) + " is not a grid point");
    }
    return i;
}

TimeGrid TimeGrid::with_cfl(const SpatialGrid& grid, double t_max, double cfl_factor) {
    if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
    if (!(cfl_factor > 0.0)) throw ConfigError("cfl_factor must be positive");
    TimeGrid t;
    t.cfl_factor = cfl_factor;
    t.dt = cfl_factor * grid.spacing;
    t.n_steps = static_cast<int>(std::ceil(t_max / t.dt - 1e-9));
    t.t_max = t.n_steps * t.dt;
    return t;
}

double cfl_max_timestep(double dx, double v_max) {
    if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
    if (v_max < 0.0) throw std::invalid_argument("v_max must be nonnegative");
    return std::sqrt(2.0 * dx * dx / (2.0 + v_max * dx * dx));
}

std::pair<std::complex<double>, std::complex<double>> amplification_factors(double theta, double dt,
                                                                            double dx, double v) {
    if (!(dx > 0.0) || !(dt > 0.0)) throw std::invalid_argument("dt and dx must be positive");
    if (v < 0.0) throw std::invalid_argument("v must be nonnegative");
    const double c2 = (dt / dx) * (dt / dx);
    const double m = 2.0 + 2.0 * c2 * std::cos(theta) - 2.0 * c2 - 2.0 * dt * dt * v;
    const double disc = m * m - 4.0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return {std::complex<double>((m + s) / 2.0, 0.0), std::complex<double>((m - s) / 2.0, 0.0)};
    }
    const double s = std::sqrt(-disc);
    return {std::complex<double>(m / 2.0, s / 2.0), std::complex<double>(m / 2.0, -s / 2.0)};
}

StabilityReport stability_scan(const SpatialGrid& spatial, const TimeGrid& time, double v_max,
                               int n_theta) {
    if (n_theta < 16) throw std::invalid_argument("n_theta must be at least 16");
    StabilityReport report;
    report.theta_samples.resize(n_theta);
    const double pi = std::acos(-1.0);
    const double c2 = time.cfl_factor * time.cfl_factor;
    double worst = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = pi * i / (n_theta - 1);
        report.theta_samples[i] = theta;
        // Judge stability on M in [-2, 2] rather than |lambda| <= 1: the two
        // are equivalent, but at the boundary round-off in M inflates
        // |lambda| by O(sqrt(eps)).
        const double m =
            2.0 + 2.0 * c2 * std::cos(theta) - 2.0 * c2 - 2.0 * time.dt * time.dt * v_max;
        double amp = 1.0;
        if (std::abs(m) > 2.0 * (1.0 + 1e-12)) {
            amp = std::abs(m) / 2.0 + std::sqrt(m * m - 4.0) / 2.0;
        }
        worst = std::max(worst, amp);
    }
    report.max_amplification = worst;
    report.stable = worst <= 1.0 + 1e-12;
    return report;
}

}  // namespace w2pt
