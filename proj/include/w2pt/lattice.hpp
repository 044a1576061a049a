#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace w2pt {

/// Uniform spatial grid on [0, length], boundary points included.
struct SpatialGrid {
    double length = 0.0;
    int n_points = 0;
    double spacing = 0.0;

    static SpatialGrid make(double length, int n_points);

    double x(int i) const { return spacing * i; }
    std::vector<double> points() const;

    /// Index of a grid-aligned coordinate; throws if x does not lie on the
    /// grid to within tol*spacing.
    int index_of(double x, double tol = 1e-9) const;
};

/// Uniform time levels t_n = n*dt, n = 0..n_steps.
struct TimeGrid {
    double t_max = 0.0;
    int n_steps = 0;
    double dt = 0.0;
    double cfl_factor = 0.0;

    /// dt = cfl_factor * spacing; n_steps = ceil(t_max/dt).
    static TimeGrid with_cfl(const SpatialGrid& grid, double t_max, double cfl_factor);
};

struct StabilityReport {
    std::vector<double> theta_samples;
    double max_amplification = 0.0;
    bool stable = false;
};

/// Largest stable time step for the explicit scheme:
/// dt^2 <= 2 dx^2 / (2 + v_max dx^2), returned with equality.
double cfl_max_timestep(double dx, double v_max);

/// Both roots of lambda^2 - M lambda + 1 = 0 with
/// M = 2 + 2 C^2 cos(theta) - 2 C^2 - 2 dt^2 v, C = dt/dx.
std::pair<std::complex<double>, std::complex<double>> amplification_factors(double theta, double dt,
                                                                            double dx, double v);

/// Sample theta uniformly on [0, pi] and report the worst amplification.
StabilityReport stability_scan(const SpatialGrid& spatial, const TimeGrid& time, double v_max,
                               int n_theta = 1024);

}  // namespace w2pt
