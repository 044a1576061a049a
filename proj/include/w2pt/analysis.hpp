#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "w2pt/evolution.hpp"

namespace w2pt {

struct FixedPoint {
    double x_prime = 0.0;
    double t_prime = 0.0;
};

/// Coarse/medium/fine refinement family: dx and dt divided by h and h^2 at
/// fixed CFL factor, grids nested, identical continuum problem. Initial data
/// is re-sampled per grid by the builder (the mode basis inside it must be
/// fixed once so all three runs share the same continuum state).
struct RefinementSpec {
    SpatialGrid coarse_grid;
    double cfl_factor = 0.2;
    double t_max = 2.0;
    Potential potential;
    int h = 2;
    std::function<std::shared_ptr<const InitialData>(const SpatialGrid&)> initial_builder;
    bool degrade_first_order = false;  // sample V at t + dt; test hook

    void validate() const;
};

/// The three solutions W(x_i, t_n; x', t') restricted to the coarse grid:
/// rows are coarse time levels, columns coarse spatial points.
struct TripleSolutions {
    ComplexMatrix coarse, medium, fine;
    SpatialGrid grid;
    double dt_coarse = 0.0;
    FixedPoint fixed;
};

TripleSolutions run_triple(const RefinementSpec& spec, const FixedPoint& fixed);

struct ConvergenceCurves {
    std::vector<double> abscissa;
    std::vector<double> diff_cm_re, diff_cm_im;
    std::vector<double> diff_mf_scaled_re, diff_mf_scaled_im;
    double p = 2.0;
};

/// (W_c - W_m) and h^p (W_m - W_f) over x at fixed (t, x', t').
ConvergenceCurves spatial_convergence_curves(const TripleSolutions& sols, double t, double p,
                                             int h = 2);

/// p(t_n) = log2(||W_c - W_m|| / ||W_m - W_f||), L2 over the spatial vector,
/// for coarse steps beyond the two bootstrap levels. Requires h = 2.
/// Throws std::domain_error when the denominator vanishes.
std::vector<std::pair<double, double>> temporal_convergence_order(const TripleSolutions& sols);

}  // namespace w2pt
