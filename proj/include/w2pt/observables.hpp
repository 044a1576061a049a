#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "w2pt/evolution.hpp"
#include "w2pt/lattice.hpp"
#include "w2pt/states.hpp"

namespace w2pt {

/// Trapezoid rule, (dx/2)(f_0 + f_N) + dx * interior sum.
double trapz_1d(std::span<const double> values, double dx);

/// Iterated trapezoid on a row-major rows x cols table: corners 1/4, edges
/// 1/2, interior 1, times dx^2.
double trapz_2d(std::span<const double> values, int rows, int cols, double dx);

struct RegionSpec {
    double x_left = 0.0;
    double x_right = 0.0;

    double length() const { return x_right - x_left; }
    void validate(double box_length) const;
};

struct EnergyRecord {
    double t = 0.0;
    double interior = 0.0;
    double exterior = 0.0;
    double total = 0.0;
};

/// Sine profile of cavity mode n on the region, zero outside:
/// f(x) = sqrt(2/l) sin(n pi (x - x_left)/l). Used for both the amplitude
/// and momentum quadratures.
struct ModeProfile {
    int mode_number = 0;
    RegionSpec region;
    std::vector<double> values;

    static ModeProfile sine(int mode_number, const RegionSpec& region, const SpatialGrid& grid);
};

struct CovarianceMatrix {
    double qq = 0.0;  // 2 <Q^2>
    double qp = 0.0;  // 2 Re<QP>
    double pp = 0.0;  // 2 <P^2>
};

struct QuadratureMoments {
    double q2 = 0.0;
    double qp_re = 0.0;
    double p2 = 0.0;

    CovarianceMatrix covariance() const { return {2.0 * q2, 2.0 * qp_re, 2.0 * p2}; }
};

struct PurityStats {
    double mean_nu = 0.0;
    double std_nu = 0.0;
    double p0 = 0.0;
    double window = 0.0;
};

/// The four slices of a record with the stationary smeared vacuum
/// subtracted at the matching time lags.
struct RenormalizedRecord {
    int n = 0;
    double t = 0.0;
    double dt = 0.0;
    double dx = 0.0;
    ComplexMatrix r_nn, r_n_np1, r_np1_n, r_np1_np1;
};

RenormalizedRecord renormalize(const DiagonalRecord& record, const VacuumReference& reference);

/// Point-split energy density on the diagonal,
/// T00_i = 1/2 [ DtDt' + DxDx' + 2 V_i ] W_R at i = j, n = m, with forward
/// first differences (backward in x at the last grid point). The imaginary
/// part must vanish up to rounding; the assertion threshold scales with the
/// magnitudes entering the differences, since the 1/dt^2 amplifies
/// round-off far above any fixed absolute cutoff.
std::vector<double> energy_density(const RenormalizedRecord& renorm, std::span<const double> v_row);

/// Precomputed reference bands at the three lags a record needs; the
/// reference is stationary, so one set serves a whole run.
struct VacuumBands {
    VacuumReference::Band lag0, lag_minus, lag_plus;
};

VacuumBands make_vacuum_bands(const VacuumReference& reference, double dt);

/// Same quantity computed directly from a live record with band-limited
/// vacuum subtraction (or none when `bands` is null); bit-identical to
/// renormalize + energy_density.
std::vector<double> energy_density_banded(const DiagonalRecord& record, const VacuumBands* bands,
                                          std::span<const double> v_row);

/// Trapezoid integral of t00 over the region, linearly interpolating at
/// non-grid-aligned edges.
double region_energy(std::span<const double> t00, const RegionSpec& region, const SpatialGrid& grid);

/// Q = E_in(t0) / max(E_in(t0) - E_in(t0 + l), floor), one cycle = one
/// light-crossing of the region; +infinity when nothing is lost.
double quality_factor(std::span<const EnergyRecord> series, const RegionSpec& region);

/// Second moments of the mode quadratures from the record's forward
/// differences; uses the full (unrenormalized) correlator.
QuadratureMoments quadrature_moments(const DiagonalRecord& record, const ModeProfile& profile,
                                     const SpatialGrid& grid);

/// nu = sqrt(det sigma) = sqrt(qq*pp - qp^2).
double symplectic_eigenvalue(const CovarianceMatrix& cov);

/// P0 = 2/(nu + 1), nu clamped up to 1 from below.
double ground_state_probability(double nu);

/// Time averages of nu over [t_start, t_start + window] by the trapezoid
/// rule in t; series entries are (t, nu).
PurityStats purity_stats(std::span<const std::pair<double, double>> nu_series, double window,
                         double t_start);

/// Dominant oscillation period of a uniformly sampled series, from the
/// detrended autocorrelation maximized over [min_period, max_period], with
/// parabolic refinement.
double dominant_period(std::span<const double> values, double dt_sample, double min_period,
                       double max_period);

}  // namespace w2pt
