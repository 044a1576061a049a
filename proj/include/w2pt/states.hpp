#pragma once

#include <complex>
#include <span>
#include <vector>

#include "w2pt/lattice.hpp"
#include "w2pt/matrix.hpp"

namespace w2pt {

/// Gaussian smearing widths of the regularized correlator.
struct SmearingParams {
    double sigma_x = 0.0;
    double sigma_t = 0.0;

    void validate() const;
    /// Combined damping exponent scale: modes enter with exp(-k^2 sigma_eff2).
    double sigma_eff2() const { return sigma_x * sigma_x + sigma_t * sigma_t; }
};

/// Dirichlet-box sine modes k_n = n pi / L, n = 1..n_modes, massless
/// (omega_n = k_n).
struct ModeBasis {
    double box_length = 0.0;
    int n_modes = 0;

    double wavenumber(int n) const { return n * kPi / box_length; }
    double frequency(int n) const { return wavenumber(n); }

    /// Truncate where the smearing damping exp(-k^2 sigma_eff2) drops below
    /// `threshold`, capped at the grid Nyquist index (n_points - 1) so that
    /// sampled modes cannot alias.
    static ModeBasis truncated(double box_length, const SmearingParams& smearing, int nyquist_cap,
                               double threshold = 1e-14);

    static constexpr double kPi = 3.14159265358979323846;
};

/// One-particle wavepacket; coefficients c_n normalized to sum |c_n|^2 = 1.
struct WavepacketSpec {
    double width = 0.0;   // alpha
    double center = 0.0;  // x0
    int n_modes = 0;
    std::vector<cplx> coefficients;
};

WavepacketSpec wavepacket_coefficients(const ModeBasis& basis, double alpha, double x0, int n_modes);

/// Equal-time seed fields of the correlator and its first time derivatives.
struct InitialData {
    ComplexMatrix w_phiphi;
    ComplexMatrix w_piphi;  // d/dt  W at t = t' = 0
    ComplexMatrix w_phipi;  // d/dt' W at t = t' = 0
    ComplexMatrix w_pipi;   // d/dt d/dt' W at t = t' = 0
};

/// Regularized vacuum two-point function of the Dirichlet box,
/// (1/pi) sum_n (1/n) exp(-k^2 sigma_eff2) sin(k x) sin(k x') exp(-i k (t-t')).
cplx vacuum_wightman(const ModeBasis& basis, const SmearingParams& smearing, double x, double t,
                     double xp, double tp);

InitialData vacuum_initial_data(const ModeBasis& basis, const SmearingParams& smearing,
                                const SpatialGrid& grid);

/// Wavepacket amplitude F(x,t) = sum_n c_n / sqrt(n pi) sin(k_n x) e^{-i k_n t},
/// optionally carrying the per-argument smearing damping exp(-k^2 sigma_eff2 / 2).
cplx one_particle_F(const WavepacketSpec& spec, const ModeBasis& basis, double x, double t);
cplx one_particle_F_smeared(const WavepacketSpec& spec, const ModeBasis& basis,
                            const SmearingParams& smearing, double x, double t);

/// Full one-particle initial data: vacuum plus the state-dependent bilinear
/// h(x,x') = F*(x)F(x') + F(x)F*(x') and its time derivatives.
InitialData one_particle_initial_data(const WavepacketSpec& spec, const ModeBasis& basis,
                                      const SmearingParams& smearing, const SpatialGrid& grid);

/// State-dependent part alone (the one-particle data minus the vacuum).
/// Evolving it isolates the excitation from the vacuum background; by
/// linearity of the field equations this equals the difference of the two
/// full evolutions.
InitialData excitation_initial_data(const WavepacketSpec& spec, const ModeBasis& basis,
                                    const SmearingParams& smearing, const SpatialGrid& grid);

/// Klein-Gordon inner product i int dx (f1* d_t f2 - f2 d_t f1*) by the
/// trapezoid rule.
cplx kg_inner_product(std::span<const cplx> f1, std::span<const cplx> df1_dt,
                      std::span<const cplx> f2, std::span<const cplx> df2_dt,
                      const SpatialGrid& grid);

/// Stationary smeared box vacuum evaluated on the grid as a function of the
/// time lag t - t'; the renormalization reference.
class VacuumReference {
public:
    VacuumReference(ModeBasis basis, SmearingParams smearing, const SpatialGrid& grid);

    const ModeBasis& basis() const { return basis_; }
    const SmearingParams& smearing() const { return smearing_; }

    /// Full Nx x Nx slice W_0(x_i, x_j; lag).
    ComplexMatrix slice(double lag) const;

    struct Band {
        std::vector<cplx> diag;  // (i, i)
        std::vector<cplx> sup;   // (i, i+1), length Nx-1
        std::vector<cplx> sub;   // (i+1, i), length Nx-1
    };
    Band band(double lag) const;

private:
    ModeBasis basis_;
    SmearingParams smearing_;
    std::vector<double> xs_;
    std::vector<double> amp_;        // E_n / (n pi)
    std::vector<double> wavenums_;   // k_n
    std::vector<std::vector<double>> sines_;  // sines_[n-1][i] = sin(k_n x_i)
};

}  // namespace w2pt
