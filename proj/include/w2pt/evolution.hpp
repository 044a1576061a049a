#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "w2pt/lattice.hpp"
#include "w2pt/matrix.hpp"
#include "w2pt/potential.hpp"
#include "w2pt/states.hpp"

namespace w2pt {

/// One two-point-function slice at fixed time levels (n, m):
/// data(i, j) = W(x_i, t_n; x_j, t'_m).
struct CorrelatorSlice {
    int n = 0;
    int m = 0;
    ComplexMatrix data;
};

struct EvolutionConfig {
    SpatialGrid spatial;
    TimeGrid time;
    Potential potential;
    std::shared_ptr<const InitialData> initial;

    /// Reproduce the potential indexing printed for the constant-t
    /// recursion, V(x_i, t_n) instead of V(x'_j, t'_m), for comparison runs.
    bool paper_literal_vprime = false;

    /// Sample V at t + offset in every stencil. A nonzero offset degrades a
    /// ramping scenario to first order; test hook for the convergence
    /// harness.
    double potential_time_offset = 0.0;

    void validate() const;  // throws CflError when the bound is violated
};

/// W^{01} = W^{00} + dt W^{phiPi} + (C^2/2) d^2_j W^{00} - dt^2 V^0_j W^{00}.
ComplexMatrix first_step_tprime(const ComplexMatrix& w00, const ComplexMatrix& w_phipi,
                                const EvolutionConfig& cfg);

/// Mirror of first_step_tprime with W^{Piphi} and differences in i.
ComplexMatrix first_step_t(const ComplexMatrix& w00, const ComplexMatrix& w_piphi,
                           const EvolutionConfig& cfg);

/// W^{11} = dt^2 W^{PiPi} + W^{01} + W^{10} - W^{00}.
ComplexMatrix corner_step(const ComplexMatrix& w00, const ComplexMatrix& w01,
                          const ComplexMatrix& w10, const ComplexMatrix& w_pipi, double dt);

/// W^{(n+1)m} = 2 W^{nm} - W^{(n-1)m} + C^2 d^2_i W^{nm} - 2 dt^2 V^n_i W^{nm}.
CorrelatorSlice step_t(const CorrelatorSlice& prev, const CorrelatorSlice& curr,
                       const EvolutionConfig& cfg, std::span<const double> v_row_at_tn);

/// Mirror stencil in the t' direction, potential sampled at (x'_j, t'_m).
CorrelatorSlice step_tprime(const CorrelatorSlice& prev, const CorrelatorSlice& curr,
                            const EvolutionConfig& cfg, std::span<const double> v_row_at_tpm);

/// The four slices needed for equal-time observables with forward
/// differences. Pointers remain valid until the marcher advances.
struct DiagonalRecord {
    int n = 0;
    double t = 0.0;
    double dt = 0.0;
    double dx = 0.0;
    const ComplexMatrix* w_nn = nullptr;
    const ComplexMatrix* w_n_np1 = nullptr;
    const ComplexMatrix* w_np1_n = nullptr;
    const ComplexMatrix* w_np1_np1 = nullptr;
};

/// Constant-memory diagonal march: holds the 2x2 block {n, n+1}^2 and
/// advances it with four stencil applications per step, algebraically
/// identical to the two-pass sweep.
class DiagonalMarcher {
public:
    explicit DiagonalMarcher(EvolutionConfig cfg);

    const DiagonalRecord& current() const { return record_; }
    int n() const { return record_.n; }
    /// Advance to the next diagonal record; false once n+1 == Nt.
    bool advance();

    const EvolutionConfig& config() const { return cfg_; }

private:
    void refresh_record();

    EvolutionConfig cfg_;
    ComplexMatrix b00_, b01_, b10_, b11_, tmp_, tmp2_;
    std::vector<double> v_scratch_;
    DiagonalRecord record_;
};

/// Run the diagonal march over the whole time grid, invoking the callback
/// for records n = 0..Nt-1.
void evolve_diagonal(const EvolutionConfig& cfg, const std::function<void(const DiagonalRecord&)>& f);

/// Full correlator on the (n, m) grid; the literal two-pass algorithm.
/// Memory grows as Nx^2 Nt^2; refuses above max_bytes.
struct Wightman4D {
    int n_levels = 0;  // time levels per argument (Nt + 1)
    int nx = 0;
    std::vector<ComplexMatrix> slices;  // index n * n_levels + m

    const ComplexMatrix& at(int n, int m) const { return slices[static_cast<size_t>(n) * n_levels + m]; }
};

Wightman4D evolve_full_twopass(const EvolutionConfig& cfg, size_t max_bytes = size_t{1} << 30);

/// W(x_i, t_n; x_{j_fixed}, t'_{m_fixed}) for n = 0..n_max and all i,
/// returned as an (n_max+1) x Nx matrix. Bootstraps the first two t-rows
/// with full slices, sweeps t' to m_fixed, then marches the single column
/// in t. Memory stays O(Nx^2).
ComplexMatrix evolve_fixed_tprime(const EvolutionConfig& cfg, int j_fixed, int m_fixed, int n_max);

}  // namespace w2pt
