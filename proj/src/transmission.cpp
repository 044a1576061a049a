#include "w2pt/transmission.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace w2pt {

namespace {

using state_t = std::array<cplx, 2>;  // (u, u')

/// Right wall of the double-wall profile, isolated.
double wall_v(const PotentialParams& p, double scale, double x) {
    const double s = (x - p.x_right_wall) / p.wall_width;
    return scale * p.v_max * std::exp(-s * s) *
           (1.0 + std::erf(p.sharpness * (x - p.x_right_wall)));
}

}  // namespace

double barrier_transmissivity(const PotentialParams& params, double omega, double height_scale) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    const double span = 6.0 * params.wall_width;
    const double a = params.x_right_wall - span;
    const double b = params.x_right_wall + span;

    // March from the transmitted side (x = b, pure e^{i omega x}) to x = a.
    const int n_steps = 2000 + static_cast<int>(200.0 * omega * span);
    const double hstep = (a - b) / n_steps;  // negative
    auto rhs = [&](double x, const state_t& y) -> state_t {
        return {y[1], (2.0 * wall_v(params, height_scale, x) - omega * omega) * y[0]};
    };
    state_t y{std::exp(cplx(0.0, omega * b)), cplx(0.0, omega) * std::exp(cplx(0.0, omega * b))};
    double x = b;
    for (int s = 0; s < n_steps; ++s) {
        const state_t k1 = rhs(x, y);
        const state_t y2{y[0] + 0.5 * hstep * k1[0], y[1] + 0.5 * hstep * k1[1]};
        const state_t k2 = rhs(x + 0.5 * hstep, y2);
        const state_t y3{y[0] + 0.5 * hstep * k2[0], y[1] + 0.5 * hstep * k2[1]};
        const state_t k3 = rhs(x + 0.5 * hstep, y3);
        const state_t y4{y[0] + hstep * k3[0], y[1] + hstep * k3[1]};
        const state_t k4 = rhs(x + hstep, y4);
        y[0] += hstep / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += hstep / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        x += hstep;
    }
    // On the incident side u = A e^{i omega x} + B e^{-i omega x};
    // |T|^2 = 1/|A|^2 for unit transmitted amplitude.
    const cplx amp_in = 0.5 * (y[0] + y[1] / cplx(0.0, omega)) * std::exp(cplx(0.0, -omega * a));
    return 1.0 / std::norm(amp_in);
}

double quality_from_transmissivity(const WavepacketSpec& spec, const ModeBasis& basis,
                                   const PotentialParams& params, double height_scale) {
    double num = 0.0, den = 0.0;
    for (int n = 1; n <= spec.n_modes; ++n) {
        const double w = basis.frequency(n);
        const double weight = std::norm(spec.coefficients[n - 1]) * w;
        num += weight;
        den += weight * barrier_transmissivity(params, w, height_scale);
    }
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace w2pt
