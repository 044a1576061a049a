#include "w2pt/potential.hpp"

#include <algorithm>
#include <cmath>

#include "w2pt/errors.hpp"

namespace w2pt {

void PotentialParams::validate() const {
    if (v_max < 0.0) throw ConfigError("potential v_max must be nonnegative");
    if (!(ramp_time > 0.0)) throw ConfigError("potential ramp_time must be positive");
    if (!(wall_width > 0.0)) throw ConfigError("potential wall_width must be positive");
    if (sharpness < 0.0) throw ConfigError("potential sharpness must be nonnegative");
    if (!(x_left_wall < x_right_wall)) throw ConfigError("x_left_wall must be below x_right_wall");
}

namespace {

double wall_shape(const PotentialParams& p, double x) {
    const double sl = (x - p.x_left_wall) / p.wall_width;
    const double sr = (x - p.x_right_wall) / p.wall_width;
    const double left = std::exp(-sl * sl) * (1.0 + std::erf(-p.sharpness * (x - p.x_left_wall)));
    const double right = std::exp(-sr * sr) * (1.0 + std::erf(p.sharpness * (x - p.x_right_wall)));
    return left + right;
}

}  // namespace

double potential_evaluate(const PotentialParams& params, double x, double t) {
    const double ramp = std::min(t, params.ramp_time) / params.ramp_time;
    if (ramp <= 0.0) return 0.0;
    return params.v_max * ramp * wall_shape(params, x);
}

double potential_max_value(const PotentialParams& params) {
    if (params.v_max == 0.0) return 0.0;
    // The frozen shape is a sum of two bumps supported within a few wall
    // widths of each wall; sample densely there and refine the best point.
    const double pad = 6.0 * params.wall_width;
    const double a = params.x_left_wall - pad;
    const double b = params.x_right_wall + pad;
    const int n = 20001;
    const double h = (b - a) / (n - 1);
    double best_x = a, best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a + i * h;
        const double v = wall_shape(params, x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    // Golden-section refinement around the best sample.
    double lo = best_x - h, hi = best_x + h;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = wall_shape(params, c), fd = wall_shape(params, d);
    for (int it = 0; it < 80; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = wall_shape(params, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = wall_shape(params, d);
        }
    }
    best = std::max(best, std::max(fc, fd));
    return params.v_max * best;
}

std::vector<double> potential_sample_on_grid(const PotentialParams& params, const SpatialGrid& grid,
                                             double t) {
    std::vector<double> v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) v[i] = potential_evaluate(params, grid.x(i), t);
    return v;
}

Potential Potential::double_wall(PotentialParams params, bool hold_at_max) {
    params.validate();
    Potential p;
    p.kind_ = Kind::double_wall;
    p.params_ = params;
    p.hold_ = hold_at_max;
    return p;
}

Potential Potential::uniform_mass(double mass) {
    if (mass < 0.0) throw ConfigError("mass must be nonnegative");
    Potential p;
    p.kind_ = Kind::uniform_mass;
    p.mass_ = mass;
    return p;
}

double Potential::value(double x, double t) const {
    switch (kind_) {
        case Kind::none:
            return 0.0;
        case Kind::uniform_mass:
            return mass_ * mass_ / 2.0;
        case Kind::double_wall:
            return potential_evaluate(params_, x, hold_ ? params_.ramp_time : t);
    }
    return 0.0;
}

double Potential::max_value() const {
    switch (kind_) {
        case Kind::none:
            return 0.0;
        case Kind::uniform_mass:
            return mass_ * mass_ / 2.0;
        case Kind::double_wall:
            return potential_max_value(params_);
    }
    return 0.0;
}

void Potential::sample(const SpatialGrid& grid, double t, std::span<double> out) const {
    for (int i = 0; i < grid.n_points; ++i) out[i] = value(grid.x(i), t);
}

bool Potential::static_after(double t) const {
    switch (kind_) {
        case Kind::none:
        case Kind::uniform_mass:
            return true;
        case Kind::double_wall:
            return hold_ || t >= params_.ramp_time;
    }
    return true;
}

}  // namespace w2pt
