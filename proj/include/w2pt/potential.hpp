#pragma once

#include <span>
#include <vector>

#include "w2pt/lattice.hpp"

namespace w2pt {

/// Parameters of the erf-Gaussian double-wall confining potential
/// V(x,t) = v_max * min(t,T)/T * [ exp(-((x-xL)/l)^2) (1 + erf(-beta (x-xL)))
///                               + exp(-((x-xR)/l)^2) (1 + erf( beta (x-xR))) ].
/// The ramp is clamped at t = T; the shape is frozen afterwards.
struct PotentialParams {
    double v_max = 250.0;
    double ramp_time = 10.0;
    double x_left_wall = 3.0;
    double x_right_wall = 7.0;
    double wall_width = 1.0;
    double sharpness = 30.0;

    void validate() const;
};

double potential_evaluate(const PotentialParams& params, double x, double t);

/// Max of V over all x and t >= 0 (attained at t >= T). Dense sampling at
/// the frozen shape plus local parabolic refinement; never below any grid
/// sample.
double potential_max_value(const PotentialParams& params);

std::vector<double> potential_sample_on_grid(const PotentialParams& params, const SpatialGrid& grid,
                                             double t);

/// Potential model used by the evolver: the double wall (ramped, or held at
/// its t >= T shape from the start), the uniform mass term V = m^2/2, or no
/// potential at all.
class Potential {
public:
    enum class Kind { none, double_wall, uniform_mass };

    static Potential none() { return Potential{}; }
    static Potential double_wall(PotentialParams params, bool hold_at_max = false);
    static Potential uniform_mass(double mass);

    double value(double x, double t) const;
    double max_value() const;
    void sample(const SpatialGrid& grid, double t, std::span<double> out) const;

    Kind kind() const { return kind_; }
    /// True once V(x, t) no longer changes for t >= when.
    bool static_after(double t) const;
    const PotentialParams& params() const { return params_; }
    bool held() const { return hold_; }

private:
    Kind kind_ = Kind::none;
    PotentialParams params_{};
    bool hold_ = false;
    double mass_ = 0.0;
};

}  // namespace w2pt
