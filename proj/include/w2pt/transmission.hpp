#pragma once

#include "w2pt/potential.hpp"
#include "w2pt/states.hpp"

namespace w2pt {

/// |T(omega)|^2 of a mode crossing one isolated wall of the confining
/// potential, at height_scale times the frozen (t >= T) profile. Fixed-step
/// RK4 integration of u'' = (2V - omega^2) u from the transmitted side.
double barrier_transmissivity(const PotentialParams& params, double omega,
                              double height_scale = 1.0);

/// Q = sum |c_n|^2 omega_n / sum |T(omega_n)|^2 |c_n|^2 omega_n, the
/// transmissivity form of the quality factor for a one-particle wavepacket.
double quality_from_transmissivity(const WavepacketSpec& spec, const ModeBasis& basis,
                                   const PotentialParams& params, double height_scale = 1.0);

}  // namespace w2pt
