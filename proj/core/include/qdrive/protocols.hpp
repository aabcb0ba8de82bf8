#ifndef QDRIVE_PROTOCOLS_HPP
#define QDRIVE_PROTOCOLS_HPP

#include "qdrive/schedule.hpp"

// Generators for the five protocol families, plus the general superadiabatic
// transformation that maps any base schedule to its transitionless
// counterpart.
//
// All built-in kinds sweep Gamma from -2 to +2 (in recoil units) with a
// non-negative coupling channel. Impulse-carrying kinds meet the boundary
// values through point values of gamma at tau = 0 and tau = 1.

namespace qdrive {

// Linear sweep Gamma(tau) = 4*(tau - 1/2) at constant coupling.
ProtocolSchedule lz_linear(double omega, double duration);

// Locally adiabatic sweep: the drive keeps the instantaneous deviation from
// the ground state at a constant epsilon in (0, 1). The duration is fixed by
// the parameters:
//
//   T(eps) = 1 / (eps * omega * sqrt(4 + omega^2))
//   Gamma(tau) = 4 eps w^2 T (tau-1/2) / sqrt(1 - 16 eps^2 w^2 T^2 (tau-1/2)^2)
ProtocolSchedule roland_cerf(double omega, double epsilon);

// Impulse - plateau - impulse sequence realizing exact state transfer at the
// speed limit: a z-rotation of pulse area +pi/4, a resonant plateau with
// Gamma = 0 whose duration satisfies
//
//   T * (1 - 2*tau0) = arccos(overlap_ini_fin) / omega,
//
// and a closing z-rotation of area -pi/4. overlap_ini_fin is
// |<Psi_fin|Psi_ini>| for the intended endpoint pair.
//
// Ideal mode (default) applies the end rotations as exact impulses (tau0 = 0);
// gamma_max <= 0 then stands for the asymptotic limit. With ideal = false the
// rotations are emulated by rectangular Gamma pulses of height gamma_max
// whose physical-time area is pi/4. A finite gamma_max below 10x omega is
// allowed but attaches a warning to the schedule (the exactness guarantee
// holds only asymptotically).
ProtocolSchedule composite_pulse(double omega, double gamma_max, double overlap_ini_fin,
                                 bool ideal = true);

// Base sweep Gamma(tau) = omega * tan(2*(tau - 1/2) * arctan(2/omega)) at
// constant coupling. Its mixing angle decreases at a constant rate, which
// makes it the fixed point of the superadiabatic transformation in Gamma.
ProtocolSchedule tangent_base(double omega, double duration);

// Recasts H + H_s for the given base drive as a pure (sz, sx) drive:
//
//   Gamma' = Gamma - (1/2) d/dt [ beta ],   beta = arctan(alpha / omega)
//   omega' = sqrt(omega^2 + alpha^2)
//
// where alpha = (Gamma*domega/dt - omega*dGamma/dt) / (2*(Gamma^2 + omega^2))
// is the counterdiabatic sigma_y coefficient. The jumps of beta at the ends
// of the protocol are emitted as ImpulseRotations of area -beta(0)/2 and
// +beta(1)/2. Requires omega(tau) > 0 everywhere.
ProtocolSchedule superadiabatic_transform(const ProtocolSchedule& base);

// superadiabatic_transform(lz_linear(omega, T)). The coupling channel equals
// omega*sqrt(1 + 1/(T^2*(8*(tau-1/2)^2 + omega^2/2)^2)).
ProtocolSchedule superadiabatic_linear(double omega, double duration);

// Transitionless version of tangent_base, built in closed form:
// Gamma' identical to the base sweep, constant coupling
//
//   omega' = omega * sqrt(1 + arctan(2/omega)^2 / (T*omega)^2)
//
// and endpoint impulses of area -+ beta/2 with beta = arctan(-arctan(2/omega)/(T*omega)).
ProtocolSchedule superadiabatic_tangent(double omega, double duration);

// The same counterdiabatic drive carried as an explicit sigma_y channel on
// top of the unmodified base, for setups with a second displaced lattice.
// Propagating this and superadiabatic_transform(base) from the same initial
// state gives the same final state.
ProtocolSchedule counterdiabatic_explicit(const ProtocolSchedule& base);

}  // namespace qdrive

#endif
