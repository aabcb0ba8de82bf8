#ifndef QDRIVE_ADIABATIC_HPP
#define QDRIVE_ADIABATIC_HPP

#include "qdrive/schedule.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

// Instantaneous eigenpair of H = Gamma*sz + omega*sx.
//
// phi is the mixing angle on the branch (0, pi): phi = atan2(omega, Gamma),
// so that phi -> pi as Gamma -> -inf, phi = pi/2 at Gamma = 0 and phi -> 0 as
// Gamma -> +inf. This branch keeps phi continuous as Gamma crosses zero,
// which is what makes dphi/dt a usable counterdiabatic coefficient.
//
// Phase convention: the |1> component of the ground state is real and
// non-negative (and the state is -|0>-free when that component vanishes),
// making overlaps reproducible across implementations.
struct AdiabaticFrame {
    QuantumState ground;
    QuantumState excited;
    double energy_gap = 0.0;  // 2*sqrt(Gamma^2 + omega^2)
    double phi = 0.0;         // mixing angle, radians
};

// Continuous mixing angle of (Gamma, omega); omega >= 0 gives values in [0, pi].
double mixing_angle(double gamma, double omega);

// Diagonalizes Gamma*sz + omega*sx. Energies are -+ sqrt(Gamma^2 + omega^2).
// Throws degenerate_hamiltonian when Gamma = omega = 0.
// An explicit sigma_y channel on the sample is deliberately ignored: the
// measurement basis is always defined by the (sz, sx) part of the drive.
AdiabaticFrame eigensystem(const ControlSample& s);
AdiabaticFrame eigensystem(double gamma, double omega);

// The sigma_y coefficient (1/2) dphi/dt of the counterdiabatic Hamiltonian,
// evaluated on the schedule's own channels:
//
//   (1/2) dphi/dt = (Gamma * domega/dt - omega * dGamma/dt) / (2 (Gamma^2 + omega^2))
//
// with derivatives in physical time t = tau*T. Analytic channel derivatives
// are used when present; custom schedules fall back to central differences.
// Requires omega(tau) > 0.
double counteradiabatic_coefficient(const ProtocolSchedule& schedule, double tau);

}  // namespace qdrive

#endif
