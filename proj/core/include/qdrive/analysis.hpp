#ifndef QDRIVE_ANALYSIS_HPP
#define QDRIVE_ANALYSIS_HPP

#include <vector>

#include "qdrive/propagator.hpp"
#include "qdrive/schedule.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

// Fleming-Bhattacharyya bound: the minimum time to connect two states at
// coupling strength omega.
struct SpeedLimitResult {
    double t_qs = 0.0;     // arccos(overlap) / omega, exactly
    double overlap = 0.0;  // |<Psi_fin|Psi_ini>|, clamped to [0, 1]
    double omega = 0.0;
};

SpeedLimitResult quantum_speed_limit(const QuantumState& initial, const QuantumState& target,
                                     double omega);

enum class RobustnessAxis { duration, coupling };

struct RobustnessScan {
    RobustnessAxis axis = RobustnessAxis::duration;
    std::vector<double> deviations;  // relative deviations dx/x
    std::vector<double> fidelities;  // matching final fidelities (NaN when skipped)
    std::vector<bool> skipped;       // deviation drove a parameter out of range
};

// Propagates from the tau=0 adiabatic ground state of the schedule's base
// Hamiltonian and returns the squared overlap with the tau=1 ground state,
// clamped to [0, 1]. With config.convergence_check set, the value is
// recomputed at doubled steps and a non_convergence error carrying both
// estimates is thrown if they differ by 1e-8 or more.
double final_fidelity(const ProtocolSchedule& schedule, const PropagatorConfig& config = {});

// Same propagation from a caller-supplied initial state, scored against a
// caller-supplied target.
double final_fidelity(const ProtocolSchedule& schedule, const QuantumState& initial,
                      const QuantumState& target, const PropagatorConfig& config = {});

// Closed-form reference for the linear sweep: the adiabatic-ground-state
// fidelity 1 - exp(-pi * T * omega^2 / 4) implied by the asymptotic tunneling
// probability. (At T -> 0 the true sudden-limit fidelity is the endpoint
// state overlap instead; the asymptotic formula goes to 0.)
double lz_reference_fidelity(double omega, double duration);

// Families whose duration can be searched for a target final fidelity.
enum class SearchFamily { lz_linear, roland_cerf };

// Smallest duration at which the simulated final fidelity reaches `target`:
// coarse upward scan to the first bracket, then bisection to bracket width
// <= 1e-3, verified to satisfy |F(T) - target| <= 1e-4. For roland_cerf the
// search runs over epsilon through its duration relation. Throws
// non_bracketable when no bracket exists.
double time_to_fidelity(SearchFamily family, double omega, double target,
                        const PropagatorConfig& config = {});

// Final fidelity of the protocol rebuilt with a relative deviation applied to
// the physical knob of the chosen axis:
//   duration: the waveform is played over T*(1+delta), impulse areas kept;
//   coupling: the realized coupling channel is scaled by (1+delta), the
//             Gamma waveform and impulse areas kept (they come from the
//             quasimomentum ramp, not the lattice depth).
// State preparation and measurement stay those of the unperturbed design.
// Deviations driving the coupling (or duration) non-positive are skipped and
// flagged. Entry delta = 0 reproduces the unperturbed fidelity.
RobustnessScan robustness_scan(const ProtocolSchedule& ideal, RobustnessAxis axis,
                               const std::vector<double>& deviations,
                               const PropagatorConfig& config = {});

// Duration of the transitionless tangent protocol with internal coupling
// omega realizing the physical coupling omega_prime > omega:
//   T = arctan(2/omega) / sqrt(omega_prime^2 - omega^2)
double tangent_duration_for_coupling(double omega, double omega_prime);

enum class MinTimeFamily { superadiabatic_tangent };

struct MinTimeResult {
    double t_min = 0.0;
    double omega_star = 0.0;  // minimizing internal coupling
};

// Minimizes tangent_duration_for_coupling over omega in (0, omega_prime) by
// golden-section search to relative tolerance 1e-8.
MinTimeResult min_time_at_coupling(double omega_prime,
                                   MinTimeFamily family = MinTimeFamily::superadiabatic_tangent);

}  // namespace qdrive

#endif
