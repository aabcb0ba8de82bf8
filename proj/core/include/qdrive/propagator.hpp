#ifndef QDRIVE_PROPAGATOR_HPP
#define QDRIVE_PROPAGATOR_HPP

#include <vector>

#include "qdrive/schedule.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

enum class SampleRule { midpoint };

struct PropagatorConfig {
    int steps = 4096;  // >= 16
    SampleRule sample_rule = SampleRule::midpoint;
    bool record_trajectory = false;
    // When set, the run is repeated at 2x steps and the final states are
    // compared; Trajectory.converged reports the outcome.
    bool convergence_check = false;
};

struct TrajectoryPoint {
    double tau;
    QuantumState state;
    double fidelity;  // against the schedule's measurement basis, frame-corrected
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;  // empty unless record_trajectory
    QuantumState final_state;
    bool converged = true;
    // Change of the final measurement-basis fidelity under step doubling
    // (a state-distance bound when no basis is defined at tau = 1). 0 when
    // the check is off.
    double convergence_delta = 0.0;
};

// exp(-i * area * sigma_z) applied to the state; exactly unitary.
QuantumState apply_impulse(const QuantumState& state, const ImpulseRotation& impulse);

// Integrates i dpsi/dt = (Gamma sz + omega sx + omega_y sy) psi over the
// schedule: start impulses as exact unitaries, then `steps` piecewise-constant
// steps, each the closed-form 2x2 exponential of the midpoint-sampled
// Hamiltonian, then end impulses. Every step is exactly unitary up to
// rounding, so the norm drifts by no more than ~1e-14 over a full run.
//
// Recorded fidelities compare against the instantaneous ground state of the
// schedule's base (untransformed) Hamiltonian, undoing the frame rotation
// beta(tau) first when the schedule carries one. Recorded states at tau = 1
// precede the end impulses; final_state includes them.
Trajectory propagate(const ProtocolSchedule& schedule, const QuantumState& initial,
                     const PropagatorConfig& config = {});

// Instantaneous fidelity of `state` at tau against the schedule's measurement
// basis (used internally by propagate; exposed for analysis code).
double instantaneous_fidelity(const ProtocolSchedule& schedule, double tau,
                              const QuantumState& state);

}  // namespace qdrive

#endif
