#include "qdrive/propagator.hpp"

#include <cmath>
#include <limits>

#include "qdrive/adiabatic.hpp"
#include "qdrive/errors.hpp"

namespace qdrive {

namespace {

// exp(-i dt (a sz + b sx + c sy)) applied in place; exactly unitary
void step(QuantumState& psi, double a, double b, double c, double dt) {
    const double r = std::sqrt(a * a + b * b + c * c);
    if (r == 0.0) return;  // free evolution: identity step
    const double theta = dt * r;
    const double cs = std::cos(theta);
    const double sn = std::sin(theta) / r;
    const complexd u00(cs, -sn * a);
    const complexd u01(-sn * c, -sn * b);
    const complexd u10(sn * c, -sn * b);
    const complexd u11(cs, sn * a);
    const complexd c0 = u00 * psi.c0 + u01 * psi.c1;
    const complexd c1 = u10 * psi.c0 + u11 * psi.c1;
    psi = {c0, c1};
}

void apply_impulses(QuantumState& psi, const ProtocolSchedule& schedule, ImpulseLocation where) {
    for (const auto& imp : schedule.impulses) {
        if (imp.location == where) psi = apply_impulse(psi, imp);
    }
}

QuantumState run_steps(const ProtocolSchedule& schedule, QuantumState psi, int steps,
                       Trajectory* record) {
    const double dt = schedule.duration / steps;
    const bool has_y = schedule.has_explicit_sigma_y();
    for (int k = 0; k < steps; ++k) {
        const double tm = (k + 0.5) / steps;
        step(psi, schedule.gamma(tm), schedule.omega(tm), has_y ? schedule.omega_y(tm) : 0.0, dt);
        if (record) {
            const double tau = static_cast<double>(k + 1) / steps;
            record->points.push_back({tau, psi, instantaneous_fidelity(schedule, tau, psi)});
        }
    }
    return psi;
}

}  // namespace

QuantumState apply_impulse(const QuantumState& state, const ImpulseRotation& impulse) {
    const complexd phase = std::polar(1.0, -impulse.area);
    return {state.c0 * phase, state.c1 * std::conj(phase)};
}

double instantaneous_fidelity(const ProtocolSchedule& schedule, double tau,
                              const QuantumState& state) {
    QuantumState s = state;
    if (schedule.frame_angle) {
        // undo the frame rotation before comparing with the base eigenstate
        s = apply_impulse(s, {ImpulseLocation::start, ImpulseAxis::z,
                              0.5 * schedule.frame_angle(tau)});
    }
    const double g = schedule.base_gamma(tau);
    const double w = schedule.base_omega(tau);
    if (g == 0.0 && w == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return overlap2(eigensystem(g, w).ground, s);
}

Trajectory propagate(const ProtocolSchedule& schedule, const QuantumState& initial,
                     const PropagatorConfig& config) {
    if (config.steps < 16) {
        throw invalid_parameter("propagator requires steps >= 16");
    }
    if (!(schedule.duration > 0.0)) {
        throw invalid_parameter("schedule duration must be positive");
    }
    if (std::abs(initial.norm2() - 1.0) > 1e-9) {
        throw invalid_parameter("initial state must be normalized");
    }

    Trajectory traj;
    QuantumState psi = initial;
    apply_impulses(psi, schedule, ImpulseLocation::start);
    if (config.record_trajectory) {
        traj.points.push_back({0.0, psi, instantaneous_fidelity(schedule, 0.0, psi)});
    }
    psi = run_steps(schedule, psi, config.steps, config.record_trajectory ? &traj : nullptr);
    apply_impulses(psi, schedule, ImpulseLocation::end);
    traj.final_state = psi;

    if (config.convergence_check) {
        QuantumState fine = initial;
        apply_impulses(fine, schedule, ImpulseLocation::start);
        fine = run_steps(schedule, fine, 2 * config.steps, nullptr);
        apply_impulses(fine, schedule, ImpulseLocation::end);
        const double g1 = schedule.base_gamma(1.0);
        const double w1 = schedule.base_omega(1.0);
        if (g1 == 0.0 && w1 == 0.0) {
            // no measurement basis at the endpoint; bound any fidelity shift
            const double ov = std::min(1.0, overlap2(psi, fine));
            traj.convergence_delta = 2.0 * std::sqrt(1.0 - ov);
        } else {
            const QuantumState target = eigensystem(g1, w1).ground;
            traj.convergence_delta = std::abs(overlap2(target, psi) - overlap2(target, fine));
        }
        traj.converged = traj.convergence_delta < 1e-8;
    }
    return traj;
}

}  // namespace qdrive
