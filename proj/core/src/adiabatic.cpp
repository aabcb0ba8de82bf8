#include "qdrive/adiabatic.hpp"

#include <cmath>

#include "qdrive/errors.hpp"

namespace qdrive {

double mixing_angle(double gamma, double omega) {
    if (gamma == 0.0 && omega == 0.0) {
        throw degenerate_hamiltonian("mixing angle undefined at Gamma = omega = 0");
    }
    return std::atan2(omega, gamma);
}

AdiabaticFrame eigensystem(double gamma, double omega) {
    if (gamma == 0.0 && omega == 0.0) {
        throw degenerate_hamiltonian("eigensystem undefined at Gamma = omega = 0");
    }
    AdiabaticFrame f;
    f.phi = std::atan2(omega, gamma);
    f.energy_gap = 2.0 * std::hypot(gamma, omega);

    if (omega == 0.0) {
        // diagonal Hamiltonian: pin the states exactly (and to +|0>, not -|0>)
        f.ground = gamma < 0.0 ? QuantumState::ket0() : QuantumState::ket1();
        f.excited = gamma < 0.0 ? QuantumState::ket1() : QuantumState::ket0();
        return f;
    }
    const double c = std::cos(0.5 * f.phi);
    const double s = std::sin(0.5 * f.phi);
    f.ground = {{-s, 0.0}, {c, 0.0}};
    f.excited = {{c, 0.0}, {s, 0.0}};
    return f;
}

AdiabaticFrame eigensystem(const ControlSample& s) { return eigensystem(s.gamma, s.omega); }

double counteradiabatic_coefficient(const ProtocolSchedule& schedule, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw domain_error("tau outside [0, 1]");
    }
    const double g = schedule.gamma(tau);
    const double w = schedule.omega(tau);
    if (!(w > 0.0)) {
        throw invalid_parameter("counteradiabatic coefficient requires omega(tau) > 0");
    }
    // physical-time derivatives: d/dt = (d/dtau)/T
    const double gdot = schedule.gamma.deriv1(tau) / schedule.duration;
    const double wdot = schedule.omega.deriv1(tau) / schedule.duration;
    return (g * wdot - w * gdot) / (2.0 * (g * g + w * w));
}

}  // namespace qdrive
