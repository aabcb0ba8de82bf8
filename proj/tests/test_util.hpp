#ifndef QDRIVE_TEST_UTIL_HPP
#define QDRIVE_TEST_UTIL_HPP

// Test-side oracles, independent of the library's implementation paths.

#include <array>
#include <cmath>
#include <cstdint>

#include "qdrive/propagator.hpp"
#include "qdrive/schedule.hpp"
#include "qdrive/state.hpp"

namespace qtest {

struct OracleEig {
    qdrive::QuantumState ground;
    qdrive::QuantumState excited;
    double e_ground;
    double e_excited;
};

// Direct 2x2 diagonalization by row elimination (no half-angle formulas):
// the ground eigenvector of [[G, w], [w, -G]] at energy -E is proportional to
// (G - E, w), which already has a non-negative |1> component for w >= 0.
inline OracleEig diagonalize_oracle(double gamma, double omega) {
    const double e = std::sqrt(gamma * gamma + omega * omega);
    OracleEig r;
    r.e_ground = -e;
    r.e_excited = e;
    if (omega == 0.0) {
        r.ground = gamma < 0.0 ? qdrive::QuantumState::ket0() : qdrive::QuantumState::ket1();
        r.excited = gamma < 0.0 ? qdrive::QuantumState::ket1() : qdrive::QuantumState::ket0();
        return r;
    }
    const double v0 = gamma - e;
    const double v1 = omega;
    const double n = std::sqrt(v0 * v0 + v1 * v1);
    r.ground = {{v0 / n, 0.0}, {v1 / n, 0.0}};
    r.excited = {{v1 / n, 0.0}, {-v0 / n, 0.0}};
    return r;
}

// Classical RK4 on i dpsi/dt = H(t) psi; a deliberately different integration
// rule from the library's exact-exponential stepper. Impulses are applied as
// exact phases. The result is renormalized (RK4 is not unitary).
inline qdrive::QuantumState rk4_propagate(const qdrive::ProtocolSchedule& s,
                                          const qdrive::QuantumState& initial, int steps) {
    using qdrive::complexd;
    std::array<complexd, 2> y{initial.c0, initial.c1};

    for (const auto& imp : s.impulses) {
        if (imp.location == qdrive::ImpulseLocation::start) {
            const complexd p = std::polar(1.0, -imp.area);
            y[0] *= p;
            y[1] *= std::conj(p);
        }
    }

    const double dt = s.duration / steps;
    auto deriv = [&s](double tau, const std::array<complexd, 2>& v) {
        const double g = s.gamma(tau);
        const double w = s.omega(tau);
        const double wy = s.omega_y ? s.omega_y(tau) : 0.0;
        const complexd i(0.0, 1.0);
        // -i * H * v with H = g sz + w sx + wy sy
        return std::array<complexd, 2>{
            -i * (g * v[0] + (w - i * wy) * v[1]),
            -i * ((w + i * wy) * v[0] - g * v[1]),
        };
    };
    for (int k = 0; k < steps; ++k) {
        const double t0 = static_cast<double>(k) / steps;
        const double th = (k + 0.5) / steps;
        const double t1 = static_cast<double>(k + 1) / steps;
        const auto k1 = deriv(t0, y);
        const auto k2 = deriv(th, {y[0] + 0.5 * dt * k1[0], y[1] + 0.5 * dt * k1[1]});
        const auto k3 = deriv(th, {y[0] + 0.5 * dt * k2[0], y[1] + 0.5 * dt * k2[1]});
        const auto k4 = deriv(t1, {y[0] + dt * k3[0], y[1] + dt * k3[1]});
        y[0] += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }

    for (const auto& imp : s.impulses) {
        if (imp.location == qdrive::ImpulseLocation::end) {
            const complexd p = std::polar(1.0, -imp.area);
            y[0] *= p;
            y[1] *= std::conj(p);
        }
    }
    return qdrive::QuantumState{y[0], y[1]}.normalized();
}

// splitmix64: deterministic across platforms
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Bounded smooth random drives for propagator cross-checks.
inline qdrive::ProtocolSchedule random_smooth_schedule(Rng& rng) {
    const double a0 = rng.uniform(-2.0, 2.0);
    const double a1 = rng.uniform(-2.0, 2.0);
    const double a2 = rng.uniform(-2.0, 2.0);
    const double b0 = rng.uniform(0.2, 2.0);
    const double b1 = rng.uniform(0.0, 2.0);
    const int f1 = rng.uniform_int(1, 2);
    const int f2 = rng.uniform_int(1, 2);
    const double T = rng.uniform(0.5, 3.0);
    const double pi = 3.14159265358979323846;
    return qdrive::make_custom_schedule(
        [=](double t) { return a0 + a1 * std::cos(pi * f1 * t) + a2 * t; },
        [=](double t) {
            const double s = std::sin(pi * f2 * t);
            return b0 + b1 * s * s;
        },
        T);
}

}  // namespace qtest

#endif
