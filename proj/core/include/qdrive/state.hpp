#ifndef QDRIVE_STATE_HPP
#define QDRIVE_STATE_HPP

#include <complex>

// Two-level state in the diabatic basis {|0>, |1>}.
//
// Conventions used throughout the library: hbar = 1, energies in units of
// the recoil energy, times in units of the inverse recoil frequency.
// Protocols are parametrized by the dimensionless time tau = t/T in [0, 1];
// physical time is recovered as t = tau * T.

namespace qdrive {

using complexd = std::complex<double>;

struct QuantumState {
    complexd c0{1.0, 0.0};  // amplitude on |0>
    complexd c1{0.0, 0.0};  // amplitude on |1>

    static QuantumState ket0() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static QuantumState ket1() { return {{0.0, 0.0}, {1.0, 0.0}}; }

    double norm2() const { return std::norm(c0) + std::norm(c1); }

    QuantumState normalized() const;

    QuantumState conjugated() const { return {std::conj(c0), std::conj(c1)}; }

    // A state orthogonal to this one: (-conj(c1), conj(c0)).
    QuantumState orthogonal() const { return {-std::conj(c1), std::conj(c0)}; }
};

// <a|b>
inline complexd inner(const QuantumState& a, const QuantumState& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

// Phase-insensitive overlap |<a|b>|^2. All state comparisons in the library
// go through this; global phases are never normalized away.
inline double overlap2(const QuantumState& a, const QuantumState& b) {
    return std::norm(inner(a, b));
}

}  // namespace qdrive

#endif
