#ifndef QDRIVE_LATTICE_HPP
#define QDRIVE_LATTICE_HPP

#include <string>
#include <vector>

#include "qdrive/schedule.hpp"

// Maps abstract (Gamma, omega) drives to optical-lattice control signals:
// lattice depth V0 = 4*omega (recoil energies), quasimomentum
// q = Gamma/4 + 1/2 (Brillouin-zone units), and, when the counterdiabatic
// term rides along as an explicit sigma_y channel, the combined-lattice
// amplitude, the displacement phase beta = arctan(4*alpha/V0) and the
// corrected quasimomentum q' = q - dbeta/dt / (8*omega_rec).

namespace qdrive {

inline constexpr double kDefaultRecoilFrequency = 2.0 * 3.14159265358979323846 * 3150.0;  // rad/s

struct LatticeExportOptions {
    std::size_t samples = 100000;   // uniform samples over the protocol
    double slew_duration = 0.0;     // physical-time width for materializing impulses; 0 keeps them in metadata
    double recoil_frequency = kDefaultRecoilFrequency;  // rad/s, converts natural time to seconds
};

struct LatticeControls {
    std::vector<double> t_seconds;
    std::vector<double> depth;          // V0(t), recoil energies
    std::vector<double> quasimomentum;  // q(t), BZ units
    std::vector<double> quasimomentum_corrected;  // q'(t)
    std::vector<double> displacement;   // beta(t) * d_L / (2 pi), lattice units
    std::vector<double> beta;           // beta(t), radians
    double recoil_frequency = kDefaultRecoilFrequency;
    double duration_natural = 0.0;      // protocol T in units of 1/omega_rec
    double slew_duration = 0.0;
    std::vector<ImpulseRotation> impulses;  // echoed from the schedule
    std::string protocol_descriptor;
};

// Samples the schedule into hardware-style control arrays. Requires
// omega(tau) > 0. With slew_duration > 0, start/end impulses are materialized
// as rectangular quasimomentum excursions of that width (area preserved)
// prepended/appended to the trace; otherwise they are only echoed in the
// metadata.
LatticeControls to_lattice_controls(const ProtocolSchedule& schedule,
                                    const LatticeExportOptions& options = {});

// CSV with columns (t_seconds, V0_recoils, q, q_prime, beta) plus a JSON
// metadata sidecar (units, omega_rec, protocol descriptor, impulses) written
// next to it as <path>.json.
void write_waveform_csv(const LatticeControls& controls, const std::string& path);

struct VerificationReport {
    bool passed = false;
    double max_abs_error = 0.0;
    std::string detail;
};

// Self-test of the basis conventions: builds the diagonal displacement
// operator U_d(dx) = diag(exp(i*pi*x), exp(-i*pi*x)) with x = dx/d_L and
// checks that conjugation by a quarter-period displacement turns sigma_x into
// sigma_y exactly (and a half-period displacement into -sigma_x).
VerificationReport displacement_unitary_check();

}  // namespace qdrive

#endif
