#include "qdrive/lattice.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qdrive/errors.hpp"
#include "qdrive/experiment.hpp"

namespace qdrive {

namespace {

using std::numbers::pi;
using Mat2 = std::array<std::array<complexd, 2>, 2>;

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

Mat2 dagger(const Mat2& a) {
    return {{{std::conj(a[0][0]), std::conj(a[1][0])},
             {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

// displacement by dx in lattice units: diag(exp(i pi dx), exp(-i pi dx))
Mat2 displacement(double dx_lattice) {
    const complexd p = std::polar(1.0, pi * dx_lattice);
    return {{{p, 0.0}, {0.0, std::conj(p)}}};
}

}  // namespace

LatticeControls to_lattice_controls(const ProtocolSchedule& schedule,
                                    const LatticeExportOptions& options) {
    if (options.samples < 2) throw invalid_parameter("waveform export requires >= 2 samples");
    if (!(options.recoil_frequency > 0.0)) {
        throw invalid_parameter("recoil frequency must be positive");
    }
    if (options.slew_duration < 0.0) throw invalid_parameter("slew duration must be >= 0");

    const std::size_t n = options.samples;
    const double T = schedule.duration;
    const bool explicit_y = schedule.has_explicit_sigma_y();

    LatticeControls out;
    out.recoil_frequency = options.recoil_frequency;
    out.duration_natural = T;
    out.slew_duration = options.slew_duration;
    out.impulses = schedule.impulses;
    {
        std::ostringstream desc;
        desc << to_string(schedule.kind);
        for (const auto& [k, v] : schedule.params) desc << " " << k << "=" << format_double(v);
        out.protocol_descriptor = desc.str();
    }

    std::vector<double> beta(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i) / (n - 1);
        const double w = schedule.omega(tau);
        if (!(w > 0.0)) {
            throw invalid_parameter("lattice mapping requires omega(tau) > 0");
        }
        const double g = schedule.gamma(tau);
        double depth = 4.0 * w;
        double b = 0.0;
        if (explicit_y) {
            const double alpha = schedule.omega_y(tau);
            depth = 4.0 * std::hypot(w, alpha);   // combined-lattice amplitude
            b = std::atan2(alpha, w);             // displacement phase
        }
        beta[i] = b;
        out.t_seconds.push_back(tau * T / options.recoil_frequency);
        out.depth.push_back(depth);
        out.quasimomentum.push_back(g / 4.0 + 0.5);
        out.displacement.push_back(b / (2.0 * pi));
        out.beta.push_back(b);
    }

    // q' = q - (dbeta/dt) / (8 omega_rec); in natural units q - beta_dot/8.
    // beta_dot from the sampled trace (zero everywhere for beta = const).
    out.quasimomentum_corrected = out.quasimomentum;
    if (explicit_y) {
        const double dtau = 1.0 / (n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            double dbeta;
            if (i == 0) {
                dbeta = (beta[1] - beta[0]) / dtau;
            } else if (i == n - 1) {
                dbeta = (beta[n - 1] - beta[n - 2]) / dtau;
            } else {
                dbeta = (beta[i + 1] - beta[i - 1]) / (2.0 * dtau);
            }
            out.quasimomentum_corrected[i] -= (dbeta / T) / 8.0;
        }
    }

    if (options.slew_duration > 0.0 && !schedule.impulses.empty()) {
        // materialize impulses as rectangular quasimomentum excursions with
        // the same physical-time pulse area, stitched onto the trace ends
        const double slew = options.slew_duration;
        const double slew_s = slew / options.recoil_frequency;
        double start_area = 0.0, end_area = 0.0;
        for (const auto& imp : schedule.impulses) {
            (imp.location == ImpulseLocation::start ? start_area : end_area) += imp.area;
        }
        auto prepend = [&](double t_s, double q) {
            out.t_seconds.insert(out.t_seconds.begin(), t_s);
            out.depth.insert(out.depth.begin(), out.depth.front());
            out.quasimomentum.insert(out.quasimomentum.begin(), q);
            out.quasimomentum_corrected.insert(out.quasimomentum_corrected.begin(), q);
            out.displacement.insert(out.displacement.begin(), out.displacement.front());
            out.beta.insert(out.beta.begin(), out.beta.front());
        };
        auto append = [&](double t_s, double q) {
            out.t_seconds.push_back(t_s);
            out.depth.push_back(out.depth.back());
            out.quasimomentum.push_back(q);
            out.quasimomentum_corrected.push_back(q);
            out.displacement.push_back(out.displacement.back());
            out.beta.push_back(out.beta.back());
        };
        if (start_area != 0.0) {
            for (auto& t : out.t_seconds) t += slew_s;
            const double q_exc = out.quasimomentum.front() + (start_area / slew) / 4.0;
            prepend(slew_s, q_exc);
            prepend(0.0, q_exc);
        }
        if (end_area != 0.0) {
            const double t_end = out.t_seconds.back();
            const double q_exc = out.quasimomentum.back() + (end_area / slew) / 4.0;
            append(t_end, q_exc);
            append(t_end + slew_s, q_exc);
        }
    }
    return out;
}

void write_waveform_csv(const LatticeControls& controls, const std::string& path) {
    std::ofstream csv(path);
    if (!csv) throw error("cannot open " + path + " for writing");
    csv << "t_seconds,V0_recoils,q,q_prime,beta\n";
    for (std::size_t i = 0; i < controls.t_seconds.size(); ++i) {
        csv << format_double(controls.t_seconds[i]) << ',' << format_double(controls.depth[i])
            << ',' << format_double(controls.quasimomentum[i]) << ','
            << format_double(controls.quasimomentum_corrected[i]) << ','
            << format_double(controls.beta[i]) << '\n';
    }

    std::ofstream meta(path + ".json");
    if (!meta) throw error("cannot open " + path + ".json for writing");
    meta << "{\n"
         << "  \"units\": {\"t_seconds\": \"s\", \"V0_recoils\": \"E_rec\", "
            "\"q\": \"Brillouin zone\", \"q_prime\": \"Brillouin zone\", \"beta\": \"rad\"},\n"
         << "  \"omega_rec_rad_per_s\": " << format_double(controls.recoil_frequency) << ",\n"
         << "  \"duration_natural\": " << format_double(controls.duration_natural) << ",\n"
         << "  \"slew_duration_natural\": " << format_double(controls.slew_duration) << ",\n"
         << "  \"protocol\": \"" << controls.protocol_descriptor << "\",\n"
         << "  \"impulses\": [";
    for (std::size_t i = 0; i < controls.impulses.size(); ++i) {
        const auto& imp = controls.impulses[i];
        meta << (i ? ", " : "") << "{\"location\": \""
             << (imp.location == ImpulseLocation::start ? "start" : "end")
             << "\", \"axis\": \"z\", \"area\": " << format_double(imp.area) << "}";
    }
    meta << "]\n}\n";
}

VerificationReport displacement_unitary_check() {
    const Mat2 sx = {{{0.0, 1.0}, {1.0, 0.0}}};
    const Mat2 sy = {{{0.0, complexd(0.0, -1.0)}, {complexd(0.0, 1.0), 0.0}}};
    const Mat2 neg_sx = {{{0.0, -1.0}, {-1.0, 0.0}}};

    VerificationReport report;
    double worst = 0.0;

    // identity displacement leaves sigma_x alone
    {
        const Mat2 u = displacement(0.0);
        worst = std::max(worst, max_abs_diff(mul(mul(dagger(u), sx), u), sx));
    }
    // quarter-period displacement conjugates sigma_x into sigma_y
    {
        const Mat2 u = displacement(0.25);
        worst = std::max(worst, max_abs_diff(mul(mul(dagger(u), sx), u), sy));
    }
    // half-period displacement flips the sign of sigma_x
    {
        const Mat2 u = displacement(0.5);
        worst = std::max(worst, max_abs_diff(mul(mul(dagger(u), sx), u), neg_sx));
    }

    report.max_abs_error = worst;
    report.passed = worst <= 1e-15;
    report.detail = "displacement conjugation identities, max deviation " + format_double(worst);
    return report;
}

}  // namespace qdrive
