#include "qdrive/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "qdrive/adiabatic.hpp"
#include "qdrive/analysis.hpp"
#include "qdrive/errors.hpp"
#include "qdrive/protocols.hpp"

namespace qdrive {

namespace {

using Row = std::vector<std::string>;
using Task = std::function<Row()>;

// run tasks concurrently, keep results in input order
std::vector<Row> run_tasks(const std::vector<Task>& tasks, int workers) {
    std::vector<Row> rows(tasks.size());
    if (workers <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) rows[i] = tasks[i]();
        return rows;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            rows[i] = tasks[i]();
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(workers, static_cast<int>(tasks.size()));
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

struct FidelityOutcome {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool converged = true;
};

// non-throwing fidelity with a step-doubling flag (figure rows carry the
// flag in a column instead of aborting the grid)
FidelityOutcome fidelity_with_flag(const ProtocolSchedule& s, const PropagatorConfig& cfg) {
    const QuantumState initial = eigensystem(s.base_gamma(0.0), s.base_omega(0.0)).ground;
    const QuantumState target = eigensystem(s.base_gamma(1.0), s.base_omega(1.0)).ground;
    Trajectory traj = propagate(s, initial, cfg);
    FidelityOutcome out;
    out.value = std::min(1.0, std::max(0.0, overlap2(target, traj.final_state)));
    out.converged = traj.converged;
    return out;
}

double endpoint_overlap(double omega) {
    const QuantumState gi = eigensystem(-2.0, omega).ground;
    const QuantumState gf = eigensystem(2.0, omega).ground;
    return std::abs(inner(gf, gi));
}

std::string bool_cell(bool v) { return v ? "true" : "false"; }

std::string json_array(const std::vector<double>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_double(v[i]);
    os << ']';
    return os.str();
}

std::string json_kinds(const std::vector<ProtocolKind>& kinds) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < kinds.size(); ++i)
        os << (i ? "," : "") << '"' << to_string(kinds[i]) << '"';
    os << ']';
    return os.str();
}

ProtocolSchedule build_kind(ProtocolKind kind, double omega, double duration) {
    switch (kind) {
        case ProtocolKind::lz_linear: return lz_linear(omega, duration);
        case ProtocolKind::roland_cerf: {
            // duration mapped to epsilon through the duration relation
            const double t_lim = 1.0 / (omega * std::sqrt(4.0 + omega * omega));
            return roland_cerf(omega, t_lim / duration);
        }
        case ProtocolKind::composite: {
            ProtocolSchedule s = composite_pulse(omega, 0.0, endpoint_overlap(omega));
            s.duration = duration;  // played at the requested duration
            return s;
        }
        case ProtocolKind::superadiabatic_linear: return superadiabatic_linear(omega, duration);
        case ProtocolKind::superadiabatic_tangent: return superadiabatic_tangent(omega, duration);
        case ProtocolKind::custom: break;
    }
    throw invalid_parameter("cannot build schedule for kind 'custom'");
}

// linear sweep with only the coupling channel transformed (no Gamma
// correction, no impulses); the comparison series of the fig3c panel
ProtocolSchedule lz_coupling_only(double omega, double duration) {
    const ProtocolSchedule base = lz_linear(omega, duration);
    const ProtocolSchedule transformed = superadiabatic_transform(base);
    ProtocolSchedule s;
    s.kind = ProtocolKind::custom;
    s.duration = duration;
    s.gamma = base.gamma;
    s.omega = transformed.omega;
    s.base_gamma = base.gamma;
    s.base_omega = base.omega;
    s.params = {{"omega", omega}, {"T", duration}};
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    if (std::isnan(v)) return "nan";
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

int resolve_worker_count(int requested) {
    if (const char* env = std::getenv("QDRIVE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

std::string to_string(ExperimentName name) {
    switch (name) {
        case ExperimentName::fig2d: return "fig2d";
        case ExperimentName::fig2e: return "fig2e";
        case ExperimentName::fig3c: return "fig3c";
        case ExperimentName::fig3d: return "fig3d";
        case ExperimentName::fig4a: return "fig4a";
        case ExperimentName::fig4b: return "fig4b";
        case ExperimentName::custom_sweep: return "custom-sweep";
    }
    return "custom-sweep";
}

ExperimentSpec builtin_spec(ExperimentName name) {
    ExperimentSpec spec;
    spec.name = name;
    spec.propagator.steps = 4096;
    spec.propagator.convergence_check = true;

    auto linspace = [](double a, double b, int n) {
        std::vector<double> v;
        v.reserve(n);
        for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
        return v;
    };

    switch (name) {
        case ExperimentName::fig2d:
            spec.omega_grid = linspace(0.3, 1.0, 15);
            spec.kinds = {ProtocolKind::composite, ProtocolKind::roland_cerf,
                          ProtocolKind::lz_linear};
            spec.target_fidelity = 0.9;
            break;
        case ExperimentName::fig2e:
            spec.omega_grid = {0.5};
            spec.duration_grid = linspace(0.5, 12.0, 24);
            spec.kinds = {ProtocolKind::composite, ProtocolKind::roland_cerf,
                          ProtocolKind::lz_linear};
            break;
        case ExperimentName::fig3c:
            spec.omega_grid = {0.55};
            spec.duration_grid = linspace(0.5, 10.0, 20);
            spec.kinds = {ProtocolKind::lz_linear, ProtocolKind::superadiabatic_linear,
                          ProtocolKind::custom};  // custom = coupling-only variant
            break;
        case ExperimentName::fig3d:
            spec.omega_grid = {0.55};
            spec.duration_grid = {2.0};
            spec.kinds = {ProtocolKind::lz_linear, ProtocolKind::superadiabatic_linear,
                          ProtocolKind::superadiabatic_tangent};
            spec.propagator.record_trajectory = true;
            break;
        case ExperimentName::fig4a:
            spec.omega_grid = {0.5};
            spec.duration_grid = {5.9};
            spec.deviation_grid = linspace(-0.5, 1.0, 31);
            spec.kinds = {ProtocolKind::superadiabatic_tangent};
            break;
        case ExperimentName::fig4b:
            spec.omega_grid = linspace(0.3, 1.0, 15);  // realized coupling axis
            spec.kinds = {ProtocolKind::superadiabatic_tangent, ProtocolKind::composite,
                          ProtocolKind::roland_cerf, ProtocolKind::lz_linear};
            spec.target_fidelity = 0.9;
            break;
        case ExperimentName::custom_sweep:
            break;
    }
    return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    const bool needs_duration = spec.name == ExperimentName::fig2e ||
                                spec.name == ExperimentName::fig3c ||
                                spec.name == ExperimentName::fig3d ||
                                spec.name == ExperimentName::fig4a;
    if (spec.omega_grid.empty() || spec.kinds.empty() ||
        (needs_duration && spec.duration_grid.empty()) ||
        (spec.name == ExperimentName::fig4a && spec.deviation_grid.empty())) {
        throw invalid_parameter("experiment grid is empty");
    }

    PropagatorConfig cfg = spec.propagator;
    PropagatorConfig search_cfg = cfg;
    search_cfg.convergence_check = false;  // searches verify their own target match
    search_cfg.record_trajectory = false;

    ExperimentResult result;
    std::vector<Task> tasks;

    auto guarded = [](std::function<Row()> fn, Row on_error_prefix) {
        return Task([fn = std::move(fn), on_error_prefix = std::move(on_error_prefix)]() -> Row {
            try {
                return fn();
            } catch (const error& e) {
                Row r = on_error_prefix;
                r.push_back(std::string("error: ") + e.what());
                return r;
            }
        });
    };

    switch (spec.name) {
        case ExperimentName::fig2d: {
            result.columns = {"kind", "omega", "target_fidelity", "time", "status"};
            for (ProtocolKind kind : spec.kinds) {
                for (double w : spec.omega_grid) {
                    const double target = spec.target_fidelity;
                    tasks.push_back(guarded(
                        [kind, w, target, search_cfg]() -> Row {
                            double t = 0.0;
                            double reported_target = target;
                            if (kind == ProtocolKind::composite) {
                                // exact transfer at the speed-limit duration
                                t = std::acos(endpoint_overlap(w)) / w;
                                reported_target = 1.0;
                            } else {
                                const SearchFamily family = kind == ProtocolKind::lz_linear
                                                                ? SearchFamily::lz_linear
                                                                : SearchFamily::roland_cerf;
                                t = time_to_fidelity(family, w, target, search_cfg);
                            }
                            return {to_string(kind), format_double(w),
                                    format_double(reported_target), format_double(t), "ok"};
                        },
                        {to_string(kind), format_double(w), format_double(target), "nan"}));
                }
            }
            break;
        }
        case ExperimentName::fig2e:
        case ExperimentName::fig3c: {
            result.columns = {"kind", "omega", "T", "fidelity", "converged", "status"};
            const bool fig3c = spec.name == ExperimentName::fig3c;
            for (ProtocolKind kind : spec.kinds) {
                for (double w : spec.omega_grid) {
                    for (double T : spec.duration_grid) {
                        tasks.push_back(guarded(
                            [kind, w, T, cfg, fig3c]() -> Row {
                                const ProtocolSchedule s =
                                    (fig3c && kind == ProtocolKind::custom)
                                        ? lz_coupling_only(w, T)
                                        : build_kind(kind, w, T);
                                const FidelityOutcome f = fidelity_with_flag(s, cfg);
                                const std::string label =
                                    (fig3c && kind == ProtocolKind::custom) ? "lz_coupling_only"
                                                                            : to_string(kind);
                                return {label, format_double(w), format_double(T),
                                        format_double(f.value), bool_cell(f.converged), "ok"};
                            },
                            {(fig3c && kind == ProtocolKind::custom) ? "lz_coupling_only"
                                                                     : to_string(kind),
                             format_double(w), format_double(T), "nan", "false"}));
                    }
                }
            }
            break;
        }
        case ExperimentName::fig3d: {
            result.columns = {"kind", "omega", "T", "tau", "fidelity", "converged", "status"};
            // one task per series; each emits its whole trajectory
            const double w = spec.omega_grid.front();
            const double T = spec.duration_grid.front();
            PropagatorConfig traj_cfg = cfg;
            traj_cfg.record_trajectory = true;
            std::vector<std::vector<Row>> out(spec.kinds.size());
            std::vector<Task> series_tasks;
            for (std::size_t i = 0; i < spec.kinds.size(); ++i) {
                const ProtocolKind kind = spec.kinds[i];
                series_tasks.push_back([kind, w, T, traj_cfg, &out, i]() -> Row {
                    try {
                        const ProtocolSchedule s = build_kind(kind, w, T);
                        const QuantumState initial =
                            eigensystem(s.base_gamma(0.0), s.base_omega(0.0)).ground;
                        const Trajectory traj = propagate(s, initial, traj_cfg);
                        for (const auto& p : traj.points) {
                            out[i].push_back({to_string(kind), format_double(w), format_double(T),
                                              format_double(p.tau), format_double(p.fidelity),
                                              bool_cell(traj.converged), "ok"});
                        }
                    } catch (const error& e) {
                        out[i].push_back({to_string(kind), format_double(w), format_double(T),
                                          "nan", "nan", "false", std::string("error: ") + e.what()});
                    }
                    return {};
                });
            }
            run_tasks(series_tasks, resolve_worker_count(spec.workers));
            for (auto& series_rows : out) {
                for (auto& r : series_rows) result.rows.push_back(std::move(r));
            }
            break;
        }
        case ExperimentName::fig4a: {
            result.columns = {"axis",  "delta",     "omega", "T",
                              "fidelity", "converged", "status"};
            const double w = spec.omega_grid.front();
            const double T = spec.duration_grid.front();
            const ProtocolSchedule ideal = superadiabatic_tangent(w, T);
            for (RobustnessAxis axis : {RobustnessAxis::duration, RobustnessAxis::coupling}) {
                const char* axis_name = axis == RobustnessAxis::duration ? "duration" : "coupling";
                for (double d : spec.deviation_grid) {
                    tasks.push_back(guarded(
                        [ideal, axis, d, w, T, cfg, axis_name]() -> Row {
                            const RobustnessScan scan = robustness_scan(ideal, axis, {d}, cfg);
                            const std::string status = scan.skipped[0] ? "skipped" : "ok";
                            return {axis_name, format_double(d), format_double(w),
                                    format_double(T), format_double(scan.fidelities[0]),
                                    bool_cell(true), status};
                        },
                        {axis_name, format_double(d), format_double(w), format_double(T), "nan",
                         "false"}));
                }
            }
            break;
        }
        case ExperimentName::fig4b: {
            result.columns = {"kind", "omega_prime", "time", "omega_internal", "status"};
            for (ProtocolKind kind : spec.kinds) {
                for (double wp : spec.omega_grid) {
                    const double target = spec.target_fidelity;
                    tasks.push_back(guarded(
                        [kind, wp, target, search_cfg]() -> Row {
                            double t = 0.0;
                            double w_star = wp;
                            switch (kind) {
                                case ProtocolKind::superadiabatic_tangent: {
                                    const MinTimeResult r = min_time_at_coupling(wp);
                                    t = r.t_min;
                                    w_star = r.omega_star;
                                    break;
                                }
                                case ProtocolKind::composite:
                                    t = std::acos(endpoint_overlap(wp)) / wp;
                                    break;
                                case ProtocolKind::lz_linear:
                                    t = time_to_fidelity(SearchFamily::lz_linear, wp, target,
                                                         search_cfg);
                                    break;
                                case ProtocolKind::roland_cerf:
                                    t = time_to_fidelity(SearchFamily::roland_cerf, wp, target,
                                                         search_cfg);
                                    break;
                                default:
                                    throw invalid_parameter("fig4b: unsupported kind");
                            }
                            return {to_string(kind), format_double(wp), format_double(t),
                                    format_double(w_star), "ok"};
                        },
                        {to_string(kind), format_double(wp), "nan", "nan"}));
                }
            }
            break;
        }
        case ExperimentName::custom_sweep: {
            if (spec.axis.has_value()) {
                result.columns = {"kind",     "axis",      "delta", "omega", "T",
                                  "fidelity", "converged", "status"};
                const double w = spec.omega_grid.front();
                if (spec.duration_grid.empty()) {
                    throw invalid_parameter("robustness sweep requires a duration");
                }
                const double T = spec.duration_grid.front();
                const RobustnessAxis axis = *spec.axis;
                const char* axis_name = axis == RobustnessAxis::duration ? "duration" : "coupling";
                for (ProtocolKind kind : spec.kinds) {
                    const ProtocolSchedule ideal = build_kind(kind, w, T);
                    for (double d : spec.deviation_grid) {
                        tasks.push_back(guarded(
                            [ideal, axis, d, w, T, cfg, axis_name, kind]() -> Row {
                                const RobustnessScan scan = robustness_scan(ideal, axis, {d}, cfg);
                                return {to_string(kind), axis_name, format_double(d),
                                        format_double(w), format_double(T),
                                        format_double(scan.fidelities[0]), bool_cell(true),
                                        scan.skipped[0] ? "skipped" : "ok"};
                            },
                            {to_string(kind), axis_name, format_double(d), format_double(w),
                             format_double(T), "nan", "false"}));
                    }
                }
            } else if (!spec.duration_grid.empty()) {
                result.columns = {"kind", "omega", "T", "fidelity", "converged", "status"};
                for (ProtocolKind kind : spec.kinds) {
                    for (double w : spec.omega_grid) {
                        for (double T : spec.duration_grid) {
                            tasks.push_back(guarded(
                                [kind, w, T, cfg]() -> Row {
                                    const FidelityOutcome f =
                                        fidelity_with_flag(build_kind(kind, w, T), cfg);
                                    return {to_string(kind), format_double(w), format_double(T),
                                            format_double(f.value), bool_cell(f.converged), "ok"};
                                },
                                {to_string(kind), format_double(w), format_double(T), "nan",
                                 "false"}));
                        }
                    }
                }
            } else {
                result.columns = {"kind", "omega", "target_fidelity", "time", "status"};
                for (ProtocolKind kind : spec.kinds) {
                    const SearchFamily family = kind == ProtocolKind::lz_linear
                                                    ? SearchFamily::lz_linear
                                                    : SearchFamily::roland_cerf;
                    if (kind != ProtocolKind::lz_linear && kind != ProtocolKind::roland_cerf) {
                        throw invalid_parameter(
                            "time-to-fidelity sweeps support lz_linear and roland_cerf only");
                    }
                    for (double w : spec.omega_grid) {
                        const double target = spec.target_fidelity;
                        tasks.push_back(guarded(
                            [family, kind, w, target, search_cfg]() -> Row {
                                const double t = time_to_fidelity(family, w, target, search_cfg);
                                return {to_string(kind), format_double(w), format_double(target),
                                        format_double(t), "ok"};
                            },
                            {to_string(kind), format_double(w), format_double(target), "nan"}));
                    }
                }
            }
            break;
        }
    }

    if (spec.name != ExperimentName::fig3d) {
        result.rows = run_tasks(tasks, resolve_worker_count(spec.workers));
    }

    std::ostringstream meta;
    meta << "{\"artifact\":\"qdrive\",\"version\":\"" << kArtifactVersion << "\""
         << ",\"experiment\":\"" << to_string(spec.name) << "\""
         << ",\"omega_grid\":" << json_array(spec.omega_grid)
         << ",\"duration_grid\":" << json_array(spec.duration_grid)
         << ",\"deviation_grid\":" << json_array(spec.deviation_grid)
         << ",\"kinds\":" << json_kinds(spec.kinds)
         << ",\"target_fidelity\":" << format_double(spec.target_fidelity)
         << ",\"steps\":" << spec.propagator.steps
         << ",\"convergence_check\":" << (spec.propagator.convergence_check ? "true" : "false");
    if (spec.timestamps) {
        meta << ",\"generated_at\":" << std::time(nullptr);
    }
    std::string base = meta.str();
    std::ostringstream full;
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(base)));
    full << base << ",\"config_hash\":\"" << hash_hex << "\"}";
    result.metadata_json = full.str();
    return result;
}

void write_result_csv(const ExperimentResult& result, std::ostream& out) {
    out << "# " << result.metadata_json << '\n';
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
        out << (i ? "," : "") << result.columns[i];
    }
    out << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        // pad missing trailing cells (error rows carry a status tail)
        for (std::size_t i = row.size(); i < result.columns.size(); ++i) out << ',';
        out << '\n';
    }
}

void write_result_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw error("cannot open " + path + " for writing");
    write_result_csv(result, f);
}

}  // namespace qdrive
