#include "CLI11.hpp"

#include "config.hpp"
#include "report.hpp"

#include "zcsim/analysis.hpp"
#include "zcsim/ballast.hpp"
#include "zcsim/elements.hpp"
#include "zcsim/errors.hpp"
#include "zcsim/solver.hpp"
#include "zcsim/square_wave.hpp"
#include "zcsim/switched.hpp"
#include "zcsim/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace {

using namespace zcsim;
using zctool::Config;
using zctool::fmt17;
using zctool::Summary;
using zctool::Table;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    int nh = -1;
    double tol = -1.0;
    int periods = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "INI config file ([section] key = value)");
    cmd->add_option("--out", o.out_dir, "output directory (created if missing)");
    cmd->add_option("--nh", o.nh, "harmonic count override");
    cmd->add_option("--tol", o.tol, "solver tolerance override");
    cmd->add_option("--periods", o.periods, "period count override");
}

Config load_config(const CommonOpts& o) {
    Config cfg;
    if (!o.config_path.empty()) cfg = Config::from_file(o.config_path);
    if (o.nh >= 0) cfg.set("solver.nh", std::to_string(o.nh));
    if (o.tol >= 0.0) cfg.set("solver.tol", fmt17(o.tol));
    if (o.periods >= 0) cfg.set("run.periods", std::to_string(o.periods));
    return cfg;
}

// Runs a command body under the uniform error contract: any toolkit error
// becomes an "error = <code>" record in the summary, a line on stderr and a
// nonzero exit status. The summary is written in every case.
int guarded(const CommonOpts& o, const char* scenario,
            const std::function<void(const Config&, Summary&, const std::string&)>& body) {
    std::filesystem::create_directories(o.out_dir);
    Summary summary;
    summary.add("scenario", scenario);
    Config cfg;
    try {
        cfg = load_config(o);
        body(cfg, summary, o.out_dir);
    } catch (const Error& e) {
        summary.add("error", e.code());
        summary.add("error_message", std::string(e.what()));
        std::fprintf(stderr, "error: %s\n", e.what());
    } catch (const std::exception& e) {
        summary.add("error", "internal");
        summary.add("error_message", std::string(e.what()));
        std::fprintf(stderr, "error: %s\n", e.what());
    }
    for (const auto& [k, v] : cfg.used()) summary.add("config." + k, v);
    summary.write(o.out_dir + "/summary.txt");
    return summary.has_error() ? 1 : 0;
}

// [circuit] section shared by lamp-steady, lamp-sweep and decompose.
LampCircuit circuit_from(const Config& cfg) {
    const double r = cfg.get_num("circuit.ballast_r", 0.0);
    const double l = cfg.get_num("circuit.ballast_l", 1.0);
    BallastDescriptor ballast =
        cfg.has("circuit.ballast_c")
            ? BallastDescriptor::series(r, l, cfg.get_num("circuit.ballast_c", 0.0))
            : BallastDescriptor::series(r, l);

    const std::string kind = cfg.get_str("circuit.element", "lamp");
    const double a = cfg.get_num("circuit.a", 1.0);
    LampElement element = SignHardlimiter(1.0);
    if (kind == "hardlimiter") {
        element = SignHardlimiter(a);
    } else if (kind == "lamp") {
        const double lp = cfg.get_num("circuit.l_prime", 0.0);
        const double ld = cfg.get_num("circuit.l_design", l);
        element = HysteresisLamp(a, lp, ld);
    } else {
        throw InvalidArgument("circuit.element must be lamp or hardlimiter, got " + kind);
    }

    DriveSpec drive = NamedSinDrive{cfg.get_num("circuit.u", std::numbers::pi)};
    const double omega = cfg.get_num("circuit.omega", 2.0 * std::numbers::pi);
    return LampCircuit{std::move(ballast), std::move(element), std::move(drive), omega};
}

struct SolverOpts {
    int nh = 999;
    double tol = 1e-10;
    int samples = 4096;
};

SolverOpts solver_from(const Config& cfg) {
    SolverOpts s;
    s.nh = cfg.get_int("solver.nh", s.nh);
    s.tol = cfg.get_num("solver.tol", s.tol);
    s.samples = cfg.get_int("solver.samples", s.samples);
    return s;
}

PeriodicWaveform sampled_drive(const LampCircuit& c, int n_samples) {
    const double T = 2.0 * std::numbers::pi / c.omega;
    if (const auto* sine = std::get_if<NamedSinDrive>(&c.drive)) {
        const double u = sine->amplitude;
        const double w = c.omega;
        return sample_function(
            T, n_samples, [u, w](double t) { return u * std::sin(w * t); }, Unit::volt);
    }
    const auto& wf = std::get<WaveformDrive>(c.drive);
    if (wf.shape.size() != n_samples)
        throw GridMismatch("drive shape grid does not match the sample count");
    PeriodicWaveform out = wf.shape;
    for (double& x : out.samples) x *= wf.amplitude;
    out.unit = Unit::volt;
    return out;
}

// The power identity is stated for the lamp law; a hardlimiter is the
// L' = 0 lamp with the same front amplitude.
HysteresisLamp power_identity_element(const LampElement& e) {
    if (const auto* h = std::get_if<SignHardlimiter>(&e))
        return HysteresisLamp(h->A, 0.0, 1.0);
    return std::get<HysteresisLamp>(e);
}

double mean_abs(const PeriodicWaveform& w) {
    double acc = 0.0;
    for (double x : w.samples) acc += std::fabs(x);
    return acc / static_cast<double>(w.size());
}

int cmd_lamp_steady(const CommonOpts& o) {
    return guarded(o, "lamp-steady", [](const Config& cfg, Summary& s, const std::string& out) {
        const LampCircuit c = circuit_from(cfg);
        const SolverOpts sopt = solver_from(cfg);
        const SteadyState ss = steady_state_two_crossing(c, sopt.tol, sopt.nh, sopt.samples);
        const PeriodicWaveform vin = sampled_drive(c, sopt.samples);

        Table wf({"t", "current", "voltage", "drive"});
        for (int j = 0; j < ss.current.size(); ++j)
            wf.add_row({fmt17(ss.current.time_at(j)), fmt17(ss.current.samples[j]),
                        fmt17(ss.voltage.samples[j]), fmt17(vin.samples[j])});
        wf.write(out + "/waveforms.csv");

        const HysteresisLoop loop = extract_loop(ss.current, ss.voltage);
        Table lp({"current", "voltage"});
        for (std::size_t j = 0; j < loop.current.size(); ++j)
            lp.add_row({fmt17(loop.current[j]), fmt17(loop.voltage[j])});
        lp.write(out + "/loop.csv");

        s.add("t1", ss.crossings.time(0));
        s.add("t2", ss.crossings.time(1));
        s.add("iterations", ss.iterations);
        s.add("residual", ss.residual);
        const double a1 = element_amplitude(c.element);
        s.add("power_element", average_power(ss.current, ss.voltage));
        s.add("power_source", average_power(ss.current, vin));
        s.add("rectified_power", a1 * mean_abs(ss.current));
        if (a1 > 0.0)
            s.add("power_identity_residual",
                  lamp_power_identity_residual(ss.current, power_identity_element(c.element)));
        s.add("loop_area", loop.signed_area);
        s.add("loop_classification", loop_classification_name(classify_loop(loop)));
    });
}

int cmd_lamp_sweep(const CommonOpts& o) {
    return guarded(o, "lamp-sweep", [](const Config& cfg, Summary& s, const std::string& out) {
        const LampCircuit c = circuit_from(cfg);
        const SolverOpts sopt = solver_from(cfg);

        std::vector<double> grid;
        if (cfg.has("sweep.u_grid")) {
            grid = cfg.get_list("sweep.u_grid", {});
        } else {
            const double lo = cfg.get_num("sweep.u_min", 2.0);
            const double hi = cfg.get_num("sweep.u_max", 50.0);
            const int n = cfg.get_int("sweep.points", 25);
            const std::string spacing = cfg.get_str("sweep.spacing", "log");
            if (n < 1) throw InvalidArgument("sweep.points must be >= 1");
            if (!(lo > 0.0) || !(hi >= lo))
                throw InvalidArgument("sweep amplitude range must satisfy 0 < u_min <= u_max");
            for (int k = 0; k < n; ++k) {
                const double f = n == 1 ? 0.0 : static_cast<double>(k) /(n - 1);
                if (spacing == "log")
                    grid.push_back(lo * std::pow(hi / lo, f));
                else if (spacing == "linear")
                    grid.push_back(lo + (hi - lo) * f);
                else
                    throw InvalidArgument("sweep.spacing must be log or linear");
            }
        }

        const auto rows = power_scaling_sweep(c, grid, sopt.tol, sopt.nh, sopt.samples);

        Table tab({"U", "P", "t1", "slope"});
        double slope_min = std::numeric_limits<double>::infinity();
        double slope_max = -slope_min;
        for (const auto& r : rows) {
            const bool have_slope = std::isfinite(r.loglog_slope);
            tab.add_row({fmt17(r.drive_amplitude), fmt17(r.power), fmt17(r.t1),
                         have_slope ? fmt17(r.loglog_slope) : std::string()});
            if (have_slope) {
                slope_min = std::min(slope_min, r.loglog_slope);
                slope_max = std::max(slope_max, r.loglog_slope);
            }
        }
        tab.write(out + "/sweep.csv");

        s.add("rows", static_cast<int>(rows.size()));
        s.add("u_first", rows.front().drive_amplitude);
        s.add("u_last", rows.back().drive_amplitude);
        s.add("power_first", rows.front().power);
        s.add("power_last", rows.back().power);
        if (rows.size() >= 2) {
            s.add("slope_min", slope_min);
            s.add("slope_max", slope_max);
        }
    });
}

int cmd_powerlaw_loop(const CommonOpts& o) {
    return guarded(o, "powerlaw-loop", [](const Config& cfg, Summary& s, const std::string& out) {
        const PowerLawBranch rising(cfg.get_num("element.d_rising", 1.0),
                                    cfg.get_num("element.alpha_rising", 1.0));
        const PowerLawBranch falling(cfg.get_num("element.d_falling", 1.0),
                                     cfg.get_num("element.alpha_falling", 2.0));
        const PowerLawHysteresisElement elem(rising, falling);

        const ReturnPoint rp = powerlaw_return_point(elem);
        Table rpt({"i_r", "v_r"});
        rpt.add_row({fmt17(rp.i_r), fmt17(rp.v_r)});
        rpt.write(out + "/return_point.csv");

        const double amplitude = cfg.get_num("study.amplitude", 2.0);
        const std::vector<double> omegas = cfg.get_list("study.omegas", {1.0, 10.0});
        const int n = cfg.get_int("study.samples", 4096);
        if (n < 16) throw InvalidArgument("study.samples must be >= 16");

        // The loop point set depends on the drive phase only: i is sampled
        // off the unit sine and the branch choice off the sign of its
        // derivative, so every omega writes byte-identical loop files.
        std::vector<double> iv(n), vv(n);
        int carry = 1;
        for (int j = 0; j < n; ++j) {
            const double ph = 2.0 * std::numbers::pi * j / n;
            iv[j] = amplitude * std::sin(ph);
            const int ds = static_cast<int>(sign0(std::cos(ph)));
            if (ds != 0) carry = ds;
            vv[j] = powerlaw_voltage(elem, iv[j], carry);
        }
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            Table lp({"current", "voltage"});
            for (int j = 0; j < n; ++j) lp.add_row({fmt17(iv[j]), fmt17(vv[j])});
            lp.write(out + "/loop_w" + std::to_string(k) + ".csv");
        }

        const auto study = frequency_dependence_study(elem, amplitude, omegas, n);
        Table ft({"omega", "signed_area", "classification"});
        for (const auto& p : study)
            ft.add_row({fmt17(p.omega), fmt17(p.signed_area),
                        loop_classification_name(p.classification)});
        ft.write(out + "/freq_study.csv");

        bool rate_independent = true;
        for (const auto& p : study)
            if (p.signed_area != study.front().signed_area) rate_independent = false;

        s.add("return_i", rp.i_r);
        s.add("return_v", rp.v_r);
        s.add("loop_area", study.front().signed_area);
        s.add("loop_classification", loop_classification_name(study.front().classification));
        s.add_flag("rate_independent", rate_independent);
        s.add("omega_count", static_cast<int>(omegas.size()));
    });
}

int cmd_memristor_demo(const CommonOpts& o) {
    return guarded(o, "memristor-demo", [](const Config& cfg, Summary& s, const std::string& out) {
        const double r0 = cfg.get_num("element.r0", 1.0);
        const double k = cfg.get_num("element.k", 0.5);
        const double q0 = cfg.get_num("element.q0", 0.0);
        const double amp = cfg.get_num("drive.amplitude", 1.0);
        const double w = cfg.get_num("drive.omega", 2.0 * std::numbers::pi);
        const int n = cfg.get_int("drive.samples", 4096);
        const int periods = cfg.get_int("run.periods", 3);
        if (!(w > 0.0)) throw InvalidArgument("drive.omega must be positive");
        if (!(amp > 0.0)) throw InvalidArgument("drive.amplitude must be positive");
        if (periods < 1) throw InvalidArgument("run.periods must be >= 1");

        const ChargeControlledInstance inst(r0, k);
        const MemristiveSystem sys = inst.to_memristive(q0);

        // Sine current drives the charge state along its exact integral
        // q0 + (amp/w)(1 - cos), so the sampled run carries no ODE error.
        const double T = 2.0 * std::numbers::pi / w;
        PeriodicWaveform iw = sample_function(
            T, n, [amp, w](double t) { return amp * std::sin(w * t); }, Unit::ampere);
        std::vector<double> vs(n);
        for (int j = 0; j < n; ++j) {
            const double t = iw.time_at(j);
            const double q = q0 + amp / w * (1.0 - std::cos(w * t));
            vs[j] = memristive_voltage(sys, {q}, iw.samples[j]);
        }
        const PeriodicWaveform vw(T, vs, Unit::volt);

        const HysteresisLoop loop = extract_loop(iw, vw);
        Table lp({"current", "voltage"});
        for (std::size_t j = 0; j < loop.current.size(); ++j)
            lp.add_row({fmt17(loop.current[j]), fmt17(loop.voltage[j])});
        lp.write(out + "/loop.csv");

        double vmax = 0.0;
        for (double x : vw.samples) vmax = std::max(vmax, std::fabs(x));
        const bool pinched = pinch_test(loop, 1e-9 * vmax);

        const FluxChargeTrajectory fc = flux_charge(iw, vw, periods);
        Table pq({"t", "psi", "q"});
        for (std::size_t j = 0; j < fc.time.size(); ++j)
            pq.add_row({fmt17(fc.time[j]), fmt17(fc.flux[j]), fmt17(fc.charge[j])});
        pq.write(out + "/psi_q.csv");

        // The trajectory integrals start at zero, so against them the flux
        // law reads psi = (r0 + k q0) q + k q^2 / 2.
        double fit_err = 0.0, psi_max = 0.0;
        for (std::size_t j = 0; j < fc.time.size(); ++j) {
            const double fit = (r0 + k * q0) * fc.charge[j] + 0.5 * k * fc.charge[j] * fc.charge[j];
            fit_err = std::max(fit_err, std::fabs(fc.flux[j] - fit));
            psi_max = std::max(psi_max, std::fabs(fc.flux[j]));
        }

        s.add_flag("pinch", pinched);
        s.add("loop_area", loop.signed_area);
        s.add("loop_classification", loop_classification_name(classify_loop(loop)));
        s.add("psi_fit_residual", psi_max > 0.0 ? fit_err / psi_max : fit_err);
        s.add("psi_max", psi_max);
        s.add("q_max", *std::max_element(fc.charge.begin(), fc.charge.end()));
    });
}

SwitchedLinearSystem switched_from(const Config& cfg) {
    SwitchedLinearSystem sys;
    sys.dim = cfg.get_int("system.dim", 2);
    if (sys.dim < 1) throw InvalidArgument("system.dim must be >= 1");
    for (int k = 0;; ++k) {
        const std::string akey = "system.mode" + std::to_string(k) + "_a";
        if (!cfg.has(akey)) break;
        LinearMode m;
        m.a = cfg.get_list(akey, {});
        if (static_cast<int>(m.a.size()) != sys.dim * sys.dim)
            throw InvalidArgument(akey + " must hold dim*dim row-major entries");
        const std::string bkey = "system.mode" + std::to_string(k) + "_b";
        m.b = cfg.get_list(bkey, std::vector<double>(sys.dim, 0.0));
        if (static_cast<int>(m.b.size()) != sys.dim)
            throw InvalidArgument(bkey + " must hold dim entries");
        sys.modes.push_back(std::move(m));
    }
    if (sys.modes.empty()) throw InvalidArgument("no modes given (system.mode0_a missing)");
    sys.initial_mode = cfg.get_int("system.initial_mode", 0);

    const std::string rule = cfg.get_str("system.rule", "none");
    if (rule == "none") {
        sys.rule = NoSwitchRule{};
    } else if (rule == "prescribed") {
        PrescribedRule pr;
        pr.instants = cfg.get_list("system.prescribed_instants", {});
        for (double m : cfg.get_list("system.prescribed_modes", {})) {
            if (m != std::floor(m))
                throw InvalidArgument("system.prescribed_modes must be integers");
            pr.modes.push_back(static_cast<int>(m));
        }
        sys.rule = std::move(pr);
    } else if (rule == "level") {
        LevelRule lr;
        lr.state_index = cfg.get_int("system.level_index", 0);
        lr.level = cfg.get_num("system.level_value", 0.0);
        const std::string sense = cfg.get_str("system.level_sense", "both");
        if (sense == "rising")
            lr.sense = CrossingSense::rising;
        else if (sense == "falling")
            lr.sense = CrossingSense::falling;
        else if (sense == "both")
            lr.sense = CrossingSense::both;
        else
            throw InvalidArgument("system.level_sense must be rising, falling or both");
        const std::string mapping = cfg.get_str("system.level_mapping", "side");
        if (mapping == "toggle")
            lr.mapping = LevelRule::Mapping::toggle;
        else if (mapping == "side")
            lr.mapping = LevelRule::Mapping::side;
        else
            throw InvalidArgument("system.level_mapping must be toggle or side");
        lr.mode_above = cfg.get_int("system.level_mode_above", 0);
        lr.mode_below = cfg.get_int("system.level_mode_below", 1);
        sys.rule = lr;
    } else {
        throw InvalidArgument("system.rule must be none, prescribed or level, got " + rule);
    }

    sys.input.amplitude = cfg.get_num("input.amplitude", 0.0);
    sys.input.omega = cfg.get_num("input.omega", 1.0);
    sys.input.phase = cfg.get_num("input.phase", 0.0);
    const std::string shape = cfg.get_str("input.shape", "cos");
    if (shape == "cos")
        sys.input.cosine = true;
    else if (shape == "sin")
        sys.input.cosine = false;
    else
        throw InvalidArgument("input.shape must be cos or sin");
    return sys;
}

int cmd_switched_chaos(const CommonOpts& o) {
    return guarded(o, "switched-chaos", [](const Config& cfg, Summary& s, const std::string& out) {
        const SwitchedLinearSystem sys = switched_from(cfg);
        const std::vector<double> x0 =
            cfg.get_list("run.x0", std::vector<double>(sys.dim, 0.0));
        const double t_end = cfg.get_num("run.t_end", 10.0);
        const double dt = cfg.get_num("run.dt", 0.001);
        const int stride = cfg.get_int("run.stride", 1);
        if (stride < 1) throw InvalidArgument("run.stride must be >= 1");

        const SwitchedTrajectory traj = simulate_switched(sys, x0, t_end, dt);

        std::vector<std::string> headers{"t"};
        for (int c = 0; c < traj.dim; ++c) headers.push_back("x" + std::to_string(c + 1));
        headers.push_back("mode");
        Table tab(headers);
        for (int j = 0; j < traj.sample_count(); j += stride) {
            std::vector<std::string> row{fmt17(traj.times[j])};
            for (int c = 0; c < traj.dim; ++c) row.push_back(fmt17(traj.state_at(j, c)));
            row.push_back(std::to_string(traj.mode[j]));
            tab.add_row(std::move(row));
        }
        tab.write(out + "/trajectory.csv");

        const ClassificationResult cls = classify_switching(sys, traj);
        s.add("classification", switching_class_name(cls.kind));
        s.add("probe_instant_shift", cls.probe_instant_shift);
        s.add("switch_count", static_cast<int>(traj.switch_times.size()));
        s.add("aperiodicity", aperiodicity_measure(traj));

        if (cfg.get_bool("run.lyapunov", true)) {
            const double renorm = cfg.get_num("run.renorm", 1.0);
            const int skip = cfg.get_int("run.skip", 100);
            s.add("lambda", largest_lyapunov(sys, x0, t_end, renorm, dt, skip));
        }
    });
}

int cmd_poynting(const CommonOpts& o, double length, double radius, double voltage,
                 double current) {
    return guarded(o, "poynting", [&](const Config&, Summary& s, const std::string&) {
        const PoyntingBalance pb = poynting_balance(length, radius, voltage, current);
        s.add("length", length);
        s.add("radius", radius);
        s.add("voltage", voltage);
        s.add("current", current);
        s.add("surface_flow", pb.surface_flow);
        s.add("vi", pb.vi);
        s.add_flag("bit_identical",
                   std::memcmp(&pb.surface_flow, &pb.vi, sizeof(double)) == 0);
        s.print();
    });
}

int cmd_decompose(const CommonOpts& o) {
    return guarded(o, "decompose", [](const Config& cfg, Summary& s, const std::string& out) {
        const LampCircuit c = circuit_from(cfg);
        const SolverOpts sopt = solver_from(cfg);
        const SteadyState ss = steady_state_two_crossing(c, sopt.tol, sopt.nh, sopt.samples);

        const double a_eff = element_amplitude(c.element);
        const double l_tot =
            asymptotic_inductance(c.ballast, c.omega) + element_lead_inductance(c.element);
        const auto [i1, i2] = smooth_rough_decompose(ss, a_eff, l_tot);

        Table tab({"t", "i", "i1", "i2", "recombined"});
        double identity_err = 0.0, i2_max = 0.0;
        for (int j = 0; j < ss.current.size(); ++j) {
            const double rec = i1.samples[j] + i2.samples[j];
            identity_err = std::max(identity_err, std::fabs(ss.current.samples[j] - rec));
            i2_max = std::max(i2_max, std::fabs(i2.samples[j]));
            tab.add_row({fmt17(ss.current.time_at(j)), fmt17(ss.current.samples[j]),
                         fmt17(i1.samples[j]), fmt17(i2.samples[j]), fmt17(rec)});
        }
        tab.write(out + "/decompose.csv");

        const int n_max = std::min(400, sopt.samples / 2 - 1);
        const auto d2 = coefficient_decay_order(to_fourier(i2, n_max), 5,
                                                std::min(200, n_max));
        const auto d1 = coefficient_decay_order(to_fourier(i1, n_max), 3,
                                                std::min(40, n_max));
        s.add("i1_decay",
              d1.super_polynomial ? std::string("super-polynomial") : fmt17(d1.order));
        s.add("i2_decay",
              d2.super_polynomial ? std::string("super-polynomial") : fmt17(d2.order));
        s.add("identity_error", identity_err);
        s.add("i2_max_abs", i2_max);
        s.add_flag("i2_all_zero", i2_max == 0.0);
        s.add("t1", ss.crossings.time(0));
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zcsim: switching-element circuit steady states, hysteresis analysis "
                 "and switched-linear simulation"};
    app.require_subcommand(1);

    CommonOpts steady_o, sweep_o, powerlaw_o, memristor_o, chaos_o, poynting_o, decompose_o;
    double p_length = 3.0, p_radius = 0.01, p_voltage = 5.0, p_current = 2.0;

    add_common(app.add_subcommand("lamp-steady",
                                  "periodic steady state of the series lamp circuit"),
               steady_o);
    add_common(app.add_subcommand("lamp-sweep", "power scaling over a drive amplitude grid"),
               sweep_o);
    add_common(app.add_subcommand("powerlaw-loop",
                                  "rate-independent hysteresis loop of a power-law element"),
               powerlaw_o);
    add_common(app.add_subcommand("memristor-demo",
                                  "pinched loop and flux-charge curve of a charge-controlled "
                                  "resistor"),
               memristor_o);
    add_common(app.add_subcommand("switched-chaos",
                                  "switched-linear trajectory, classification and Lyapunov "
                                  "exponent"),
               chaos_o);
    CLI::App* poynting = app.add_subcommand("poynting", "surface power flow identity check");
    add_common(poynting, poynting_o);
    poynting->add_option("--length", p_length, "conductor length in meters");
    poynting->add_option("--radius", p_radius, "conductor radius in meters");
    poynting->add_option("--voltage", p_voltage, "terminal voltage in volts");
    poynting->add_option("--current", p_current, "terminal current in amperes");
    add_common(app.add_subcommand("decompose",
                                  "split a steady state into smooth and switching parts"),
               decompose_o);

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "lamp-steady") return cmd_lamp_steady(steady_o);
    if (sub == "lamp-sweep") return cmd_lamp_sweep(sweep_o);
    if (sub == "powerlaw-loop") return cmd_powerlaw_loop(powerlaw_o);
    if (sub == "memristor-demo") return cmd_memristor_demo(memristor_o);
    if (sub == "switched-chaos") return cmd_switched_chaos(chaos_o);
    if (sub == "poynting")
        return cmd_poynting(poynting_o, p_length, p_radius, p_voltage, p_current);
    if (sub == "decompose") return cmd_decompose(decompose_o);
    return 1;
}
