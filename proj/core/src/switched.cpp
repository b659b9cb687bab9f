#include "zcsim/switched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zcsim/errors.hpp"

namespace zcsim {

namespace {

constexpr long zeno_limit = 1000000;
constexpr double bound_limit = 1e6;

void validate_system(const SwitchedLinearSystem& sys) {
    const int d = sys.dim;
    if (d < 1) throw InvalidArgument("switched system needs dimension >= 1");
    if (sys.modes.empty()) throw InvalidArgument("switched system needs at least one mode");
    for (const LinearMode& m : sys.modes) {
        if (static_cast<int>(m.a.size()) != d * d || static_cast<int>(m.b.size()) != d)
            throw InvalidArgument("mode matrices must be d*d and d for the system dimension");
        for (double v : m.a)
            if (!std::isfinite(v)) throw InvalidArgument("mode matrix entries must be finite");
        for (double v : m.b)
            if (!std::isfinite(v)) throw InvalidArgument("mode input vectors must be finite");
    }
    const int nm = static_cast<int>(sys.modes.size());
    if (sys.initial_mode < 0 || sys.initial_mode >= nm)
        throw InvalidArgument("initial mode index out of range");

    if (const auto* pr = std::get_if<PrescribedRule>(&sys.rule)) {
        if (nm < 2) throw InvalidArgument("a switching rule needs at least two modes");
        if (pr->instants.size() != pr->modes.size())
            throw InvalidArgument("prescribed rule needs one target mode per instant");
        for (std::size_t k = 0; k < pr->instants.size(); ++k) {
            if (!std::isfinite(pr->instants[k]) || pr->instants[k] < 0.0)
                throw InvalidArgument("prescribed instants must be finite and nonnegative");
            if (k > 0 && pr->instants[k] <= pr->instants[k - 1])
                throw InvalidArgument("prescribed instants must be strictly increasing");
            if (pr->modes[k] < 0 || pr->modes[k] >= nm)
                throw InvalidArgument("prescribed rule targets a mode that does not exist");
        }
    } else if (const auto* lr = std::get_if<LevelRule>(&sys.rule)) {
        if (nm < 2) throw InvalidArgument("a switching rule needs at least two modes");
        if (lr->state_index < 0 || lr->state_index >= d)
            throw InvalidArgument("level rule references an invalid state index");
        if (!std::isfinite(lr->level)) throw InvalidArgument("level threshold must be finite");
        if (lr->mapping == LevelRule::Mapping::side &&
            (lr->mode_above < 0 || lr->mode_above >= nm || lr->mode_below < 0 ||
             lr->mode_below >= nm))
            throw InvalidArgument("level rule side mapping targets a mode that does not exist");
        if (lr->mapping == LevelRule::Mapping::toggle && nm != 2)
            throw InvalidArgument("toggle mapping is defined for exactly two modes");
    }
}

double inf_norm(const std::vector<double>& a, int d) {
    double worst = 0.0;
    for (int r = 0; r < d; ++r) {
        double row = 0.0;
        for (int c = 0; c < d; ++c) row += std::fabs(a[r * d + c]);
        worst = std::max(worst, row);
    }
    return worst;
}

void check_step_resolution(const SwitchedLinearSystem& sys, double dt) {
    for (const LinearMode& m : sys.modes)
        if (dt * inf_norm(m.a, sys.dim) >= 0.1)
            throw InvalidArgument("dt too large to resolve the fastest mode (need dt*||A|| < 0.1)");
}

// One RK4 step of dx = A x + B u(t) over [t, t+span] in the given mode.
void rk4_step(const SwitchedLinearSystem& sys, int mode, double t, double span,
              const std::vector<double>& x, std::vector<double>& out,
              std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
    const int d = sys.dim;
    const LinearMode& m = sys.modes[mode];
    auto deriv = [&](double tt, const std::vector<double>& xx, std::vector<double>& dx) {
        const double u = sys.input.value(tt);
        for (int r = 0; r < d; ++r) {
            double acc = m.b[r] * u;
            for (int c = 0; c < d; ++c) acc += m.a[r * d + c] * xx[c];
            dx[r] = acc;
        }
    };
    deriv(t, x, k1);
    for (int r = 0; r < d; ++r) tmp[r] = x[r] + 0.5 * span * k1[r];
    deriv(t + 0.5 * span, tmp, k2);
    for (int r = 0; r < d; ++r) tmp[r] = x[r] + 0.5 * span * k2[r];
    deriv(t + 0.5 * span, tmp, k3);
    for (int r = 0; r < d; ++r) tmp[r] = x[r] + span * k3[r];
    deriv(t + span, tmp, k4);
    for (int r = 0; r < d; ++r)
        out[r] = x[r] + span / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
}

// Shared integrator state for one trajectory.
struct Stepper {
    const SwitchedLinearSystem* sys;
    std::vector<double> x;
    int mode;
    double t = 0.0;
    long switches = 0;
    std::size_t next_prescribed = 0;
    bool mirror = false; // reflect x2 at zerocrossings of x1 instead of switching

    std::vector<double> k1, k2, k3, k4, tmp, trial, xev;
    std::vector<double>* event_log = nullptr;
    std::vector<int>* event_mode_log = nullptr;

    Stepper(const SwitchedLinearSystem& s, std::vector<double> x0)
        : sys(&s), x(std::move(x0)), mode(s.initial_mode), k1(s.dim), k2(s.dim), k3(s.dim),
          k4(s.dim), tmp(s.dim), trial(s.dim), xev(s.dim) {}

    void record_event(double when, int new_mode) {
        ++switches;
        if (switches > zeno_limit)
            throw ZenoError("switch count exceeded the Zeno guard of 1e6");
        if (event_log) event_log->push_back(when);
        if (event_mode_log) event_mode_log->push_back(new_mode);
    }

    // Advance across [t, t+dt], splitting at prescribed instants.
    void advance(double dt) {
        const double t_stop = t + dt;
        if (const auto* pr = std::get_if<PrescribedRule>(&sys->rule)) {
            while (next_prescribed < pr->instants.size() &&
                   pr->instants[next_prescribed] < t_stop) {
                const double t_ev = pr->instants[next_prescribed];
                if (t_ev > t) advance_level(t_ev - t);
                if (pr->modes[next_prescribed] != mode) {
                    mode = pr->modes[next_prescribed];
                    record_event(t_ev, mode);
                }
                t = t_ev;
                ++next_prescribed;
            }
            if (t < t_stop) advance_level(t_stop - t);
            t = t_stop;
            return;
        }
        advance_level(dt);
        t = t_stop;
    }

    // Advance by span handling level events (or mirror reflections). At most
    // one event is allowed per call; a second one means the step cannot
    // resolve the switching sequence.
    void advance_level(double span) {
        const auto* lr = std::get_if<LevelRule>(&sys->rule);
        const bool watching = mirror || lr != nullptr;
        const int idx = mirror ? 0 : (lr ? lr->state_index : 0);
        const double level = mirror ? 0.0 : (lr ? lr->level : 0.0);

        double t_local = t;
        double remaining = span;
        int events_here = 0;
        while (remaining > 0.0) {
            rk4_step(*sys, mode, t_local, remaining, x, trial, k1, k2, k3, k4, tmp);
            if (!watching) {
                x = trial;
                return;
            }
            const double y0 = x[idx] - level;
            const double y1 = trial[idx] - level;
            const bool rising = y1 > y0;
            bool fires = (y0 < 0.0 && y1 >= 0.0) || (y0 > 0.0 && y1 <= 0.0);
            if (fires && lr) {
                if (lr->sense == CrossingSense::rising && !rising) fires = false;
                if (lr->sense == CrossingSense::falling && rising) fires = false;
            }
            if (!fires) {
                x = trial;
                return;
            }
            if (++events_here > 1)
                throw StepTooLarge("a second level crossing landed inside one step; "
                                   "reduce dt");

            // Localize the crossing to 1e-10 * span by bisection on the
            // integrated level function. lo stays on the departure side.
            double lo = 0.0, hi = remaining;
            const double tol_ev = 1e-10 * remaining;
            while (hi - lo > tol_ev) {
                const double mid = 0.5 * (lo + hi);
                rk4_step(*sys, mode, t_local, mid, x, xev, k1, k2, k3, k4, tmp);
                const double ym = xev[idx] - level;
                if ((y0 < 0.0 && ym < 0.0) || (y0 > 0.0 && ym > 0.0)) lo = mid;
                else hi = mid;
            }
            // Mirror events reflect on the departure side so the negated
            // velocity moves the state away from the axis; mode switches
            // take the crossed side so the new mode sees the state past the
            // threshold.
            const double tau = mirror ? lo : hi;
            rk4_step(*sys, mode, t_local, tau, x, xev, k1, k2, k3, k4, tmp);
            x = xev;
            if (mirror) {
                x[1] = -x[1];
                record_event(t_local + tau, mode);
            } else {
                int next = mode;
                if (lr->mapping == LevelRule::Mapping::toggle) next = mode == 0 ? 1 : 0;
                else next = rising ? lr->mode_above : lr->mode_below;
                if (next != mode) {
                    mode = next;
                    record_event(t_local + tau, mode);
                }
            }
            t_local += tau;
            remaining -= tau;
        }
    }
};

long step_count(double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw InvalidArgument("horizon must be finite positive");
    const long n = std::lround(t_end / dt);
    if (n < 1) throw InvalidArgument("horizon must cover at least one step");
    return n;
}

void check_bounded(const std::vector<double>& x) {
    for (double v : x)
        if (!(std::fabs(v) <= bound_limit))
            throw DivergenceError("trajectory escaped ||x|| <= 1e6: divergence, not chaos");
}

} // namespace

double HarmonicInput::value(double t) const {
    if (amplitude == 0.0) return 0.0;
    const double arg = omega * t + phase;
    return amplitude * (cosine ? std::cos(arg) : std::sin(arg));
}

const char* switching_class_name(SwitchingClass c) noexcept {
    switch (c) {
    case SwitchingClass::lti: return "LTI";
    case SwitchingClass::ltv: return "LTV";
    default: return "NL";
    }
}

SwitchedTrajectory simulate_switched(const SwitchedLinearSystem& sys,
                                     const std::vector<double>& x0, double t_end,
                                     double dt) {
    validate_system(sys);
    if (static_cast<int>(x0.size()) != sys.dim)
        throw InvalidArgument("initial state dimension mismatch");
    for (double v : x0)
        if (!std::isfinite(v)) throw InvalidArgument("initial state must be finite");
    check_step_resolution(sys, dt);
    const long n = step_count(t_end, dt);

    SwitchedTrajectory tr;
    tr.dim = sys.dim;
    tr.times.reserve(n + 1);
    tr.states.reserve((n + 1) * sys.dim);
    tr.mode.reserve(n + 1);

    Stepper st(sys, x0);
    st.event_log = &tr.switch_times;
    st.event_mode_log = &tr.switch_modes;

    for (long k = 0; k <= n; ++k) {
        tr.times.push_back(k * dt);
        tr.states.insert(tr.states.end(), st.x.begin(), st.x.end());
        tr.mode.push_back(st.mode);
        if (k < n) {
            st.advance(dt);
            check_bounded(st.x);
        }
    }
    return tr;
}

ClassificationResult classify_switching(const SwitchedLinearSystem& sys,
                                        const SwitchedTrajectory& trajectory) {
    validate_system(sys);
    ClassificationResult out;
    if (std::holds_alternative<NoSwitchRule>(sys.rule)) {
        out.kind = SwitchingClass::lti;
        return out;
    }
    if (std::holds_alternative<PrescribedRule>(sys.rule)) {
        // The schedule is input-independent by construction; scaling the
        // input cannot move the instants.
        out.kind = SwitchingClass::ltv;
        return out;
    }
    out.kind = SwitchingClass::nl;

    // Scaling probe: rerun with the input doubled and measure how far the
    // switching instants move. A generic level-switched run shifts them;
    // an autonomous one (zero input) cannot and is skipped.
    if (sys.input.amplitude != 0.0 && trajectory.sample_count() >= 2) {
        SwitchedLinearSystem doubled = sys;
        doubled.input.amplitude *= 2.0;
        std::vector<double> x0(trajectory.dim);
        for (int c = 0; c < trajectory.dim; ++c) x0[c] = trajectory.state_at(0, c);
        const double dt = trajectory.times[1] - trajectory.times[0];
        const double t_end = trajectory.times.back();
        const SwitchedTrajectory probe = simulate_switched(doubled, x0, t_end, dt);

        const std::size_t common =
            std::min(probe.switch_times.size(), trajectory.switch_times.size());
        double shift = 0.0;
        for (std::size_t k = 0; k < common; ++k)
            shift = std::max(shift,
                             std::fabs(probe.switch_times[k] - trajectory.switch_times[k]));
        if (probe.switch_times.size() != trajectory.switch_times.size())
            shift = std::max(shift, t_end); // event counts diverged outright
        out.probe_instant_shift = shift;
    }
    return out;
}

double largest_lyapunov(const SwitchedLinearSystem& sys, const std::vector<double>& x0,
                        double horizon, double renorm_interval, double dt,
                        int skip_intervals) {
    validate_system(sys);
    if (static_cast<int>(x0.size()) != sys.dim)
        throw InvalidArgument("initial state dimension mismatch");
    check_step_resolution(sys, dt);
    if (!(renorm_interval > 0.0) || !std::isfinite(renorm_interval))
        throw InvalidArgument("renorm interval must be finite positive");
    if (skip_intervals < 0) throw InvalidArgument("skip count must be nonnegative");
    const long steps_per = std::max(1L, std::lround(renorm_interval / dt));
    const long n_total = step_count(horizon, dt) / steps_per;
    if (n_total <= skip_intervals)
        throw InvalidArgument("horizon too short for the requested warmup intervals");

    constexpr double delta0 = 1e-8;
    Stepper ref(sys, x0);
    std::vector<double> xp = x0;
    xp[0] += delta0;
    Stepper pert(sys, xp);

    const int d = sys.dim;
    double log_sum = 0.0;
    long accumulated = 0;

    for (long interval = 0; interval < n_total; ++interval) {
        for (long s = 0; s < steps_per; ++s) {
            ref.advance(dt);
            pert.advance(dt);
        }
        check_bounded(ref.x);
        check_bounded(pert.x);

        double dist2 = 0.0;
        for (int c = 0; c < d; ++c) {
            const double e = pert.x[c] - ref.x[c];
            dist2 += e * e;
        }
        double dist = std::sqrt(dist2);
        if (dist < 1e-300) dist = 1e-300; // fully collapsed twin: strongly contracting
        if (interval >= skip_intervals) {
            log_sum += std::log(dist / delta0);
            ++accumulated;
        }
        const double rescale = delta0 / dist;
        for (int c = 0; c < d; ++c) pert.x[c] = ref.x[c] + (pert.x[c] - ref.x[c]) * rescale;
        // Snap the twin's regime to the reference: after renormalization the
        // states are delta0 apart and a stale mode would inject an O(1)
        // error unrelated to the flow's divergence.
        pert.mode = ref.mode;
        pert.next_prescribed = ref.next_prescribed;
    }
    return log_sum / (accumulated * (steps_per * dt));
}

double aperiodicity_measure(const SwitchedTrajectory& trajectory) {
    const int n = trajectory.sample_count();
    const int d = trajectory.dim;
    if (n < 32 || d < 1) return 0.0;

    double scale = 0.0;
    for (double v : trajectory.states) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return 0.0;

    const int k_min = std::max(1, n / 16);
    const int k_max = n / 2;
    const int n_candidates = std::min(256, k_max - k_min + 1);
    const int n_probes = 512;

    double best = std::numeric_limits<double>::infinity();
    for (int ci = 0; ci < n_candidates; ++ci) {
        const int k = k_min + static_cast<int>(
                                  (static_cast<long>(ci) * (k_max - k_min)) /
                                  std::max(1, n_candidates - 1));
        const int span = n - k;
        double worst = 0.0;
        for (int pi = 0; pi < n_probes; ++pi) {
            const int j = static_cast<int>((static_cast<long>(pi) * (span - 1)) /
                                           std::max(1, n_probes - 1));
            for (int c = 0; c < d; ++c) {
                const double diff =
                    std::fabs(trajectory.state_at(j + k, c) - trajectory.state_at(j, c));
                worst = std::max(worst, diff);
            }
            if (worst >= best * scale) break; // cannot beat the current minimum
        }
        best = std::min(best, worst / scale);
    }
    return best;
}

MirrorResult mirror_reflection_map(const SwitchedLinearSystem& base,
                                   const std::vector<double>& x0, double t_end,
                                   double dt) {
    validate_system(base);
    if (base.dim != 2)
        throw InvalidArgument("mirror map needs a position/velocity system (d = 2)");
    if (base.modes.size() != 1)
        throw InvalidArgument("mirror map reflects a single-mode system");
    if (static_cast<int>(x0.size()) != 2)
        throw InvalidArgument("initial state dimension mismatch");
    check_step_resolution(base, dt);
    const long n = step_count(t_end, dt);

    MirrorResult out;
    SwitchedTrajectory& tr = out.trajectory;
    tr.dim = 2;
    tr.times.reserve(n + 1);
    tr.states.reserve((n + 1) * 2);
    tr.mode.reserve(n + 1);

    Stepper st(base, x0);
    st.mirror = true;
    st.event_log = &tr.switch_times;
    st.event_mode_log = &tr.switch_modes;

    for (long k = 0; k <= n; ++k) {
        tr.times.push_back(k * dt);
        tr.states.insert(tr.states.end(), st.x.begin(), st.x.end());
        tr.mode.push_back(st.mode);
        if (k < n) {
            st.advance(dt);
            check_bounded(st.x);
        }
    }
    out.aperiodicity = aperiodicity_measure(tr);
    return out;
}

} // namespace zcsim
