#pragma once

#include <variant>
#include <vector>

namespace zcsim {

// Scalar drive u(t) = amplitude * cos(omega t + phase) (or sin). Amplitude
// zero switches the input off.
struct HarmonicInput {
    double amplitude = 0.0;
    double omega = 1.0;
    double phase = 0.0;
    bool cosine = true;

    double value(double t) const;
};

// One linear regime dx/dt = A x + B u with scalar input: A is row-major
// d x d, B a length-d column.
struct LinearMode {
    std::vector<double> a;
    std::vector<double> b;
};

// Mode never changes.
struct NoSwitchRule {};

// Time-triggered schedule: at instants[k] the system enters modes[k]. The
// instants are strictly increasing and independent of the state, which is
// what keeps the system linear (time-varying).
struct PrescribedRule {
    std::vector<double> instants;
    std::vector<int> modes;
};

enum class CrossingSense { rising, falling, both };

// State-triggered rule: fires when state[state_index] crosses `level` in the
// watched sense. `toggle` alternates between modes 0 and 1; `side` enters
// mode_above on a rising crossing and mode_below on a falling one, i.e. the
// active mode tracks which side of the threshold the state sits on.
struct LevelRule {
    int state_index = 0;
    double level = 0.0;
    CrossingSense sense = CrossingSense::both;
    enum class Mapping { toggle, side } mapping = Mapping::side;
    int mode_above = 0;
    int mode_below = 1;
};

using SwitchRule = std::variant<NoSwitchRule, PrescribedRule, LevelRule>;

struct SwitchedLinearSystem {
    int dim = 0;
    std::vector<LinearMode> modes;
    int initial_mode = 0;
    SwitchRule rule;
    HarmonicInput input;
};

// Sampled run: states is sample-major (sample k occupies
// [k*dim, (k+1)*dim)), mode[k] is the regime active just after times[k].
// Switch events carry the localized instant and the mode entered. The state
// is continuous across switches; only the mirror map breaks that, conserving
// the magnitude of the reflected component instead.
struct SwitchedTrajectory {
    int dim = 0;
    std::vector<double> times;
    std::vector<double> states;
    std::vector<int> mode;
    std::vector<double> switch_times;
    std::vector<int> switch_modes;

    int sample_count() const noexcept { return static_cast<int>(times.size()); }
    double state_at(int sample, int coord) const { return states[sample * dim + coord]; }
};

// Fixed-step 4th-order integration inside a mode; level crossings are
// localized by bisection to 1e-10*dt and the mode switches at the localized
// instant. dt must resolve the fastest mode (dt * ||A||_inf < 0.1). Throws
// StepTooLarge when a second level crossing lands inside one step, ZenoError
// after 1e6 switches.
SwitchedTrajectory simulate_switched(const SwitchedLinearSystem& sys,
                                     const std::vector<double>& x0, double t_end,
                                     double dt);

enum class SwitchingClass { lti, ltv, nl };

const char* switching_class_name(SwitchingClass c) noexcept;

// Classification by the nature of {t_k}: none -> LTI, prescribed -> LTV
// (the instants are input-independent), level-triggered -> NL (the instants
// are a functional of the state). probe_instant_shift reports the scaling
// cross-check: the largest displacement of a switching instant when the run
// is repeated with the input doubled (identically zero for LTI/LTV; positive
// for a generic level-switched run with nonzero input).
struct ClassificationResult {
    SwitchingClass kind = SwitchingClass::lti;
    double probe_instant_shift = 0.0;
};

ClassificationResult classify_switching(const SwitchedLinearSystem& sys,
                                        const SwitchedTrajectory& trajectory);

// Largest Lyapunov exponent by twin-trajectory renormalization: a second
// trajectory offset by delta0 = 1e-8 is co-integrated, the separation is
// measured and rescaled every renorm_interval, and the average log expansion
// rate is returned (per second). The first skip_intervals measurements warm
// the perturbation into the attractor's expanding direction and are
// discarded. Throws DivergenceError when a state leaves ||x||_inf <= 1e6
// (escape, not chaos).
double largest_lyapunov(const SwitchedLinearSystem& sys, const std::vector<double>& x0,
                        double horizon, double renorm_interval, double dt,
                        int skip_intervals = 100);

// Reflect x(t) off the time axis: integrate the single-mode system and at
// each zerocrossing of x1 negate the velocity coordinate x2, so the
// trajectory bounces instead of crossing. aperiodicity is the minimum over
// candidate shifts of the normalized recurrence distance
// min_tau max_t ||x(t+tau) - x(t)|| / max||x||; near zero for a periodic
// steady state, order one when no shift ever recurs.
struct MirrorResult {
    SwitchedTrajectory trajectory;
    double aperiodicity = 0.0;
};

MirrorResult mirror_reflection_map(const SwitchedLinearSystem& base,
                                   const std::vector<double>& x0, double t_end,
                                   double dt);

// Recurrence measure used by the mirror map, exposed for direct use.
double aperiodicity_measure(const SwitchedTrajectory& trajectory);

} // namespace zcsim
