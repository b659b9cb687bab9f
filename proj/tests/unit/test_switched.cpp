#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"
#include "zcsim/errors.hpp"
#include "zcsim/switched.hpp"

using namespace zcsim;

namespace {

constexpr double pi = 3.14159265358979323846;

SwitchedLinearSystem single_mode(std::vector<double> a, std::vector<double> b,
                                 HarmonicInput in = {}) {
    SwitchedLinearSystem sys;
    sys.dim = static_cast<int>(b.size());
    sys.modes = {LinearMode{std::move(a), std::move(b)}};
    sys.initial_mode = 0;
    sys.rule = NoSwitchRule{};
    sys.input = in;
    return sys;
}

double max_state_gap(const SwitchedTrajectory& a, const SwitchedTrajectory& b) {
    REQUIRE(a.states.size() == b.states.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.states.size(); ++k)
        worst = std::max(worst, std::fabs(a.states[k] - b.states[k]));
    return worst;
}

} // namespace

TEST_CASE("fixed-step integration matches the closed form of a damped free system") {
    // x'' + 3 x' + 2 x = 0 from (1, 0): x = 2 e^{-t} - e^{-2t}.
    const auto sys = single_mode({0.0, 1.0, -2.0, -3.0}, {0.0, 0.0});
    const auto tr = simulate_switched(sys, {1.0, 0.0}, 2.0, 1e-3);

    REQUIRE(tr.dim == 2);
    REQUIRE(tr.sample_count() == 2001);
    CHECK(tr.switch_times.empty());
    CHECK(tr.switch_modes.empty());

    double worst = 0.0;
    bool mode_held = true;
    for (int k = 0; k < tr.sample_count(); ++k) {
        const double t = tr.times[k];
        const double x1 = 2.0 * std::exp(-t) - std::exp(-2.0 * t);
        const double x2 = -2.0 * std::exp(-t) + 2.0 * std::exp(-2.0 * t);
        worst = std::max({worst, std::fabs(tr.state_at(k, 0) - x1),
                          std::fabs(tr.state_at(k, 1) - x2)});
        mode_held = mode_held && tr.mode[k] == 0;
    }
    CHECK(worst < 1e-8);
    CHECK(mode_held);
}

TEST_CASE("a prescribed schedule is reproduced exactly in the event log") {
    SwitchedLinearSystem sys;
    sys.dim = 2;
    sys.modes = {LinearMode{{0.0, 1.0, -1.0, -0.6}, {0.0, 1.0}},
                 LinearMode{{0.0, 1.0, -4.0, -0.4}, {0.0, 1.0}}};
    sys.initial_mode = 0;
    sys.rule = PrescribedRule{{1.0, 2.5}, {1, 0}};
    sys.input = HarmonicInput{1.0, 2.0, 0.0, true};

    const auto tr = simulate_switched(sys, {0.0, 0.0}, 4.0, 1e-3);
    REQUIRE(tr.switch_times.size() == 2);
    CHECK(tr.switch_times[0] == 1.0);
    CHECK(tr.switch_times[1] == 2.5);
    REQUIRE(tr.switch_modes.size() == 2);
    CHECK(tr.switch_modes[0] == 1);
    CHECK(tr.switch_modes[1] == 0);
    CHECK(tr.mode[500] == 0);
    CHECK(tr.mode[1750] == 1);
    CHECK(tr.mode[3500] == 0);
}

TEST_CASE("level crossings are localized to the underlying zero instants") {
    // Two copies of the same rotation: toggling cannot change the dynamics,
    // so the event log must sit at the zeros of x1 = cos t.
    const LinearMode rot{{0.0, 1.0, -1.0, 0.0}, {0.0, 0.0}};
    SwitchedLinearSystem sys;
    sys.dim = 2;
    sys.modes = {rot, rot};
    sys.initial_mode = 0;
    LevelRule rule;
    rule.mapping = LevelRule::Mapping::toggle;
    sys.rule = rule;

    const auto tr = simulate_switched(sys, {1.0, 0.0}, 20.0, 0.01);
    REQUIRE(tr.switch_times.size() == 6);
    for (std::size_t k = 0; k < tr.switch_times.size(); ++k) {
        CHECK(std::fabs(tr.switch_times[k] - (0.5 * pi + k * pi)) < 1e-8);
        CHECK(tr.switch_modes[k] == static_cast<int>((k + 1) % 2));
    }
    const int last = tr.sample_count() - 1;
    CHECK(std::fabs(tr.state_at(last, 0) - std::cos(20.0)) < 1e-8);
    CHECK(std::fabs(tr.state_at(last, 1) + std::sin(20.0)) < 1e-8);
}

TEST_CASE("two crossings inside one step are rejected rather than mislocated") {
    // Drift up through the level at t = 0.0047, where the post-switch mode
    // shoves the state back below within the same 0.01 step: the return
    // crossing lands in the step remainder and must be refused, not skipped.
    const LinearMode drift{{0.0, 1.0, 0.0, 0.0}, {0.0, 0.0}};
    const LinearMode shove{{0.0, 1.0, 0.0, 0.0}, {0.0, -500.0}};
    SwitchedLinearSystem sys;
    sys.dim = 2;
    sys.modes = {drift, shove};
    sys.initial_mode = 0;
    LevelRule rule;
    rule.mode_above = 1;
    rule.mode_below = 0;
    sys.rule = rule;
    sys.input = HarmonicInput{1.0, 1e-3, 0.0, true};

    CHECK_THROWS_AS(simulate_switched(sys, {-0.0047, 1.0}, 2.0, 0.01), StepTooLarge);
}

TEST_CASE("a scheduled system scales exactly linearly with its input") {
    SwitchedLinearSystem sys;
    sys.dim = 2;
    sys.modes = {LinearMode{{0.0, 1.0, -1.0, -0.6}, {0.0, 1.0}},
                 LinearMode{{0.0, 1.0, -4.0, -0.4}, {0.0, 1.0}}};
    sys.initial_mode = 0;
    sys.rule = PrescribedRule{{1.0, 2.5, 4.0, 5.5}, {1, 0, 1, 0}};
    sys.input = HarmonicInput{1.0, 2.0, 0.0, true};
    auto doubled = sys;
    doubled.input.amplitude = 2.0;

    const auto tr1 = simulate_switched(sys, {0.0, 0.0}, 8.0, 1e-3);
    const auto tr2 = simulate_switched(doubled, {0.0, 0.0}, 8.0, 1e-3);

    // From rest the response is homogeneous of degree one in the drive, and
    // doubling is exact in floating point, so the runs agree bitwise.
    REQUIRE(tr1.states.size() == tr2.states.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < tr1.states.size(); ++k)
        worst = std::max(worst, std::fabs(tr2.states[k] - 2.0 * tr1.states[k]));
    CHECK(worst == 0.0);
    CHECK(tr1.switch_times == tr2.switch_times);

    const auto cls = classify_switching(sys, tr1);
    CHECK(cls.kind == SwitchingClass::ltv);
    CHECK(cls.probe_instant_shift == 0.0);
    CHECK(std::string(switching_class_name(cls.kind)) == "LTV");
}

TEST_CASE("classification separates fixed, scheduled, and state-triggered switching") {
    const auto free_sys = single_mode({0.0, 1.0, -2.0, -3.0}, {0.0, 0.0});
    const auto tr_free = simulate_switched(free_sys, {1.0, 0.0}, 1.0, 1e-3);
    const auto c_lti = classify_switching(free_sys, tr_free);
    CHECK(c_lti.kind == SwitchingClass::lti);
    CHECK(c_lti.probe_instant_shift == 0.0);
    CHECK(std::string(switching_class_name(c_lti.kind)) == "LTI");

    // Level-triggered: the switching instants are a functional of the state,
    // so doubling the drive moves them.
    SwitchedLinearSystem level_sys;
    level_sys.dim = 2;
    level_sys.modes = {LinearMode{{0.0, 1.0, -1.0, -0.6}, {0.0, 1.0}},
                       LinearMode{{0.0, 1.0, -4.0, -0.4}, {0.0, 1.0}}};
    level_sys.initial_mode = 0;
    LevelRule rule;
    rule.level = 0.4;
    rule.mode_above = 0;
    rule.mode_below = 1;
    level_sys.rule = rule;
    level_sys.input = HarmonicInput{1.0, 1.0, 0.0, true};

    const auto tr_level = simulate_switched(level_sys, {1.0, 0.0}, 40.0, 2e-3);
    REQUIRE(tr_level.switch_times.size() >= 4);
    const auto c_nl = classify_switching(level_sys, tr_level);
    CHECK(c_nl.kind == SwitchingClass::nl);
    CHECK(c_nl.probe_instant_shift > 1e-6 * (2.0 * pi));
    CHECK(std::string(switching_class_name(c_nl.kind)) == "NL");
}

TEST_CASE("the twin-trajectory exponent is negative for a damped driven oscillator") {
    const auto sys = single_mode({0.0, 1.0, -1.0, -0.6}, {0.0, 1.0},
                                 HarmonicInput{1.0, 1.0, 0.0, true});
    const double lam = largest_lyapunov(sys, {1.0, 0.0}, 300.0, 1.0, 0.005);
    CHECK(lam < -0.25);
    CHECK(lam > -0.35);
}

TEST_CASE("the twin-trajectory exponent vanishes for a lossless rotation") {
    const auto sys = single_mode({0.0, 1.0, -1.0, 0.0}, {0.0, 0.0});
    const double lam = largest_lyapunov(sys, {1.0, 0.0}, 300.0, 1.0, 0.005);
    CHECK(std::fabs(lam) < 1e-3);
}

TEST_CASE("asymmetric-stiffness level switching produces a positive exponent") {
    // Stiffness 13 above the threshold, 1 below, weak damping, fast drive:
    // neighboring trajectories disagree about which regime they are in.
    SwitchedLinearSystem sys;
    sys.dim = 2;
    sys.modes = {LinearMode{{0.0, 1.0, -13.0, -0.02}, {0.0, 1.0}},
                 LinearMode{{0.0, 1.0, -1.0, -0.02}, {0.0, 1.0}}};
    sys.initial_mode = 0;
    LevelRule rule;
    rule.level = 0.1;
    rule.mode_above = 0;
    rule.mode_below = 1;
    sys.rule = rule;
    sys.input = HarmonicInput{1.0, 4.0, 0.0, true};

    const double lam = largest_lyapunov(sys, {0.2, 0.0}, 800.0, 1.0, 0.005);
    CHECK(lam > 0.05);
    CHECK(lam < 0.25);
}

TEST_CASE("exponent estimation rejects escape and degenerate windows") {
    const auto unstable = single_mode({0.0, 1.0, 1.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(largest_lyapunov(unstable, {1.0, 0.0}, 200.0, 1.0, 0.005),
                    DivergenceError);

    const auto stable = single_mode({0.0, 1.0, -1.0, -0.6}, {0.0, 1.0},
                                    HarmonicInput{1.0, 1.0, 0.0, true});
    CHECK_THROWS_AS(largest_lyapunov(stable, {1.0, 0.0}, 50.0, 1.0, 0.005),
                    InvalidArgument);
    CHECK_THROWS_AS(largest_lyapunov(stable, {1.0, 0.0}, 300.0, 0.0, 0.005),
                    InvalidArgument);
    CHECK_THROWS_AS(largest_lyapunov(stable, {1.0}, 300.0, 1.0, 0.005),
                    InvalidArgument);
}

TEST_CASE("the mirror map is inert when the coordinate never reaches the axis") {
    // Overdamped release from x1 = 2: the position decays without crossing
    // zero, so reflecting at zero must change nothing at all.
    const auto sys = single_mode({0.0, 1.0, -1.0, -3.0}, {0.0, 0.0});
    const auto plain = simulate_switched(sys, {2.0, 0.0}, 20.0, 0.01);
    const auto mirrored = mirror_reflection_map(sys, {2.0, 0.0}, 20.0, 0.01);
    CHECK(mirrored.trajectory.switch_times.empty());
    CHECK(max_state_gap(plain, mirrored.trajectory) == 0.0);
}

TEST_CASE("a lossless bounce repeats with the half-oscillation period") {
    const auto sys = single_mode({0.0, 1.0, -1.0, 0.0}, {0.0, 0.0});
    const double dt = pi / 64.0;
    const auto res = mirror_reflection_map(sys, {1.0, 0.0}, 8.0 * pi, dt);

    REQUIRE(res.trajectory.switch_times.size() == 8);
    for (std::size_t k = 0; k < res.trajectory.switch_times.size(); ++k)
        CHECK(std::fabs(res.trajectory.switch_times[k] - (0.5 * pi + k * pi)) < 1e-5);
    CHECK(res.aperiodicity < 1e-4);

    // The position never leaves [0, 1] once it bounces.
    double lo = 1.0, hi = 0.0;
    for (int k = 0; k < res.trajectory.sample_count(); ++k) {
        lo = std::min(lo, res.trajectory.state_at(k, 0));
        hi = std::max(hi, res.trajectory.state_at(k, 0));
    }
    CHECK(lo > -1e-6);
    CHECK(hi < 1.0 + 1e-6);
}

TEST_CASE("reflection instants of a driven bounce separate exponentially") {
    const auto sys = single_mode({0.0, 1.0, -1.0, -0.1}, {0.0, 1.0},
                                 HarmonicInput{3.0, 2.8, 0.0, true});
    const auto a = mirror_reflection_map(sys, {0.5, 0.0}, 120.0, 0.002);
    const auto b = mirror_reflection_map(sys, {0.5 + 1e-6, 0.0}, 120.0, 0.002);

    REQUIRE(a.trajectory.switch_times.size() >= 10);
    REQUIRE(b.trajectory.switch_times.size() >= 10);
    const std::size_t common =
        std::min(a.trajectory.switch_times.size(), b.trajectory.switch_times.size());
    const double first =
        std::fabs(a.trajectory.switch_times[0] - b.trajectory.switch_times[0]);
    double worst = 0.0;
    for (std::size_t k = 0; k < common; ++k)
        worst = std::max(worst, std::fabs(a.trajectory.switch_times[k] -
                                          b.trajectory.switch_times[k]));
    CHECK(first < 1e-3);
    CHECK(worst > 1e-3);
    CHECK(worst > 100.0 * first);
    CHECK(a.aperiodicity > 1e-3);

    // Each reflection conserves speed: reconstruct the state on both sides of
    // the logged instant from the bracketing samples.
    const auto& tr = a.trajectory;
    auto deriv = [](double t, const std::array<double, 2>& x) {
        return std::array<double, 2>{x[1],
                                     -x[0] - 0.1 * x[1] + 3.0 * std::cos(2.8 * t)};
    };
    auto rk4 = [&](std::array<double, 2> x, double t, double h) {
        const auto k1 = deriv(t, x);
        const auto k2 =
            deriv(t + 0.5 * h, {x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]});
        const auto k3 =
            deriv(t + 0.5 * h, {x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]});
        const auto k4 = deriv(t + h, {x[0] + h * k3[0], x[1] + h * k3[1]});
        return std::array<double, 2>{
            x[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            x[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
    };
    const std::size_t n_check = std::min<std::size_t>(20, tr.switch_times.size());
    for (std::size_t e = 0; e < n_check; ++e) {
        const double ts = tr.switch_times[e];
        const auto it = std::upper_bound(tr.times.begin(), tr.times.end(), ts);
        REQUIRE(it != tr.times.begin());
        REQUIRE(it != tr.times.end());
        const int j = static_cast<int>(it - tr.times.begin()) - 1;
        const auto before = rk4({tr.state_at(j, 0), tr.state_at(j, 1)}, tr.times[j],
                                ts - tr.times[j]);
        const auto after = rk4({tr.state_at(j + 1, 0), tr.state_at(j + 1, 1)},
                               tr.times[j + 1], ts - tr.times[j + 1]);
        CHECK(std::fabs(before[0]) < 1e-6);
        CHECK(std::fabs(after[0]) < 1e-6);
        CHECK(std::fabs(std::fabs(before[1]) - std::fabs(after[1])) <
              1e-8 * std::max(1.0, std::fabs(before[1])));
    }
}

TEST_CASE("malformed systems and steps are rejected") {
    SwitchedLinearSystem empty;
    CHECK_THROWS_AS(simulate_switched(empty, {}, 1.0, 0.01), InvalidArgument);

    auto rot = single_mode({0.0, 1.0, -1.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(simulate_switched(rot, {1.0}, 1.0, 0.01), InvalidArgument);
    CHECK_THROWS_AS(simulate_switched(rot, {1.0, 0.0}, 1.0, 0.2), InvalidArgument);
    CHECK_THROWS_AS(simulate_switched(rot, {1.0, 0.0}, 0.0, 0.01), InvalidArgument);
    CHECK_THROWS_AS(simulate_switched(rot, {1.0, 0.0}, 1.0, -0.01), InvalidArgument);

    auto bad_start = rot;
    bad_start.initial_mode = 1;
    CHECK_THROWS_AS(simulate_switched(bad_start, {1.0, 0.0}, 1.0, 0.01),
                    InvalidArgument);

    auto three = rot;
    three.modes = {rot.modes[0], rot.modes[0], rot.modes[0]};
    LevelRule toggle3;
    toggle3.mapping = LevelRule::Mapping::toggle;
    three.rule = toggle3;
    CHECK_THROWS_AS(simulate_switched(three, {1.0, 0.0}, 1.0, 0.01), InvalidArgument);

    auto two = rot;
    two.modes = {rot.modes[0], rot.modes[0]};
    two.rule = PrescribedRule{{2.0, 1.0}, {1, 0}};
    CHECK_THROWS_AS(simulate_switched(two, {1.0, 0.0}, 3.0, 0.01), InvalidArgument);
    two.rule = PrescribedRule{{1.0, 2.0}, {1, 5}};
    CHECK_THROWS_AS(simulate_switched(two, {1.0, 0.0}, 3.0, 0.01), InvalidArgument);

    two.rule = NoSwitchRule{};
    CHECK_THROWS_AS(mirror_reflection_map(two, {1.0, 0.0}, 1.0, 0.01),
                    InvalidArgument);
    const auto scalar = single_mode({-1.0}, {0.0});
    CHECK_THROWS_AS(mirror_reflection_map(scalar, {1.0}, 1.0, 0.01), InvalidArgument);

    SwitchedTrajectory tiny;
    tiny.dim = 1;
    tiny.times = {0.0, 0.1, 0.2};
    tiny.states = {1.0, 2.0, 3.0};
    CHECK(aperiodicity_measure(tiny) == 0.0);
}
