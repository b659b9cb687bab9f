#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "zcsim/ballast.hpp"
#include "zcsim/crossings.hpp"
#include "zcsim/elements.hpp"
#include "zcsim/waveform.hpp"

namespace zcsim {

// v_in(t) = amplitude * sin(omega t).
struct NamedSinDrive {
    double amplitude = 1.0; // volts > 0
};

// v_in(t) = amplitude * shape(t); shape must be periodic with period
// 2*pi/omega and zero mean.
struct WaveformDrive {
    double amplitude = 1.0;
    PeriodicWaveform shape;
};

using DriveSpec = std::variant<NamedSinDrive, WaveformDrive>;
using LampElement = std::variant<SignHardlimiter, HysteresisLamp>;

// Series loop: drive -> ballast -> switching element. The element's sign
// term forces the loop; everything else is linear and handled per harmonic.
struct LampCircuit {
    BallastDescriptor ballast;
    LampElement element;
    DriveSpec drive;
    double omega = 0.0; // rad/s > 0
};

// Effective square-wave amplitude of the element (A, or A1 for the lamp)
// and its series lead inductance (0, or L' for the lamp).
double element_amplitude(const LampElement& e) noexcept;
double element_lead_inductance(const LampElement& e) noexcept;

// One period of the settled response. voltage is the element terminal
// voltage reconstructed from the element law; crossings hold the solved
// switching instants (more precise than re-detecting them off the grid).
struct SteadyState {
    PeriodicWaveform current;
    PeriodicWaveform voltage;
    ZeroCrossingSet crossings;
    int iterations = 0;
    double residual = 0.0;
};

// Steady state under the two-crossings-per-period ansatz: the current is
// assembled per harmonic as I_n = Y_eff(jn w) (V_n - S_n(t1)) where S_n is
// the square-wave series pinned to the crossing pair {t1, t1 + T/2}, and t1
// is the root of g(t1) = i(t1; t1). The reconstruction splits the current
// into the exact triangular integral of the square wave plus a smooth
// harmonic remainder, so g is evaluated without 1/n truncation error.
//
// tol bounds the accepted residual |i(t1)| relative to max|i| (absolute for
// currents below one ampere). Throws NoSolution when g has no sign change
// over [0, T/2), AssumptionViolated when g brackets several roots (all
// brackets are listed) or when the converged waveform does not cross exactly
// twice; the multi-crossing solver handles those regimes.
SteadyState steady_state_two_crossing(const LampCircuit& c, double tol,
                                      int n_harmonics = 999, int n_samples = 4096);

// Damped Newton iteration on the residual vector F_p = i(t_p; {t_k}) for a
// crossing set of m lobes (2m instants), numeric Jacobian by central
// differences. The initial guess fixes the lobe count and directions.
// Throws ConvergenceFailure on divergence or when crossings collide, and
// InconsistentCrossings when the converged waveform's crossing count
// disagrees with the ansatz.
SteadyState multi_crossing_solver(const LampCircuit& c, int m,
                                  const ZeroCrossingSet& initial_guess, double tol,
                                  int n_harmonics = 999, int n_samples = 4096,
                                  int max_iterations = 60);

// Split s.current into i1 + i2 where i2 integrates the +/-(a_eff/inductance)
// step pinned to s.crossings (continuous piecewise-linear, zero mean) and
// i1 = i - i2 carries everything smooth. The sum reproduces the input to
// roundoff; pass the series inductance seen by the switching term.
std::pair<PeriodicWaveform, PeriodicWaveform>
smooth_rough_decompose(const SteadyState& s, double a_eff, double inductance);

// Brute-force reference: fixed-step RK4 on the state equations with the
// sign regime frozen per step, crossings localized by bisection and the
// regime switched only when the drive can push the current through
// (|v_in - v_C| > A at the crossing; otherwise the current slides at zero
// until the inequality holds). Integrates until the period-to-period L-inf
// difference drops below tol_ss * max|i| or max_periods elapse (then throws
// ConvergenceFailure). Requires a series R-L(-C) ballast; x0 is {i0} or
// {i0, vC0}, empty for a cold start.
SteadyState time_domain_oracle(const LampCircuit& c, std::vector<double> x0 = {},
                               double tol_ss = 1e-9, int max_periods = 2000,
                               int n_samples = 4096);

// One row per drive amplitude: source power P = <v_in i>, the first
// crossing instant, and the local slope d ln P / d ln U (centered inside
// the grid, one-sided at the ends). Solver errors propagate from the row
// that fails.
struct SweepRow {
    double drive_amplitude = 0.0;
    double power = 0.0;
    double t1 = 0.0;
    double loglog_slope = 0.0;
};

std::vector<SweepRow> power_scaling_sweep(const LampCircuit& c,
                                          const std::vector<double>& u_grid,
                                          double tol = 1e-10, int n_harmonics = 999,
                                          int n_samples = 4096);

// Certify the affine structure i(U) = U L^-1[xi] + L^-1[f]: the returned
// deviation ||(i(U1) - i(U2)) / (U1 - U2) - L^-1[xi]||_inf vanishes in exact
// arithmetic for any U1 != U2 even though i(U) itself does not scale
// linearly when f != 0. L^-1 multiplies each harmonic by the ballast
// admittance; a singular harmonic raises ResonanceError.
double affine_superposition_check(const BallastDescriptor& linear_op,
                                  const PeriodicWaveform& xi,
                                  const PeriodicWaveform& f_wave,
                                  double u1, double u2);

} // namespace zcsim
