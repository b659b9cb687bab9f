#pragma once

#include "zcsim/crossings.hpp"
#include "zcsim/waveform.hpp"

namespace zcsim {

// A +/-amplitude rectangular wave described by its zerocrossing set.
struct SquareWaveSpec {
    double amplitude = 1.0;
    ZeroCrossingSet crossings;
    double omega = 0.0; // rad/s, must equal 2*pi/crossings.period

    SquareWaveSpec(double amp, ZeroCrossingSet set);
};

// Series of the unit sign wave with crossings {t1, t1 + T/2}:
//   sign[i(t)] = (4/pi) sum_{n odd} sin[n w (t - t1)] / n.
// Coefficients are the closed forms
//   a_n = -(4/(pi n)) sin(n w t1), b_n = (4/(pi n)) cos(n w t1), n odd,
// and exactly zero for even n.
FourierSeries sign_series_two_crossing(double t1, double omega, int n_max);

// Exact piecewise integration of the general rectangular wave over its
// constant segments. Reduces to sign_series_two_crossing for the set
// {t1, t1 + T/2}. The empty crossing set is the constant +amplitude.
FourierSeries sign_series_general(const SquareWaveSpec& spec, int n_max);

// Result of a decay-order fit. When every coefficient in the window sits
// below the 1e-14 floor the decay is reported as super-polynomial rather
// than as a meaningless exponent.
struct DecayEstimate {
    bool super_polynomial = false;
    double order = 0.0; // valid when !super_polynomial
};

// Least-squares slope of log|c_n| against log n over harmonics
// n in [n_min, n_max], negated so that c_n ~ 1/n^m reports m. Harmonics
// below 1e-13 are excluded from the fit; at least 5 must survive.
DecayEstimate coefficient_decay_order(const FourierSeries& f, int n_min, int n_max);

// Trapezoid-rule mean of g * di/dt over one period. For g = sign(i) or
// g = i the continuum value is exactly zero (integral of an exact
// differential over a period).
double periodic_orthogonality(const PeriodicWaveform& g_of_i, const PeriodicWaveform& didt);

} // namespace zcsim
