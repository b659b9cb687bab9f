#pragma once

#include <functional>
#include <vector>

namespace zcsim {

// Advisory unit tag. Operations do not convert units; the tag travels with
// the data so tools can label columns.
enum class Unit { dimensionless, volt, ampere, second, watt, weber, coulomb };

const char* unit_name(Unit u) noexcept;

// One period of a T-periodic real signal sampled on the uniform grid
// t_j = j*T/N, j = 0..N-1. The sample at t = T is the sample at t = 0 and is
// not stored. Construction validates T > 0, N >= 16 and finite samples.
struct PeriodicWaveform {
    double period = 0.0;
    std::vector<double> samples;
    Unit unit = Unit::dimensionless;

    PeriodicWaveform() = default;
    PeriodicWaveform(double period_T, std::vector<double> values,
                     Unit tag = Unit::dimensionless);

    int size() const noexcept { return static_cast<int>(samples.size()); }
    double dt() const noexcept { return period / static_cast<double>(samples.size()); }
    double time_at(int j) const noexcept { return period * j / static_cast<double>(samples.size()); }
    double max_abs() const noexcept;
};

// Truncated trigonometric series
//   x(t) = a_0 + sum_{n=1..N_h} a_n cos(n w t) + b_n sin(n w t).
// cos_coeffs[n] = a_n, sin_coeffs[n] = b_n; sin_coeffs[0] is identically 0.
struct FourierSeries {
    double omega = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    FourierSeries() = default;
    FourierSeries(double omega_, std::vector<double> a, std::vector<double> b);

    int max_harmonic() const noexcept { return static_cast<int>(cos_coeffs.size()) - 1; }
    double period() const noexcept;
    // magnitude of harmonic n, hypot(a_n, b_n)
    double magnitude(int n) const;
    // pointwise evaluation; phase-reduces before the trig calls
    double evaluate(double t) const;
    // evaluation of the termwise derivative
    double evaluate_derivative(double t) const;
};

// Discrete trigonometric projection of w onto harmonics 0..n_max.
// Exact (to roundoff) for signals band-limited below N/2. Requires
// n_max < N/2.
FourierSeries to_fourier(const PeriodicWaveform& w, int n_max);

// Evaluate the series on the uniform N-point grid over one period.
PeriodicWaveform synthesize(const FourierSeries& f, int n_samples,
                            Unit tag = Unit::dimensionless);

// Evaluate the termwise derivative of the series on the uniform grid.
PeriodicWaveform synthesize_derivative(const FourierSeries& f, int n_samples,
                                       Unit tag = Unit::dimensionless);

// Sample f(t) on the uniform N-point grid over [0, T).
PeriodicWaveform sample_function(double period_T, int n_samples,
                                 const std::function<double(double)>& f,
                                 Unit tag = Unit::dimensionless);

// Trapezoid mean over one period. On the closed uniform periodic grid this
// is the plain sample mean.
double periodic_mean(const PeriodicWaveform& w);

// Throws GridMismatch unless a and b share period and sample count.
void require_same_grid(const PeriodicWaveform& a, const PeriodicWaveform& b,
                       const char* where);

} // namespace zcsim
