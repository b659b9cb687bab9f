#include "zcsim/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zcsim/errors.hpp"

namespace zcsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace

const char* unit_name(Unit u) noexcept {
    switch (u) {
    case Unit::volt: return "V";
    case Unit::ampere: return "A";
    case Unit::second: return "s";
    case Unit::watt: return "W";
    case Unit::weber: return "Wb";
    case Unit::coulomb: return "C";
    default: return "1";
    }
}

PeriodicWaveform::PeriodicWaveform(double period_T, std::vector<double> values, Unit tag)
    : period(period_T), samples(std::move(values)), unit(tag) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw InvalidArgument("waveform period must be positive and finite");
    if (samples.size() < 16)
        throw InvalidArgument("waveform needs at least 16 samples");
    if (!all_finite(samples))
        throw InvalidArgument("waveform samples must be finite");
}

double PeriodicWaveform::max_abs() const noexcept {
    double m = 0.0;
    for (double x : samples) m = std::max(m, std::fabs(x));
    return m;
}

FourierSeries::FourierSeries(double omega_, std::vector<double> a, std::vector<double> b)
    : omega(omega_), cos_coeffs(std::move(a)), sin_coeffs(std::move(b)) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidArgument("fourier series needs positive finite omega");
    if (cos_coeffs.empty() || cos_coeffs.size() != sin_coeffs.size())
        throw InvalidArgument("fourier series coefficient arrays must match and be nonempty");
    if (!all_finite(cos_coeffs) || !all_finite(sin_coeffs))
        throw InvalidArgument("fourier series coefficients must be finite");
    if (sin_coeffs[0] != 0.0)
        throw InvalidArgument("sin coefficient of harmonic 0 must be zero");
}

double FourierSeries::period() const noexcept { return two_pi / omega; }

double FourierSeries::magnitude(int n) const {
    if (n < 0 || n > max_harmonic())
        throw InvalidArgument("harmonic index out of range");
    return std::hypot(cos_coeffs[n], sin_coeffs[n]);
}

double FourierSeries::evaluate(double t) const {
    // Reduce the fundamental phase once; n*theta stays small enough that the
    // libm argument reduction holds full precision for n_max ~ 1000.
    const double theta = std::fmod(omega * t, two_pi);
    double acc = cos_coeffs[0];
    for (int n = 1; n <= max_harmonic(); ++n) {
        const double a = cos_coeffs[n];
        const double b = sin_coeffs[n];
        if (a == 0.0 && b == 0.0) continue;
        const double ph = n * theta;
        acc += a * std::cos(ph) + b * std::sin(ph);
    }
    return acc;
}

double FourierSeries::evaluate_derivative(double t) const {
    const double theta = std::fmod(omega * t, two_pi);
    double acc = 0.0;
    for (int n = 1; n <= max_harmonic(); ++n) {
        const double a = cos_coeffs[n];
        const double b = sin_coeffs[n];
        if (a == 0.0 && b == 0.0) continue;
        const double ph = n * theta;
        acc += n * omega * (b * std::cos(ph) - a * std::sin(ph));
    }
    return acc;
}

namespace {

// cos/sin table of 2*pi*k/N for k = 0..N-1. Index arithmetic keeps every
// projection phase exact: phase(n, j) = table[(n*j) mod N].
struct TrigTable {
    std::vector<double> c, s;
    explicit TrigTable(int n) : c(n), s(n) {
        for (int k = 0; k < n; ++k) {
            c[k] = std::cos(two_pi * k / n);
            s[k] = std::sin(two_pi * k / n);
        }
    }
};

} // namespace

FourierSeries to_fourier(const PeriodicWaveform& w, int n_max) {
    const int n = w.size();
    if (n_max < 0) throw InvalidArgument("to_fourier: n_max must be nonnegative");
    if (2 * n_max >= n)
        throw InvalidArgument("to_fourier: n_max must satisfy n_max < N/2");

    const TrigTable tab(n);
    std::vector<double> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
    double mean = 0.0;
    for (double x : w.samples) mean += x;
    a[0] = mean / n;

    for (int h = 1; h <= n_max; ++h) {
        double ca = 0.0, sb = 0.0;
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j) {
            ca += w.samples[j] * tab.c[idx];
            sb += w.samples[j] * tab.s[idx];
            idx += h;
            if (idx >= static_cast<std::size_t>(n)) idx -= n;
        }
        a[h] = 2.0 * ca / n;
        b[h] = 2.0 * sb / n;
    }
    return FourierSeries(two_pi / w.period, std::move(a), std::move(b));
}

PeriodicWaveform synthesize(const FourierSeries& f, int n_samples, Unit tag) {
    if (n_samples < 16) throw InvalidArgument("synthesize: need at least 16 samples");
    const int n = n_samples;
    const TrigTable tab(n);
    std::vector<double> out(n, f.cos_coeffs[0]);
    for (int h = 1; h <= f.max_harmonic(); ++h) {
        const double a = f.cos_coeffs[h];
        const double b = f.sin_coeffs[h];
        if (a == 0.0 && b == 0.0) continue;
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j) {
            out[j] += a * tab.c[idx] + b * tab.s[idx];
            idx += h;
            if (idx >= static_cast<std::size_t>(n)) idx -= n;
        }
    }
    return PeriodicWaveform(f.period(), std::move(out), tag);
}

PeriodicWaveform synthesize_derivative(const FourierSeries& f, int n_samples, Unit tag) {
    if (n_samples < 16) throw InvalidArgument("synthesize_derivative: need at least 16 samples");
    const int n = n_samples;
    const TrigTable tab(n);
    std::vector<double> out(n, 0.0);
    for (int h = 1; h <= f.max_harmonic(); ++h) {
        const double a = f.cos_coeffs[h];
        const double b = f.sin_coeffs[h];
        if (a == 0.0 && b == 0.0) continue;
        const double hw = h * f.omega;
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j) {
            out[j] += hw * (b * tab.c[idx] - a * tab.s[idx]);
            idx += h;
            if (idx >= static_cast<std::size_t>(n)) idx -= n;
        }
    }
    return PeriodicWaveform(f.period(), std::move(out), tag);
}

PeriodicWaveform sample_function(double period_T, int n_samples,
                                 const std::function<double(double)>& f, Unit tag) {
    if (n_samples < 16) throw InvalidArgument("sample_function: need at least 16 samples");
    std::vector<double> out(n_samples);
    for (int j = 0; j < n_samples; ++j) out[j] = f(period_T * j / n_samples);
    return PeriodicWaveform(period_T, std::move(out), tag);
}

double periodic_mean(const PeriodicWaveform& w) {
    double acc = 0.0;
    for (double x : w.samples) acc += x;
    return acc / w.size();
}

void require_same_grid(const PeriodicWaveform& a, const PeriodicWaveform& b,
                       const char* where) {
    if (a.size() != b.size() || a.period != b.period)
        throw GridMismatch(std::string(where) + ": waveforms must share period and sample count");
}

} // namespace zcsim
