#include "zcsim/square_wave.hpp"

#include <cmath>
#include <numbers>

#include "zcsim/errors.hpp"

namespace zcsim {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SquareWaveSpec::SquareWaveSpec(double amp, ZeroCrossingSet set)
    : amplitude(amp), crossings(std::move(set)) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw InvalidArgument("square wave amplitude must be finite positive");
    omega = two_pi / crossings.period;
}

FourierSeries sign_series_two_crossing(double t1, double omega, int n_max) {
    if (n_max < 1) throw InvalidArgument("sign_series_two_crossing needs n_max >= 1");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidArgument("sign series needs positive finite omega");
    std::vector<double> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
    const double theta1 = std::fmod(omega * t1, two_pi);
    for (int n = 1; n <= n_max; n += 2) {
        const double c = 4.0 / (std::numbers::pi * n);
        a[n] = -c * std::sin(n * theta1);
        b[n] = c * std::cos(n * theta1);
    }
    return FourierSeries(omega, std::move(a), std::move(b));
}

FourierSeries sign_series_general(const SquareWaveSpec& spec, int n_max) {
    if (n_max < 1) throw InvalidArgument("sign_series_general needs n_max >= 1");
    const double T = spec.crossings.period;
    const double w = spec.omega;
    const int m = spec.crossings.size();

    std::vector<double> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
    if (m == 0) {
        a[0] = spec.amplitude;
        return FourierSeries(w, std::move(a), std::move(b));
    }

    // segment [t_k, t_{k+1}) carries the sign set by the crossing at t_k;
    // the final segment wraps to t_0 + T
    for (int k = 0; k < m; ++k) {
        const double u = spec.crossings.time(k);
        const double v = k + 1 < m ? spec.crossings.time(k + 1) : spec.crossings.time(0) + T;
        const double c = spec.crossings.direction(k) == CrossingDirection::rising
                             ? spec.amplitude
                             : -spec.amplitude;
        a[0] += c * (v - u) / T;
        const double pu = std::fmod(w * u, two_pi);
        const double pv = std::fmod(w * v, two_pi);
        for (int n = 1; n <= n_max; ++n) {
            a[n] += (2.0 * c / (T * n * w)) * (std::sin(n * pv) - std::sin(n * pu));
            b[n] += (2.0 * c / (T * n * w)) * (std::cos(n * pu) - std::cos(n * pv));
        }
    }
    return FourierSeries(w, std::move(a), std::move(b));
}

DecayEstimate coefficient_decay_order(const FourierSeries& f, int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min)
        throw InvalidArgument("decay fit needs 1 <= n_min <= n_max");
    n_max = std::min(n_max, f.max_harmonic());
    if (n_max < n_min)
        throw InvalidArgument("decay fit window lies beyond the series truncation");

    constexpr double all_zero_floor = 1e-14;
    constexpr double fit_floor = 1e-13;

    bool any_above_floor = false;
    std::vector<double> ln_n, ln_c;
    for (int n = n_min; n <= n_max; ++n) {
        const double mag = f.magnitude(n);
        if (mag >= all_zero_floor) any_above_floor = true;
        if (mag >= fit_floor) {
            ln_n.push_back(std::log(static_cast<double>(n)));
            ln_c.push_back(std::log(mag));
        }
    }
    if (!any_above_floor) return {true, 0.0};
    if (ln_n.size() < 5)
        throw InvalidArgument("decay fit needs at least 5 harmonics above the noise floor");

    const auto n_pts = static_cast<double>(ln_n.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < ln_n.size(); ++j) {
        sx += ln_n[j];
        sy += ln_c[j];
        sxx += ln_n[j] * ln_n[j];
        sxy += ln_n[j] * ln_c[j];
    }
    const double slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    return {false, -slope};
}

double periodic_orthogonality(const PeriodicWaveform& g_of_i, const PeriodicWaveform& didt) {
    require_same_grid(g_of_i, didt, "periodic_orthogonality");
    // trapezoid over the closed period; with the wrap sample implied, this is
    // the plain mean of the products
    double acc = 0.0;
    for (int j = 0; j < g_of_i.size(); ++j) acc += g_of_i.samples[j] * didt.samples[j];
    return acc / g_of_i.size();
}

} // namespace zcsim
