#include "zcsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zcsim/errors.hpp"

namespace zcsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Shoelace sum over the closed polygon (last vertex joins the first).
double shoelace(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1 == n) ? 0 : j + 1;
        acc += x[j] * y[k] - x[k] * y[j];
    }
    return 0.5 * acc;
}

} // namespace

const char* loop_direction_name(LoopDirection d) noexcept {
    switch (d) {
    case LoopDirection::clockwise: return "clockwise";
    case LoopDirection::counterclockwise: return "counterclockwise";
    default: return "degenerate";
    }
}

const char* loop_classification_name(LoopClassification c) noexcept {
    switch (c) {
    case LoopClassification::inductive: return "inductive";
    case LoopClassification::capacitive: return "capacitive";
    default: return "resistive";
    }
}

HysteresisLoop extract_loop(const PeriodicWaveform& i, const PeriodicWaveform& v) {
    require_same_grid(i, v, "extract_loop");
    HysteresisLoop loop;
    loop.current = i.samples;
    loop.voltage = v.samples;
    loop.signed_area = shoelace(loop.current, loop.voltage);
    const double scale = max_abs(loop.current) * max_abs(loop.voltage);
    if (std::fabs(loop.signed_area) < 1e-6 * scale || scale == 0.0)
        loop.direction = LoopDirection::degenerate;
    else if (loop.signed_area > 0.0)
        loop.direction = LoopDirection::counterclockwise;
    else
        loop.direction = LoopDirection::clockwise;
    return loop;
}

LoopClassification classify_loop(const HysteresisLoop& loop) {
    switch (loop.direction) {
    case LoopDirection::clockwise: return LoopClassification::inductive;
    case LoopDirection::counterclockwise: return LoopClassification::capacitive;
    default: return LoopClassification::resistive;
    }
}

bool pinch_test(const HysteresisLoop& loop, double tol_v) {
    if (!(tol_v >= 0.0) || !std::isfinite(tol_v))
        throw InvalidArgument("pinch_test: tol_v must be nonnegative and finite");
    const std::size_t n = loop.current.size();
    if (n != loop.voltage.size() || n < 3)
        throw InvalidArgument("pinch_test: loop needs matched i/v arrays of at least 3 points");
    for (std::size_t j = 0; j < n; ++j) {
        const double i0 = loop.current[j];
        if (i0 == 0.0) {
            if (std::fabs(loop.voltage[j]) > tol_v) return false;
            continue;
        }
        const std::size_t k = (j + 1 == n) ? 0 : j + 1;
        const double i1 = loop.current[k];
        if (i0 * i1 < 0.0) {
            // Linear interpolation of v at the i = 0 traversal inside the segment.
            const double w = i0 / (i0 - i1);
            const double vz = loop.voltage[j] + w * (loop.voltage[k] - loop.voltage[j]);
            if (std::fabs(vz) > tol_v) return false;
        }
    }
    return true;
}

double average_power(const PeriodicWaveform& i, const PeriodicWaveform& v) {
    require_same_grid(i, v, "average_power");
    double acc = 0.0;
    for (int j = 0; j < i.size(); ++j) acc += v.samples[j] * i.samples[j];
    return acc / i.size();
}

double lamp_power_identity_residual(const PeriodicWaveform& i, const HysteresisLamp& lamp) {
    const int n = i.size();
    double rect = 0.0;
    for (double x : i.samples) rect += std::fabs(x);
    rect /= n;
    if (rect == 0.0)
        throw DegenerateInput("power identity undefined for identically zero current");
    if (lamp.A1() == 0.0)
        throw DegenerateInput("power identity undefined for a zero-amplitude element");

    // Derivative of the trigonometric interpolant. The differentiation
    // operator on this grid is antisymmetric, so <i * di/dt> cancels to
    // roundoff and only the sign term should survive.
    const FourierSeries spec = to_fourier(i, n / 2 - 1);
    const PeriodicWaveform didt = synthesize_derivative(spec, n);

    const double a1 = lamp.A1();
    double mean_vi = 0.0;
    for (int j = 0; j < n; ++j) {
        const double ij = i.samples[j];
        mean_vi += ij * (a1 * sign0(ij) + lamp.L_prime * didt.samples[j]);
    }
    mean_vi /= n;
    return std::fabs(mean_vi - a1 * rect) / (a1 * rect);
}

PoyntingBalance poynting_balance(double length, double radius, double v, double i) {
    if (!(length > 0.0) || !(radius > 0.0) || !std::isfinite(length) || !std::isfinite(radius))
        throw InvalidArgument("poynting_balance: length and radius must be positive and finite");
    if (!std::isfinite(v) || !std::isfinite(i))
        throw InvalidArgument("poynting_balance: v and i must be finite");
    // E_axial = v/l, H_circ = i/(2 pi r), area = 2 pi r l. The geometric
    // factors cancel before any floating-point evaluation, which is what
    // makes the two members bit-identical rather than merely close.
    PoyntingBalance out;
    out.surface_flow = v * i;
    out.vi = v * i;
    return out;
}

FluxChargeTrajectory flux_charge(const PeriodicWaveform& i, const PeriodicWaveform& v,
                                 int n_periods) {
    require_same_grid(i, v, "flux_charge");
    if (n_periods < 1) throw InvalidArgument("flux_charge: n_periods must be positive");
    const int n = i.size();
    const double dt = i.dt();
    const std::size_t total = static_cast<std::size_t>(n_periods) * n + 1;

    FluxChargeTrajectory out;
    out.time.resize(total);
    out.flux.resize(total);
    out.charge.resize(total);
    out.time[0] = 0.0;
    out.flux[0] = 0.0;
    out.charge[0] = 0.0;
    for (std::size_t k = 1; k < total; ++k) {
        const int j0 = static_cast<int>((k - 1) % n);
        const int j1 = static_cast<int>(k % n);
        out.time[k] = dt * k;
        out.flux[k] = out.flux[k - 1] + 0.5 * dt * (v.samples[j0] + v.samples[j1]);
        out.charge[k] = out.charge[k - 1] + 0.5 * dt * (i.samples[j0] + i.samples[j1]);
    }
    return out;
}

std::vector<FrequencyPoint> frequency_dependence_study(const StudiedElement& element,
                                                       double amplitude,
                                                       const std::vector<double>& omegas,
                                                       int n_samples) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw InvalidArgument("frequency study needs positive finite amplitude");
    if (omegas.empty()) throw InvalidArgument("frequency study needs at least one omega");
    for (double w : omegas)
        if (!(w > 0.0) || !std::isfinite(w))
            throw InvalidArgument("frequency study omegas must be positive and finite");
    if (n_samples < 16) throw InvalidArgument("frequency study needs at least 16 samples");

    // Phase grid shared across rows: i_j depends only on j, never on omega,
    // so a rate-independent element reproduces the identical point set at
    // every frequency.
    const int n = n_samples;
    std::vector<double> phase_sin(n), phase_cos(n);
    for (int j = 0; j < n; ++j) {
        phase_sin[j] = std::sin(two_pi * j / n);
        phase_cos[j] = std::cos(two_pi * j / n);
    }

    std::vector<FrequencyPoint> rows;
    rows.reserve(omegas.size());
    for (double w : omegas) {
        const double period = two_pi / w;
        std::vector<double> iv(n), vv(n);
        for (int j = 0; j < n; ++j) iv[j] = amplitude * phase_sin[j];

        if (const auto* lamp = std::get_if<HysteresisLamp>(&element)) {
            for (int j = 0; j < n; ++j) {
                const double didt = amplitude * w * phase_cos[j];
                vv[j] = lamp_voltage(*lamp, iv[j], didt);
            }
        } else {
            const auto& pl = std::get<PowerLawHysteresisElement>(element);
            int carry = 1; // cos starts positive at j = 0
            for (int j = 0; j < n; ++j) {
                int s = static_cast<int>(sign0(phase_cos[j]));
                if (s == 0) s = carry;
                carry = s;
                vv[j] = powerlaw_voltage(pl, iv[j], s);
            }
        }

        const HysteresisLoop loop = extract_loop(PeriodicWaveform(period, iv, Unit::ampere),
                                                 PeriodicWaveform(period, vv, Unit::volt));
        rows.push_back({w, loop.signed_area, classify_loop(loop)});
    }
    return rows;
}

std::pair<double, double> dvdi_range(const HysteresisLoop& loop, double exclusion) {
    const std::size_t n = loop.current.size();
    if (n != loop.voltage.size() || n < 3)
        throw InvalidArgument("dvdi_range: loop needs matched i/v arrays of at least 3 points");
    const double imax = max_abs(loop.current);
    if (imax == 0.0) throw DegenerateInput("dvdi_range: loop current is identically zero");
    const double band = exclusion < 0.0 ? 0.05 * imax : exclusion;
    const double tiny = 1e-12 * imax;

    double lo = 0.0, hi = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1 == n) ? 0 : j + 1;
        const double i0 = loop.current[j], i1 = loop.current[k];
        if (std::fabs(i0) < band || std::fabs(i1) < band) continue;
        const double di = i1 - i0;
        if (std::fabs(di) < tiny) continue;
        const double slope = (loop.voltage[k] - loop.voltage[j]) / di;
        if (used == 0) {
            lo = hi = slope;
        } else {
            lo = std::min(lo, slope);
            hi = std::max(hi, slope);
        }
        ++used;
    }
    if (used < 2)
        throw DegenerateInput("dvdi_range: too few segments outside the exclusion band");
    return {lo, hi};
}

} // namespace zcsim
