#include "zcsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>

#include "zcsim/analysis.hpp"
#include "zcsim/errors.hpp"
#include "zcsim/square_wave.hpp"

namespace zcsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string format_interval(double lo, double hi) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "[%.12g, %.12g]", lo, hi);
    return buf;
}

// ---- circuit plumbing ------------------------------------------------------

double drive_amplitude(const DriveSpec& d) {
    if (const auto* s = std::get_if<NamedSinDrive>(&d)) return s->amplitude;
    return std::get<WaveformDrive>(d).amplitude;
}

void validate_circuit(const LampCircuit& c, bool require_halfwave) {
    if (!(c.omega > 0.0) || !std::isfinite(c.omega))
        throw InvalidArgument("circuit omega must be finite positive");
    const double u = drive_amplitude(c.drive);
    if (!(u > 0.0) || !std::isfinite(u))
        throw InvalidArgument("drive amplitude must be finite positive");
    if (const auto* wd = std::get_if<WaveformDrive>(&c.drive)) {
        const double period = two_pi / c.omega;
        if (std::fabs(wd->shape.period - period) > 1e-9 * period)
            throw InvalidArgument("drive shape period disagrees with circuit omega");
        const double scale = wd->shape.max_abs();
        if (scale == 0.0) throw InvalidArgument("drive shape is identically zero");
        if (std::fabs(periodic_mean(wd->shape)) > 1e-9 * scale)
            throw InvalidArgument("drive shape must have zero mean");
        if (require_halfwave) {
            const int n = wd->shape.size();
            if (n % 2 != 0)
                throw InvalidArgument("half-wave symmetry check needs an even sample count");
            double worst = 0.0;
            for (int j = 0; j < n / 2; ++j)
                worst = std::max(worst,
                                 std::fabs(wd->shape.samples[j] + wd->shape.samples[j + n / 2]));
            if (worst > 1e-9 * scale)
                throw InvalidArgument("two-crossing ansatz needs a half-wave symmetric drive");
        }
    }
}

// Drive voltage as a callable, exact for the named sine and the band-limited
// interpolant for sampled shapes.
struct DriveEval {
    bool is_sin = true;
    double u = 0.0;
    double omega = 0.0;
    std::optional<FourierSeries> series; // already scaled by u

    double operator()(double t) const {
        if (is_sin) return u * std::sin(omega * t);
        return series->evaluate(t);
    }
};

DriveEval make_drive_eval(const LampCircuit& c, int n_h) {
    DriveEval d;
    d.omega = c.omega;
    d.u = drive_amplitude(c.drive);
    if (const auto* wd = std::get_if<WaveformDrive>(&c.drive)) {
        d.is_sin = false;
        const int cap = std::min(n_h, wd->shape.size() / 2 - 1);
        FourierSeries f = to_fourier(wd->shape, cap);
        for (auto& a : f.cos_coeffs) a *= d.u;
        for (auto& b : f.sin_coeffs) b *= d.u;
        d.series = std::move(f);
    }
    return d;
}

// ---- harmonic model --------------------------------------------------------
//
// Phasor convention: X_n = a_n - j b_n represents a_n cos + b_n sin, i.e. the
// signal is Re(X_n e^{j n w t}).

struct HarmonicModel {
    double omega = 0.0, period = 0.0;
    double a_eff = 0.0;  // square-wave amplitude of the element
    double l_prime = 0.0;
    double l_tot = 0.0;  // asymptotic ballast inductance + l_prime
    bool dc_finite = false;
    double y0 = 0.0;
    int n_h = 0;
    std::vector<std::complex<double>> y_corr; // Y_eff(jnw) - 1/(jnw l_tot)
    std::vector<double> drive_a, drive_b;     // linear response Y_eff * V_n
};

HarmonicModel build_model(const LampCircuit& c, int n_h) {
    if (n_h < 1) throw InvalidArgument("need at least one harmonic");
    HarmonicModel m;
    m.omega = c.omega;
    m.period = two_pi / c.omega;
    m.a_eff = element_amplitude(c.element);
    m.l_prime = element_lead_inductance(c.element);
    if (m.a_eff != 0.0) {
        m.l_tot = asymptotic_inductance(c.ballast, c.omega) + m.l_prime;
    } else {
        // Sign term off: the solve is purely linear, the triangle split is
        // empty, and no asymptotic inductance is needed. Keep l_tot positive
        // so the unused correction entries stay finite.
        m.l_tot = 1.0;
    }
    m.dc_finite = c.ballast.dc_admittance_finite();
    m.y0 = m.dc_finite ? c.ballast.dc_admittance() : 0.0;
    m.n_h = n_h;

    // Drive phasors V_n including the amplitude.
    std::vector<std::complex<double>> v(n_h + 1, 0.0);
    const double u = drive_amplitude(c.drive);
    if (std::holds_alternative<NamedSinDrive>(c.drive)) {
        v[1] = std::complex<double>(0.0, -u); // U sin = Re(-jU e^{jwt})
    } else {
        const auto& wd = std::get<WaveformDrive>(c.drive);
        const int cap = std::min(n_h, wd.shape.size() / 2 - 1);
        const FourierSeries f = to_fourier(wd.shape, cap);
        for (int n = 0; n <= cap; ++n)
            v[n] = u * std::complex<double>(f.cos_coeffs[n], -f.sin_coeffs[n]);
    }

    m.y_corr.assign(n_h + 1, 0.0);
    m.drive_a.assign(n_h + 1, 0.0);
    m.drive_b.assign(n_h + 1, 0.0);
    if (m.dc_finite) m.drive_a[0] = m.y0 * v[0].real();

    for (int n = 1; n <= n_h; ++n) {
        const double w = n * c.omega;
        std::complex<double> z;
        try {
            z = c.ballast.impedance(w) + std::complex<double>(0.0, w * m.l_prime);
        } catch (const ModelDomainError&) {
            // Infinite ballast impedance at this harmonic: the branch is open,
            // the harmonic current is zero and the correction term cancels
            // the triangle's content there.
            m.y_corr[n] = std::complex<double>(0.0, 1.0 / (w * m.l_tot));
            continue;
        }
        if (z == std::complex<double>(0.0, 0.0))
            throw ResonanceError("series resonance at harmonic " + std::to_string(n));
        const std::complex<double> y = 1.0 / z;
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
            throw ResonanceError("admittance not finite at harmonic " + std::to_string(n));
        // 1/(jx) = -j/x, so subtracting the ideal-inductor admittance adds
        // +j/(w l_tot). For a pure inductive path the two terms cancel
        // exactly and the smooth correction vanishes.
        m.y_corr[n] = y + std::complex<double>(0.0, 1.0 / (w * m.l_tot));
        const std::complex<double> in = y * v[n];
        m.drive_a[n] = in.real();
        m.drive_b[n] = -in.imag();
    }
    return m;
}

// ---- exact triangular part -------------------------------------------------
//
// i2 integrates di2/dt = -rate * (s(t) - mean(s)) across the crossing
// segments: continuous, piecewise linear, periodic, zero mean. This part
// carries the O(1/n^2) tail exactly, leaving only O(1/n^3) content to the
// truncated harmonic correction.

struct TrianglePart {
    bool active = false;
    double period = 0.0;
    double square_mean = 0.0;
    double t0 = 0.0;               // first vertex (first crossing)
    std::vector<double> offset;    // vertex offsets from t0, increasing, in [0, T)
    std::vector<double> value;     // i2 at each vertex
    std::vector<double> slope;     // slope of the segment starting at vertex k

    int segment_of(double t) const {
        double tau = std::fmod(t - t0, period);
        if (tau < 0.0) tau += period;
        int lo = 0, hi = static_cast<int>(offset.size());
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            if (offset[mid] <= tau) lo = mid;
            else hi = mid;
        }
        return lo;
    }

    double eval(double t) const {
        if (!active) return 0.0;
        double tau = std::fmod(t - t0, period);
        if (tau < 0.0) tau += period;
        const int k = segment_of(t);
        return value[k] + slope[k] * (tau - offset[k]);
    }

    double slope_at(double t) const {
        if (!active) return 0.0;
        return slope[segment_of(t)];
    }
};

TrianglePart make_triangle(const ZeroCrossingSet& zc, double rate) {
    TrianglePart tp;
    tp.period = zc.period;
    if (zc.empty()) return tp;

    const int k = zc.size();
    tp.t0 = zc.time(0);
    tp.offset.resize(k);
    std::vector<double> seg_len(k);
    std::vector<int> seg_sign(k);
    for (int j = 0; j < k; ++j) {
        tp.offset[j] = zc.time(j) - tp.t0;
        seg_sign[j] = zc.direction(j) == CrossingDirection::rising ? 1 : -1;
    }
    for (int j = 0; j + 1 < k; ++j) seg_len[j] = tp.offset[j + 1] - tp.offset[j];
    seg_len[k - 1] = tp.period - tp.offset[k - 1];

    double mean_s = 0.0;
    for (int j = 0; j < k; ++j) mean_s += seg_sign[j] * seg_len[j];
    mean_s /= tp.period;
    tp.square_mean = mean_s;

    if (rate == 0.0) return tp; // square mean still meaningful, i2 is zero

    tp.slope.resize(k);
    tp.value.assign(k, 0.0);
    for (int j = 0; j < k; ++j) tp.slope[j] = -rate * (seg_sign[j] - mean_s);
    for (int j = 0; j + 1 < k; ++j) tp.value[j + 1] = tp.value[j] + tp.slope[j] * seg_len[j];

    double mean_i2 = 0.0;
    for (int j = 0; j < k; ++j) {
        const double end = tp.value[j] + tp.slope[j] * seg_len[j];
        mean_i2 += 0.5 * (tp.value[j] + end) * seg_len[j];
    }
    mean_i2 /= tp.period;
    for (double& x : tp.value) x -= mean_i2;
    tp.active = true;
    return tp;
}

// ---- per-candidate assembly --------------------------------------------------

struct CandidateParts {
    FourierSeries smooth; // drive response + truncated correction + DC
    TrianglePart tri;

    double eval(double t) const { return smooth.evaluate(t) + tri.eval(t); }
};

CandidateParts assemble(const HarmonicModel& m, const ZeroCrossingSet& zc,
                        const FourierSeries& unit_square) {
    std::vector<double> a = m.drive_a, b = m.drive_b;
    if (m.a_eff != 0.0) {
        const int top = std::min<int>(m.n_h, unit_square.max_harmonic());
        for (int n = 1; n <= top; ++n) {
            const std::complex<double> s(unit_square.cos_coeffs[n], -unit_square.sin_coeffs[n]);
            const std::complex<double> d = m.y_corr[n] * (-m.a_eff * s);
            a[n] += d.real();
            b[n] -= d.imag();
        }
    }
    TrianglePart tri = make_triangle(zc, m.a_eff / m.l_tot);
    if (m.dc_finite && m.a_eff != 0.0) a[0] += m.y0 * (-m.a_eff * tri.square_mean);
    return {FourierSeries(m.omega, std::move(a), std::move(b)), std::move(tri)};
}

double max_abs_on_probe(const CandidateParts& p, double period) {
    double worst = 0.0;
    for (int j = 0; j < 64; ++j)
        worst = std::max(worst, std::fabs(p.eval(period * j / 64.0)));
    return worst;
}

// ---- result synthesis --------------------------------------------------------

SteadyState finalize_state(const HarmonicModel& m, const CandidateParts& parts,
                           ZeroCrossingSet zc, int iterations, double residual,
                           int n_samples) {
    PeriodicWaveform i_w = synthesize(parts.smooth, n_samples, Unit::ampere);
    PeriodicWaveform didt_w = synthesize_derivative(parts.smooth, n_samples);
    std::vector<double> vv(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double t = i_w.time_at(j);
        i_w.samples[j] += parts.tri.eval(t);
        const double didt = didt_w.samples[j] + parts.tri.slope_at(t);
        vv[j] = m.a_eff * zc.sign_at(t) + m.l_prime * didt;
    }
    PeriodicWaveform v_w(m.period, std::move(vv), Unit::volt);
    return SteadyState{std::move(i_w), std::move(v_w), std::move(zc), iterations, residual};
}

void check_segment_signs(const HarmonicModel& m, const CandidateParts& parts,
                         const ZeroCrossingSet& zc) {
    if (m.a_eff == 0.0) return;
    const int k = zc.size();
    for (int j = 0; j < k; ++j) {
        const double t_a = zc.time(j);
        const double t_b = j + 1 < k ? zc.time(j + 1) : zc.time(0) + m.period;
        const double mid = 0.5 * (t_a + t_b);
        const int want = zc.direction(j) == CrossingDirection::rising ? 1 : -1;
        if (sign0(parts.eval(mid)) * want <= 0.0)
            throw AssumptionViolated(
                "current sign between crossings disagrees with the switching ansatz");
    }
}

// ---- dense linear solve ------------------------------------------------------

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
        if (std::fabs(a[piv * n + col]) < 1e-300)
            throw ConvergenceFailure("singular Jacobian in the crossing iteration");
        if (piv != col) {
            for (int cc = 0; cc < n; ++cc) std::swap(a[piv * n + cc], a[col * n + cc]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (int cc = col; cc < n; ++cc) a[r * n + cc] -= f * a[col * n + cc];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int cc = r + 1; cc < n; ++cc) acc -= a[r * n + cc] * x[cc];
        x[r] = acc / a[r * n + r];
    }
    return x;
}

void validate_sampling(int n_harmonics, int n_samples) {
    if (n_samples < 64 || n_samples % 2 != 0)
        throw InvalidArgument("need an even sample count of at least 64");
    if (2 * n_harmonics >= n_samples)
        throw InvalidArgument("sample count must exceed twice the harmonic count");
}

} // namespace

double element_amplitude(const LampElement& e) noexcept {
    if (const auto* h = std::get_if<SignHardlimiter>(&e)) return h->A;
    return std::get<HysteresisLamp>(e).A1();
}

double element_lead_inductance(const LampElement& e) noexcept {
    if (std::holds_alternative<SignHardlimiter>(e)) return 0.0;
    return std::get<HysteresisLamp>(e).L_prime;
}

SteadyState steady_state_two_crossing(const LampCircuit& c, double tol,
                                      int n_harmonics, int n_samples) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw InvalidArgument("tolerance must be finite positive");
    validate_sampling(n_harmonics, n_samples);
    validate_circuit(c, /*require_halfwave=*/true);

    const HarmonicModel m = build_model(c, n_harmonics);
    const double period = m.period;
    const double half = 0.5 * period;

    auto make_set = [&](double t1) {
        return ZeroCrossingSet(period, {{t1, CrossingDirection::rising},
                                        {t1 + half, CrossingDirection::falling}});
    };
    auto g = [&](double t1) {
        const CandidateParts parts =
            assemble(m, make_set(t1), sign_series_two_crossing(t1, m.omega, m.n_h));
        return parts.eval(t1);
    };

    // Bracket every sign change of g over [0, T/2); a unique root is the
    // two-crossing regime, several roots mean the ansatz is ambiguous.
    const int scan_n = 1024;
    std::vector<std::pair<double, double>> brackets;
    double prev_t = 0.0, prev_g = g(0.0);
    double exact_root = prev_g == 0.0 ? 0.0 : -1.0;
    for (int j = 1; j <= scan_n; ++j) {
        const double t = half * j / (scan_n + 1);
        const double gj = g(t);
        if (gj == 0.0) exact_root = t;
        if (prev_g * gj < 0.0) brackets.emplace_back(prev_t, t);
        prev_t = t;
        prev_g = gj;
    }
    if (brackets.empty() && exact_root < 0.0) {
        std::string msg = "crossing residual has no sign change over the half period: "
                          "the drive cannot sustain the two-crossing discharge";
        if (const auto* sine = std::get_if<NamedSinDrive>(&c.drive)) {
            const double a_eff = element_amplitude(c.element);
            char bound[160];
            std::snprintf(bound, sizeof bound,
                          " (a sine drive needs U >= A1*pi/2 = %.6g, exact for a pure "
                          "inductor; U = %.6g here)",
                          a_eff * std::numbers::pi / 2.0, sine->amplitude);
            msg += bound;
        }
        throw NoSolution(msg);
    }
    if (brackets.size() > 1) {
        std::string msg = "crossing residual brackets several roots:";
        for (const auto& [lo, hi] : brackets) msg += " " + format_interval(lo, hi);
        throw AssumptionViolated(msg);
    }

    int iterations = 0;
    double t1;
    if (exact_root >= 0.0 && brackets.empty()) {
        t1 = exact_root;
    } else {
        auto [lo, hi] = brackets.front();
        double glo = g(lo);
        while (hi - lo > 1e-12 * period) {
            const double mid = 0.5 * (lo + hi);
            const double gm = g(mid);
            ++iterations;
            if (gm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (glo * gm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                glo = gm;
            }
        }
        t1 = 0.5 * (lo + hi);
        // Guarded secant-style polish; the residual is continuous but has
        // one-sided slopes, so a step is kept only when it helps.
        double gt = g(t1);
        const double h = 1e-8 * period;
        for (int it = 0; it < 3 && gt != 0.0; ++it) {
            const double d = (g(t1 + h) - g(t1 - h)) / (2.0 * h);
            if (d == 0.0 || !std::isfinite(d)) break;
            const double cand = t1 - gt / d;
            if (!(cand >= 0.0) || cand >= half) break;
            const double gc = g(cand);
            ++iterations;
            if (std::fabs(gc) >= std::fabs(gt)) break;
            t1 = cand;
            gt = gc;
        }
    }

    const CandidateParts parts =
        assemble(m, make_set(t1), sign_series_two_crossing(t1, m.omega, m.n_h));
    const double residual = std::fabs(parts.eval(t1));
    const double scale = std::max(1.0, max_abs_on_probe(parts, period));
    if (residual > tol * scale)
        throw ConvergenceFailure("two-crossing residual above tolerance");

    ZeroCrossingSet zc = make_set(t1);
    check_segment_signs(m, parts, zc);
    SteadyState out = finalize_state(m, parts, std::move(zc), iterations, residual, n_samples);

    const ZeroCrossingSet seen = detect_zerocrossings(out.current);
    if (seen.size() != 2)
        throw AssumptionViolated("converged waveform has " + std::to_string(seen.size()) +
                                 " crossings; use the multi-crossing solver");
    return out;
}

SteadyState multi_crossing_solver(const LampCircuit& c, int m_lobes,
                                  const ZeroCrossingSet& initial_guess, double tol,
                                  int n_harmonics, int n_samples, int max_iterations) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw InvalidArgument("tolerance must be finite positive");
    if (m_lobes < 1) throw InvalidArgument("need at least one lobe");
    validate_sampling(n_harmonics, n_samples);
    validate_circuit(c, /*require_halfwave=*/false);

    const HarmonicModel m = build_model(c, n_harmonics);
    const double period = m.period;
    if (std::fabs(initial_guess.period - period) > 1e-9 * period)
        throw InvalidArgument("initial guess period disagrees with circuit omega");
    const int k = 2 * m_lobes;
    if (initial_guess.size() != k)
        throw InvalidArgument("initial guess must carry exactly 2m crossings");

    std::vector<double> tau(k);
    std::vector<CrossingDirection> dirs(k);
    for (int j = 0; j < k; ++j) {
        tau[j] = initial_guess.time(j);
        dirs[j] = initial_guess.direction(j);
    }

    // Wrap into [0, T), restore increasing order by rotation (the set may
    // drift across t = 0 during iteration), and reject genuine reorderings.
    auto normalize = [&](std::vector<double>& t, std::vector<CrossingDirection>& d) {
        for (double& x : t) {
            x = std::fmod(x, period);
            if (x < 0.0) x += period;
        }
        int rot = 0;
        for (int j = 1; j < k; ++j)
            if (t[j] < t[rot]) rot = j;
        std::rotate(t.begin(), t.begin() + rot, t.end());
        std::rotate(d.begin(), d.begin() + rot, d.end());
        for (int j = 1; j < k; ++j)
            if (t[j] - t[j - 1] < 1e-9 * period)
                throw ConvergenceFailure("crossings collided or lost their ordering");
    };
    normalize(tau, dirs);

    auto make_set = [&](const std::vector<double>& t, const std::vector<CrossingDirection>& d) {
        std::vector<Crossing> list(k);
        for (int j = 0; j < k; ++j) list[j] = {t[j], d[j]};
        return ZeroCrossingSet(period, std::move(list));
    };
    auto parts_for = [&](const ZeroCrossingSet& zc) {
        return assemble(m, zc, sign_series_general(SquareWaveSpec(1.0, zc), m.n_h));
    };
    auto residual_vec = [&](const std::vector<double>& t,
                            const std::vector<CrossingDirection>& d) {
        const CandidateParts parts = parts_for(make_set(t, d));
        std::vector<double> f(k);
        for (int j = 0; j < k; ++j) f[j] = parts.eval(t[j]);
        return f;
    };
    auto norm_inf = [](const std::vector<double>& f) {
        double worst = 0.0;
        for (double x : f) worst = std::max(worst, std::fabs(x));
        return worst;
    };

    const double h = 1e-7 * period;
    std::vector<double> f = residual_vec(tau, dirs);
    double fnorm = norm_inf(f);
    int iterations = 0;
    bool converged = false;

    for (; iterations < max_iterations; ++iterations) {
        const CandidateParts probe = parts_for(make_set(tau, dirs));
        const double scale = std::max(1.0, max_abs_on_probe(probe, period));
        if (fnorm <= tol * scale) {
            converged = true;
            break;
        }

        std::vector<double> jac(k * k);
        for (int col = 0; col < k; ++col) {
            std::vector<double> tp = tau, tm = tau;
            tp[col] += h;
            tm[col] -= h;
            const std::vector<double> fp = residual_vec(tp, dirs);
            const std::vector<double> fm = residual_vec(tm, dirs);
            for (int row = 0; row < k; ++row)
                jac[row * k + col] = (fp[row] - fm[row]) / (2.0 * h);
        }
        std::vector<double> rhs(k);
        for (int j = 0; j < k; ++j) rhs[j] = -f[j];
        const std::vector<double> step = solve_dense(std::move(jac), std::move(rhs));

        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 8; ++halving) {
            std::vector<double> cand = tau;
            std::vector<CrossingDirection> cd = dirs;
            for (int j = 0; j < k; ++j) cand[j] += lambda * step[j];
            try {
                normalize(cand, cd);
            } catch (const ConvergenceFailure&) {
                lambda *= 0.5;
                continue;
            }
            const std::vector<double> fc = residual_vec(cand, cd);
            const double fcn = norm_inf(fc);
            if (fcn < fnorm) {
                tau = std::move(cand);
                dirs = std::move(cd);
                f = fc;
                fnorm = fcn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw ConvergenceFailure("crossing iteration stalled: residual " +
                                     std::to_string(fnorm) + " stopped improving");
    }
    if (!converged)
        throw ConvergenceFailure("crossing iteration did not converge in " +
                                 std::to_string(max_iterations) + " steps");

    ZeroCrossingSet zc = make_set(tau, dirs);
    const CandidateParts parts = parts_for(zc);
    try {
        check_segment_signs(m, parts, zc);
    } catch (const AssumptionViolated& e) {
        throw InconsistentCrossings(e.what());
    }
    SteadyState out = finalize_state(m, parts, std::move(zc), iterations, fnorm, n_samples);

    const ZeroCrossingSet seen = detect_zerocrossings(out.current);
    if (seen.size() != k)
        throw InconsistentCrossings("assumed " + std::to_string(k) + " crossings but the waveform has " +
                                    std::to_string(seen.size()));
    return out;
}

std::pair<PeriodicWaveform, PeriodicWaveform>
smooth_rough_decompose(const SteadyState& s, double a_eff, double inductance) {
    if (!(a_eff >= 0.0) || !std::isfinite(a_eff))
        throw InvalidArgument("effective amplitude must be finite and >= 0");
    if (!(inductance > 0.0) || !std::isfinite(inductance))
        throw InvalidArgument("inductance must be finite positive");

    const TrianglePart tri = make_triangle(s.crossings, a_eff / inductance);
    const int n = s.current.size();
    std::vector<double> i2(n), i1(n);
    for (int j = 0; j < n; ++j) {
        const double t = s.current.time_at(j);
        i2[j] = tri.eval(t);
        i1[j] = s.current.samples[j] - i2[j];
    }
    return {PeriodicWaveform(s.current.period, std::move(i1), Unit::ampere),
            PeriodicWaveform(s.current.period, std::move(i2), Unit::ampere)};
}

SteadyState time_domain_oracle(const LampCircuit& c, std::vector<double> x0,
                               double tol_ss, int max_periods, int n_samples) {
    if (!(tol_ss > 0.0) || !std::isfinite(tol_ss))
        throw InvalidArgument("settling tolerance must be finite positive");
    if (max_periods < 2) throw InvalidArgument("need at least two periods");
    if (n_samples < 64) throw InvalidArgument("need at least 64 samples per period");
    validate_circuit(c, /*require_halfwave=*/false);

    const auto* rlc = std::get_if<SeriesRLC>(&c.ballast.form);
    if (!rlc)
        throw InvalidArgument("time-domain reference requires a series R-L(-C) ballast");
    const double res = rlc->resistance;
    const double l_prime = element_lead_inductance(c.element);
    const double l_tot = rlc->inductance + l_prime;
    if (!(l_tot > 0.0))
        throw InvalidArgument("time-domain reference needs series inductance in the loop");
    const bool has_c = rlc->capacitance.has_value();
    const double cap = has_c ? *rlc->capacitance : 0.0;
    const double a_eff = element_amplitude(c.element);

    const int dim = has_c ? 2 : 1;
    if (x0.empty()) x0.assign(dim, 0.0);
    if (static_cast<int>(x0.size()) != dim)
        throw InvalidArgument("initial state must be {i0} or {i0, vC0} to match the ballast");
    for (double x : x0)
        if (!std::isfinite(x)) throw InvalidArgument("initial state must be finite");

    const DriveEval vin = make_drive_eval(c, 999);
    const double period = two_pi / c.omega;
    const int n = n_samples;
    const double dt = period / n;

    double cur_i = x0[0];
    double cur_vc = has_c ? x0[1] : 0.0;
    int s;
    if (cur_i != 0.0) {
        s = cur_i > 0.0 ? 1 : -1;
    } else {
        const double push = vin(0.0) - cur_vc;
        s = std::fabs(push) > a_eff ? (push > 0.0 ? 1 : -1) : 0;
    }

    auto rk4 = [&](double t, double span, double i0, double vc0, int regime,
                   double& i1, double& vc1) {
        auto f = [&](double tt, double ii, double vv, double& di, double& dv) {
            di = (vin(tt) - res * ii - vv - a_eff * regime) / l_tot;
            dv = has_c ? ii / cap : 0.0;
        };
        double k1i, k1v, k2i, k2v, k3i, k3v, k4i, k4v;
        f(t, i0, vc0, k1i, k1v);
        f(t + 0.5 * span, i0 + 0.5 * span * k1i, vc0 + 0.5 * span * k1v, k2i, k2v);
        f(t + 0.5 * span, i0 + 0.5 * span * k2i, vc0 + 0.5 * span * k2v, k3i, k3v);
        f(t + span, i0 + span * k3i, vc0 + span * k3v, k4i, k4v);
        i1 = i0 + span / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
        vc1 = vc0 + span / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    };

    struct Event {
        double time;
        int new_sign;
    };
    std::vector<Event> events;
    int s_before_slide = 0;

    // Advance the state from ta to tb, splitting at regime changes.
    auto integrate_interval = [&](double ta, double tb) {
        int guard = 0;
        while (ta < tb) {
            if (++guard > 64)
                throw ConvergenceFailure("too many switching events inside one step");
            if (s == 0) {
                // Sliding: i pinned at zero until the drive can push through.
                auto excess = [&](double t) { return std::fabs(vin(t) - cur_vc) - a_eff; };
                double t_hit = -1.0, lo = ta;
                for (int part = 1; part <= 2; ++part) {
                    const double t_probe = ta + (tb - ta) * part / 2.0;
                    if (excess(t_probe) > 0.0) {
                        t_hit = t_probe;
                        break;
                    }
                    lo = t_probe;
                }
                if (t_hit < 0.0) {
                    ta = tb; // stays pinned through this interval
                    break;
                }
                double hi = t_hit;
                for (int it = 0; it < 80 && hi - lo > 1e-14 * period; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (excess(mid) > 0.0) hi = mid;
                    else lo = mid;
                }
                const double push = vin(hi) - cur_vc;
                const int s_new = push > 0.0 ? 1 : -1;
                if (s_before_slide != 0 && s_new != s_before_slide)
                    events.push_back({hi, s_new});
                s = s_new;
                ta = hi;
                continue;
            }

            double i_trial, vc_trial;
            rk4(ta, tb - ta, cur_i, cur_vc, s, i_trial, vc_trial);
            if (i_trial * s > 0.0) {
                cur_i = i_trial;
                cur_vc = vc_trial;
                ta = tb;
                break;
            }

            // The current crosses zero inside (ta, tb): bisect the instant.
            double lo = ta, hi = tb;
            for (int it = 0; it < 80 && hi - lo > 1e-14 * period; ++it) {
                const double mid = 0.5 * (lo + hi);
                double im, vm;
                rk4(ta, mid - ta, cur_i, cur_vc, s, im, vm);
                if (im * s > 0.0) lo = mid;
                else hi = mid;
            }
            double i_at, vc_at;
            rk4(ta, hi - ta, cur_i, cur_vc, s, i_at, vc_at);
            cur_i = 0.0;
            cur_vc = vc_at;
            const double push = vin(hi) - cur_vc;
            if (std::fabs(push) > a_eff) {
                const int s_new = push > 0.0 ? 1 : -1;
                if (s_new != s) events.push_back({hi, s_new});
                s = s_new;
            } else {
                s_before_slide = s;
                s = 0;
            }
            ta = hi;
        }
    };

    std::vector<double> prev_i(n, 0.0), iv(n), vv(n);
    bool have_prev = false;
    bool settled = false;
    int periods_done = 0;
    double last_diff = 0.0;

    for (int p = 0; p < max_periods && !settled; ++p) {
        const double start = p * period;
        events.clear();
        for (int j = 0; j < n; ++j) {
            const double t_node = start + j * dt;
            iv[j] = cur_i;
            if (s == 0) {
                vv[j] = std::clamp(vin(t_node) - cur_vc, -a_eff, a_eff);
            } else {
                const double didt = (vin(t_node) - res * cur_i - cur_vc - a_eff * s) / l_tot;
                vv[j] = a_eff * s + l_prime * didt;
            }
            integrate_interval(t_node, start + (j + 1) * dt);
        }
        periods_done = p + 1;
        if (have_prev) {
            double diff = 0.0, imax = 0.0;
            for (int j = 0; j < n; ++j) {
                diff = std::max(diff, std::fabs(iv[j] - prev_i[j]));
                imax = std::max(imax, std::fabs(iv[j]));
            }
            last_diff = diff;
            if (diff <= tol_ss * std::max(imax, 1e-300)) settled = true;
        }
        if (!settled) {
            std::swap(prev_i, iv);
            have_prev = true;
        }
    }
    if (!settled)
        throw ConvergenceFailure("transient not settled after " +
                                 std::to_string(max_periods) + " periods");

    const double start = (periods_done - 1) * period;
    std::vector<Crossing> list;
    list.reserve(events.size());
    for (const Event& e : events) {
        double t = e.time - start;
        if (t >= period) t -= period;
        if (t < 0.0) t = 0.0;
        list.push_back({t, e.new_sign > 0 ? CrossingDirection::rising : CrossingDirection::falling});
    }
    ZeroCrossingSet zc(period, std::move(list));

    return SteadyState{PeriodicWaveform(period, std::move(iv), Unit::ampere),
                       PeriodicWaveform(period, std::move(vv), Unit::volt), std::move(zc),
                       periods_done, last_diff};
}

std::vector<SweepRow> power_scaling_sweep(const LampCircuit& c,
                                          const std::vector<double>& u_grid,
                                          double tol, int n_harmonics, int n_samples) {
    if (u_grid.empty())
        throw InvalidArgument("amplitude sweep needs at least one grid point");
    for (std::size_t j = 0; j < u_grid.size(); ++j) {
        if (!(u_grid[j] > 0.0) || !std::isfinite(u_grid[j]))
            throw InvalidArgument("sweep amplitudes must be finite positive");
        if (j > 0 && u_grid[j] <= u_grid[j - 1])
            throw InvalidArgument("sweep amplitudes must be strictly increasing");
    }

    std::vector<SweepRow> rows;
    rows.reserve(u_grid.size());
    for (double u : u_grid) {
        LampCircuit cu = c;
        if (auto* sd = std::get_if<NamedSinDrive>(&cu.drive)) sd->amplitude = u;
        else std::get<WaveformDrive>(cu.drive).amplitude = u;

        const SteadyState ss = steady_state_two_crossing(cu, tol, n_harmonics, n_samples);
        const DriveEval vin = make_drive_eval(cu, n_harmonics);
        const PeriodicWaveform vin_w = sample_function(
            ss.current.period, ss.current.size(), [&](double t) { return vin(t); }, Unit::volt);
        const double p = average_power(ss.current, vin_w);
        if (!(p > 0.0))
            throw DegenerateInput("sweep row has nonpositive source power, log-log slope undefined");
        rows.push_back({u, p, ss.crossings.time(0), 0.0});
    }

    const int nrows = static_cast<int>(rows.size());
    if (nrows == 1) {
        // No differences possible: the slope is undefined, not zero.
        rows[0].loglog_slope = std::numeric_limits<double>::quiet_NaN();
        return rows;
    }
    auto slope_between = [&](int a, int b) {
        return (std::log(rows[b].power) - std::log(rows[a].power)) /
               (std::log(rows[b].drive_amplitude) - std::log(rows[a].drive_amplitude));
    };
    for (int j = 0; j < nrows; ++j) {
        const int a = j == 0 ? 0 : j - 1;
        const int b = j == nrows - 1 ? nrows - 1 : j + 1;
        rows[j].loglog_slope = slope_between(a, b);
    }
    return rows;
}

double affine_superposition_check(const BallastDescriptor& linear_op,
                                  const PeriodicWaveform& xi,
                                  const PeriodicWaveform& f_wave,
                                  double u1, double u2) {
    require_same_grid(xi, f_wave, "affine_superposition_check");
    if (u1 == u2 || !std::isfinite(u1) || !std::isfinite(u2))
        throw InvalidArgument("need two distinct finite amplitudes");

    const int n = xi.size();
    const double omega = two_pi / xi.period;
    const int n_max = n / 2 - 1;

    auto apply_inverse = [&](const PeriodicWaveform& w) {
        FourierSeries f = to_fourier(w, n_max);
        const double coeff_scale = std::max(w.max_abs(), 1e-300);
        if (linear_op.dc_admittance_finite()) {
            f.cos_coeffs[0] *= linear_op.dc_admittance();
        } else {
            if (std::fabs(f.cos_coeffs[0]) > 1e-12 * coeff_scale)
                throw ResonanceError("nonzero mean cannot pass an inductive path at DC");
            f.cos_coeffs[0] = 0.0;
        }
        for (int h = 1; h <= n_max; ++h) {
            std::complex<double> y;
            try {
                y = linear_op.admittance(h * omega);
            } catch (const ModelDomainError&) {
                throw ResonanceError("admittance singular at harmonic " + std::to_string(h));
            }
            const std::complex<double> ph(f.cos_coeffs[h], -f.sin_coeffs[h]);
            const std::complex<double> out = y * ph;
            f.cos_coeffs[h] = out.real();
            f.sin_coeffs[h] = -out.imag();
        }
        return synthesize(f, n, Unit::ampere);
    };

    const PeriodicWaveform base = apply_inverse(xi);
    const PeriodicWaveform offset = apply_inverse(f_wave);

    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const double ia = u1 * base.samples[j] + offset.samples[j];
        const double ib = u2 * base.samples[j] + offset.samples[j];
        worst = std::max(worst, std::fabs((ia - ib) / (u1 - u2) - base.samples[j]));
    }
    return worst;
}

} // namespace zcsim
