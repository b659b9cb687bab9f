#include "zcsim/crossings.hpp"

#include <algorithm>
#include <cmath>

#include "zcsim/errors.hpp"

namespace zcsim {

ZeroCrossingSet::ZeroCrossingSet(double period_T, std::vector<Crossing> list)
    : period(period_T), crossings(std::move(list)) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw InvalidArgument("crossing set needs a positive finite period");
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const double t = crossings[k].time;
        if (!std::isfinite(t) || t < 0.0 || t >= period)
            throw InvalidArgument("crossing instants must lie in [0, T)");
        if (k > 0 && !(t > crossings[k - 1].time))
            throw InvalidArgument("crossing instants must be strictly increasing");
    }
    if (crossings.size() % 2 != 0)
        throw InconsistentCrossings("a periodic signal has an even number of crossings");
    for (std::size_t k = 0; k + 1 < crossings.size(); ++k)
        if (crossings[k].direction == crossings[k + 1].direction)
            throw InconsistentCrossings("crossing directions must alternate");
}

int ZeroCrossingSet::sign_at(double t) const {
    if (crossings.empty()) return 1;
    double tau = std::fmod(t, period);
    if (tau < 0.0) tau += period;
    // last crossing at or before tau; wraps to the final crossing when tau
    // precedes the first one
    int lo = 0, hi = size() - 1, idx = -1;
    while (lo <= hi) {
        const int mid = (lo + hi) / 2;
        if (crossings[mid].time <= tau) { idx = mid; lo = mid + 1; }
        else hi = mid - 1;
    }
    if (idx >= 0 && crossings[idx].time == tau) return 0;
    const Crossing& c = idx >= 0 ? crossings[idx] : crossings.back();
    return c.direction == CrossingDirection::rising ? 1 : -1;
}

namespace {

int sgn(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Root of the segment's linear interpolant by bisection. The endpoint values
// have strictly opposite signs on entry.
double bisect_segment(double t0, double t1, double f0, double f1, double tol) {
    double lo = t0, hi = t1, flo = f0;
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double u = (mid - t0) / (t1 - t0);
        const double fm = f0 + (f1 - f0) * u;
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

ZeroCrossingSet detect_zerocrossings(const PeriodicWaveform& w, double refine_tol) {
    const int n = w.size();
    const double T = w.period;
    if (refine_tol <= 0.0) refine_tol = T * 1e-10;

    std::vector<int> sign(n);
    bool any_nonzero = false;
    for (int j = 0; j < n; ++j) {
        sign[j] = sgn(w.samples[j]);
        any_nonzero = any_nonzero || sign[j] != 0;
    }
    if (!any_nonzero)
        throw DegenerateInput("zerocrossing detection on an identically zero waveform");
    for (int j = 0; j < n; ++j)
        if (sign[j] == 0 && sign[(j + 1) % n] == 0)
            throw DegenerateInput("waveform holds zero over an interval, crossings undefined");

    std::vector<Crossing> out;
    for (int j = 0; j < n; ++j) {
        const int jn = (j + 1) % n;
        if (sign[j] == 0) {
            // exact-zero sample: crossing iff the nonzero neighbours disagree
            const int prev = sign[(j + n - 1) % n];
            const int next = sign[jn];
            if (prev * next < 0)
                out.push_back({w.time_at(j),
                               next > 0 ? CrossingDirection::rising : CrossingDirection::falling});
            continue;
        }
        if (sign[jn] != 0 && sign[j] * sign[jn] < 0) {
            const double t0 = w.time_at(j);
            const double t1 = t0 + w.dt(); // handles the wrap segment ending at T
            const double tc = bisect_segment(t0, t1, w.samples[j], w.samples[jn], refine_tol);
            // the wrap segment may refine to exactly T, which is the already
            // reported instant 0
            if (tc < T)
                out.push_back({tc, sign[jn] > 0 ? CrossingDirection::rising
                                                : CrossingDirection::falling});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Crossing& a, const Crossing& b) { return a.time < b.time; });
    if (out.size() % 2 != 0)
        throw InconsistentCrossings("odd zerocrossing count, waveform inconsistent with periodicity");
    return ZeroCrossingSet(T, std::move(out));
}

} // namespace zcsim
