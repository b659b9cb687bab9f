#pragma once

#include <vector>

#include "zcsim/waveform.hpp"

namespace zcsim {

enum class CrossingDirection { rising, falling }; // rising: - to +

struct Crossing {
    double time = 0.0;
    CrossingDirection direction = CrossingDirection::rising;
};

// Zerocrossing instants of one period, strictly increasing in [0, T).
// A valid set has even cardinality and alternating directions (a continuous
// signal cannot cross the same way twice in a row). Empty sets are valid and
// describe a one-signed waveform.
struct ZeroCrossingSet {
    double period = 0.0;
    std::vector<Crossing> crossings;

    ZeroCrossingSet() = default;
    // validates ordering, range, parity and alternation
    ZeroCrossingSet(double period_T, std::vector<Crossing> list);

    int size() const noexcept { return static_cast<int>(crossings.size()); }
    bool empty() const noexcept { return crossings.empty(); }
    double time(int k) const { return crossings.at(k).time; }
    CrossingDirection direction(int k) const { return crossings.at(k).direction; }

    // Square-wave sign implied by the crossing structure: +1 after a rising
    // crossing, -1 after a falling one, 0 exactly at a crossing instant.
    // The empty set reads as constant +1.
    int sign_at(double t) const;
};

// Locate the zerocrossings of a sampled waveform. Sign changes between
// samples are refined by bisection on the local linear interpolant until the
// bracket is narrower than refine_tol (default period * 1e-10). A sample that
// is exactly zero is a crossing at that grid instant when its nonzero
// neighbours have opposite signs, and is reported once; a zero sample whose
// neighbours agree is a touch, not a crossing. The wrap segment from the last
// sample back to sample 0 is included.
//
// Throws DegenerateInput for the all-zero waveform or a run of two or more
// identical zero samples, InconsistentCrossings if an odd crossing count
// emerges.
ZeroCrossingSet detect_zerocrossings(const PeriodicWaveform& w, double refine_tol = -1.0);

} // namespace zcsim
