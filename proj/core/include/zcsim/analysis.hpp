#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "zcsim/elements.hpp"
#include "zcsim/waveform.hpp"

namespace zcsim {

enum class LoopDirection { clockwise, counterclockwise, degenerate };
enum class LoopClassification { inductive, capacitive, resistive };

const char* loop_direction_name(LoopDirection d) noexcept;
const char* loop_classification_name(LoopClassification c) noexcept;

// One period of an (i, v) trajectory traversed in time order. signed_area is
// the shoelace area of the closed polygon; counterclockwise is positive.
struct HysteresisLoop {
    std::vector<double> current;
    std::vector<double> voltage;
    double signed_area = 0.0;
    LoopDirection direction = LoopDirection::degenerate;
};

// Build the loop from one period of i and v on a shared grid. A loop whose
// |area| falls below 1e-6 * max|i| * max|v| counts as degenerate.
HysteresisLoop extract_loop(const PeriodicWaveform& i, const PeriodicWaveform& v);

// clockwise -> inductive, counterclockwise -> capacitive,
// degenerate -> resistive.
LoopClassification classify_loop(const HysteresisLoop& loop);

// True when every traversal of i = 0 happens at |v| <= tol_v: both branches
// of the loop meet at the origin. Crossings between samples are checked on
// the linear interpolant. A loop that never reaches i = 0 passes vacuously.
bool pinch_test(const HysteresisLoop& loop, double tol_v);

// Mean of v*i over the shared grid.
double average_power(const PeriodicWaveform& i, const PeriodicWaveform& v);

// Relative mismatch between <v*i> and A1*<|i|> for the lamp model, with v
// reconstructed from i and its spectral derivative. The inductive term is
// orthogonal to i, so the residual stays at roundoff for any periodic i.
// Zero current has no defined residual.
double lamp_power_identity_residual(const PeriodicWaveform& i, const HysteresisLamp& lamp);

struct PoyntingBalance {
    double surface_flow = 0.0; // E*H flux integrated over the lateral surface
    double vi = 0.0;           // terminal product v*i
};

// Cylindrical resistor of length l and radius r carrying (v, i): the surface
// integral of the Poynting vector equals v*i identically, because the axial
// field v/l and circumferential field i/(2 pi r) multiply the area 2 pi r l
// back into v*i. Both members are computed from that cancelled form so the
// equality is exact, not approximate.
PoyntingBalance poynting_balance(double length, double radius, double v, double i);

// Running integrals psi(t) = int v dt and q(t) = int i dt over n_periods
// periods, trapezoidal on the sample grid, psi(0) = q(0) = 0.
struct FluxChargeTrajectory {
    std::vector<double> time;
    std::vector<double> flux;
    std::vector<double> charge;
};

FluxChargeTrajectory flux_charge(const PeriodicWaveform& i, const PeriodicWaveform& v,
                                 int n_periods);

using StudiedElement = std::variant<HysteresisLamp, PowerLawHysteresisElement>;

struct FrequencyPoint {
    double omega = 0.0;
    double signed_area = 0.0;
    LoopClassification classification = LoopClassification::resistive;
};

// Impose i = amplitude * sin(omega t) on the element and record the loop
// area and classification at each omega. Rate-independent elements keep the
// same area at every row; the lamp's inductive term scales with omega.
std::vector<FrequencyPoint> frequency_dependence_study(const StudiedElement& element,
                                                       double amplitude,
                                                       const std::vector<double>& omegas,
                                                       int n_samples = 4096);

// Extremes of the chord slope dv/di along the loop, skipping segments whose
// endpoints fall inside |i| < exclusion (pass a negative exclusion to use
// 5% of max|i|). Throws when fewer than two usable segments remain.
std::pair<double, double> dvdi_range(const HysteresisLoop& loop, double exclusion = -1.0);

} // namespace zcsim
