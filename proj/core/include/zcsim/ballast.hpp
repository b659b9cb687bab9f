#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

namespace zcsim {

// Series R-L-C branch. An absent capacitance means no capacitive term
// (short at DC through R and L), not C = 0.
struct SeriesRLC {
    double resistance = 0.0;        // ohms, >= 0
    double inductance = 0.0;        // henries, >= 0
    std::optional<double> capacitance; // farads, > 0 when present
};

// Rational admittance Y(s) = num(s)/den(s), coefficients in ascending powers
// of s. Trailing zero coefficients are not allowed (the degrees are meant).
struct RationalAdmittance {
    std::vector<double> numerator;
    std::vector<double> denominator;
};

// Linear one-port ballast, evaluable at the drive harmonics s = jn*omega.
struct BallastDescriptor {
    std::variant<SeriesRLC, RationalAdmittance> form;

    static BallastDescriptor series(double R, double L,
                                    std::optional<double> C = std::nullopt);
    static BallastDescriptor rational(std::vector<double> num, std::vector<double> den);

    // Y(j*w). Throws ModelDomainError if the value is not finite (series
    // resonance at w, zero denominator).
    std::complex<double> admittance(double w) const;

    // Z(j*w) = 1/Y. Infinite impedances (DC of a series C) are representable,
    // zero impedances are not invertible and throw.
    std::complex<double> impedance(double w) const;

    bool dc_admittance_finite() const;
    double dc_admittance() const; // valid when dc_admittance_finite()
};

// Asymptotic series inductance L = 1/lim_{n->inf} n*omega*|Y(jn*omega)|.
// Exists iff the admittance rolls off with relative degree one; series forms
// return series_L exactly, rational forms the leading coefficient ratio.
// Throws NoAsymptoticInductance otherwise (e.g. a pure resistor).
double asymptotic_inductance(const BallastDescriptor& b, double omega);

} // namespace zcsim
