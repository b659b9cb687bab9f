#include "zcsim/ballast.hpp"

#include <cmath>

#include "zcsim/errors.hpp"

namespace zcsim {

namespace {

std::complex<double> polyval(const std::vector<double>& coeffs, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
    return acc;
}

void validate_rational(const RationalAdmittance& r) {
    if (r.numerator.empty() || r.denominator.empty())
        throw InvalidArgument("rational admittance needs nonempty coefficient lists");
    if (r.numerator.back() == 0.0 || r.denominator.back() == 0.0)
        throw InvalidArgument("rational admittance leading coefficients must be nonzero");
    for (double c : r.numerator)
        if (!std::isfinite(c)) throw InvalidArgument("rational admittance coefficients must be finite");
    for (double c : r.denominator)
        if (!std::isfinite(c)) throw InvalidArgument("rational admittance coefficients must be finite");
}

} // namespace

BallastDescriptor BallastDescriptor::series(double R, double L, std::optional<double> C) {
    if (!(R >= 0.0) || !std::isfinite(R))
        throw InvalidArgument("series resistance must be finite and >= 0");
    if (!(L >= 0.0) || !std::isfinite(L))
        throw InvalidArgument("series inductance must be finite and >= 0");
    if (C && (!(*C > 0.0) || !std::isfinite(*C)))
        throw InvalidArgument("series capacitance must be finite and > 0 when present");
    if (R == 0.0 && L == 0.0 && !C)
        throw InvalidArgument("series ballast needs at least one element");
    return BallastDescriptor{SeriesRLC{R, L, C}};
}

BallastDescriptor BallastDescriptor::rational(std::vector<double> num, std::vector<double> den) {
    RationalAdmittance r{std::move(num), std::move(den)};
    validate_rational(r);
    return BallastDescriptor{std::move(r)};
}

std::complex<double> BallastDescriptor::admittance(double w) const {
    const std::complex<double> y = [&]() -> std::complex<double> {
        if (const auto* s = std::get_if<SeriesRLC>(&form)) {
            std::complex<double> z(s->resistance, w * s->inductance);
            if (s->capacitance) {
                if (w == 0.0) return {0.0, 0.0}; // series C blocks DC
                z += std::complex<double>(0.0, -1.0 / (w * *s->capacitance));
            }
            return 1.0 / z;
        }
        const auto& r = std::get<RationalAdmittance>(form);
        const std::complex<double> s(0.0, w);
        return polyval(r.numerator, s) / polyval(r.denominator, s);
    }();
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
        throw ModelDomainError("ballast admittance is not finite at this frequency");
    return y;
}

std::complex<double> BallastDescriptor::impedance(double w) const {
    if (const auto* s = std::get_if<SeriesRLC>(&form)) {
        std::complex<double> z(s->resistance, w * s->inductance);
        if (s->capacitance) {
            if (w == 0.0)
                throw ModelDomainError("series capacitor has infinite impedance at DC");
            z += std::complex<double>(0.0, -1.0 / (w * *s->capacitance));
        }
        return z;
    }
    const std::complex<double> y = admittance(w);
    if (y == std::complex<double>(0.0, 0.0))
        throw ModelDomainError("ballast admittance vanishes, impedance undefined");
    return 1.0 / y;
}

bool BallastDescriptor::dc_admittance_finite() const {
    if (const auto* s = std::get_if<SeriesRLC>(&form))
        return s->capacitance.has_value() || s->resistance > 0.0;
    const auto& r = std::get<RationalAdmittance>(form);
    return r.denominator[0] != 0.0;
}

double BallastDescriptor::dc_admittance() const {
    if (const auto* s = std::get_if<SeriesRLC>(&form)) {
        if (s->capacitance) return 0.0;
        if (s->resistance > 0.0) return 1.0 / s->resistance;
        throw ModelDomainError("pure inductive path has unbounded DC admittance");
    }
    const auto& r = std::get<RationalAdmittance>(form);
    if (r.denominator[0] == 0.0)
        throw ModelDomainError("rational admittance has a pole at DC");
    return r.numerator[0] / r.denominator[0];
}

double asymptotic_inductance(const BallastDescriptor& b, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidArgument("asymptotic_inductance needs a positive working frequency");
    if (const auto* s = std::get_if<SeriesRLC>(&b.form)) {
        if (s->inductance > 0.0) return s->inductance;
        throw NoAsymptoticInductance(
            "series ballast without inductance: n*omega*|Y| does not converge");
    }
    const auto& r = std::get<RationalAdmittance>(b.form);
    const int deg_num = static_cast<int>(r.numerator.size()) - 1;
    const int deg_den = static_cast<int>(r.denominator.size()) - 1;
    if (deg_den != deg_num + 1)
        throw NoAsymptoticInductance(
            "rational admittance is not relative-degree-one, no asymptotic inductance");
    const double L = r.denominator.back() / r.numerator.back();
    if (!(L > 0.0))
        throw NoAsymptoticInductance("leading coefficient ratio is not a positive inductance");
    return L;
}

} // namespace zcsim
