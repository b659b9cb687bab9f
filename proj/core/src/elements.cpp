#include "zcsim/elements.hpp"

#include <cmath>

namespace zcsim {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be finite");
}

} // namespace

SignHardlimiter::SignHardlimiter(double amplitude) : A(amplitude) {
    if (!(A > 0.0) || !std::isfinite(A))
        throw InvalidArgument("hardlimiter amplitude A must be finite positive");
}

HysteresisLamp::HysteresisLamp(double amplitude, double l_prime, double l_ballast)
    : A(amplitude), L_prime(l_prime), L_ballast(l_ballast) {
    if (!(A >= 0.0) || !std::isfinite(A))
        throw InvalidArgument("lamp amplitude A must be finite and >= 0");
    if (!(L_prime >= 0.0) || !std::isfinite(L_prime))
        throw InvalidArgument("lamp L' must be finite and >= 0");
    if (!(L_ballast > 0.0) || !std::isfinite(L_ballast))
        throw InvalidArgument("lamp ballast inductance must be finite positive");
}

double hardlimiter_voltage(const SignHardlimiter& e, double i) {
    require_finite(i, "current");
    return e.A * sign0(i);
}

double lamp_voltage(const HysteresisLamp& e, double i, double didt) {
    require_finite(i, "current");
    require_finite(didt, "current slope");
    return e.A1() * sign0(i) + e.L_prime * didt;
}

double stored_inductive_energy(const HysteresisLamp& e, double i) {
    require_finite(i, "current");
    return 0.5 * e.L_prime * i * i;
}

PowerLawBranch::PowerLawBranch(double d, double a) : D(d), alpha(a) {
    if (!(D > 0.0) || !std::isfinite(D))
        throw InvalidArgument("power-law coefficient D must be finite positive");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("power-law exponent alpha must be finite positive");
}

double powerlaw_voltage(const PowerLawHysteresisElement& e, double i, int didt_sign) {
    require_finite(i, "current");
    if (didt_sign == 0)
        throw AmbiguousBranch("di/dt = 0 does not select a power-law branch; "
                              "carry the last nonzero slope sign");
    const PowerLawBranch& br = didt_sign > 0 ? e.rising : e.falling;
    if (i == 0.0) return 0.0;
    return br.D * std::pow(std::fabs(i), br.alpha) * sign0(i);
}

ReturnPoint powerlaw_return_point(const PowerLawHysteresisElement& e) {
    const double a1 = e.rising.alpha, a2 = e.falling.alpha;
    const double d1 = e.rising.D, d2 = e.falling.D;
    if (a1 == a2)
        throw DegenerateInput("equal branch exponents give no isolated return point");
    double i_r;
    if (a1 - a2 == -1.0)
        i_r = d1 / d2; // exponent is exactly -1, keep the quotient exact
    else if (a1 - a2 == 1.0)
        i_r = d2 / d1;
    else
        i_r = std::pow(d2 / d1, 1.0 / (a1 - a2));
    const double v_r = d1 * std::pow(i_r, a1);
    return {i_r, v_r};
}

ChargeControlledInstance::ChargeControlledInstance(double r0, double k_) : R0(r0), k(k_) {
    if (!(R0 > 0.0) || !std::isfinite(R0))
        throw InvalidArgument("charge-controlled R0 must be finite positive");
    if (!std::isfinite(k)) throw InvalidArgument("charge-controlled k must be finite");
}

MemristiveSystem ChargeControlledInstance::to_memristive(double q0) const {
    MemristiveSystem m;
    m.state_dim = 1;
    m.initial_state = {q0};
    const double r0 = R0, kk = k;
    m.memristance = [r0, kk](const std::vector<double>& x, double) {
        return r0 + kk * x[0];
    };
    m.state_rate = [](const std::vector<double>&, double i) {
        return std::vector<double>{i};
    };
    return m;
}

double memristive_voltage(const MemristiveSystem& m, const std::vector<double>& x, double i) {
    if (static_cast<int>(x.size()) != m.state_dim)
        throw ModelDomainError("memristive state vector has wrong dimension");
    require_finite(i, "current");
    const double R = m.memristance(x, i);
    if (!std::isfinite(R))
        throw ModelDomainError("memristance is not finite at the requested state");
    return R * i;
}

std::vector<double> memristive_state_rate(const MemristiveSystem& m,
                                          const std::vector<double>& x, double i) {
    if (static_cast<int>(x.size()) != m.state_dim)
        throw ModelDomainError("memristive state vector has wrong dimension");
    require_finite(i, "current");
    std::vector<double> rate = m.state_rate(x, i);
    if (static_cast<int>(rate.size()) != m.state_dim)
        throw ModelDomainError("state rate dimension does not match state_dim");
    for (double r : rate)
        if (!std::isfinite(r)) throw ModelDomainError("state rate is not finite");
    return rate;
}

} // namespace zcsim
