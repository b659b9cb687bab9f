#pragma once

#include <functional>
#include <vector>

#include "zcsim/errors.hpp"

namespace zcsim {

// Branch selection at di/dt = 0 is undefined for hysteresis elements;
// callers carry the last nonzero slope sign instead.
struct AmbiguousBranch : Error {
    explicit AmbiguousBranch(const std::string& what) : Error("ambiguous-branch", what) {}
};

inline double sign0(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// v(i) = A sign(i), the purely resistive first approximation of the lamp.
struct SignHardlimiter {
    double A = 1.0; // volts > 0
    explicit SignHardlimiter(double amplitude);
};

// v(i) = A1 sign(i) + L' di/dt with A1 = A (1 + 2 L'/L_ballast).
// L_ballast is the asymptotic series inductance of the circuit the lamp is
// designed against; the correction factor is fixed by it. A = 0 switches the
// sign term off, leaving the linear limit of the circuit.
struct HysteresisLamp {
    double A = 1.0;         // volts > 0
    double L_prime = 0.0;   // henries >= 0
    double L_ballast = 1.0; // henries > 0
    HysteresisLamp(double amplitude, double l_prime, double l_ballast);
    double A1() const noexcept { return A * (1.0 + 2.0 * L_prime / L_ballast); }
};

double hardlimiter_voltage(const SignHardlimiter& e, double i);
double lamp_voltage(const HysteresisLamp& e, double i, double didt);
double stored_inductive_energy(const HysteresisLamp& e, double i);

// One branch of the power-law characteristic v = D |i|^alpha sign(i).
struct PowerLawBranch {
    double D = 1.0;     // volt / ampere^alpha > 0
    double alpha = 1.0; // > 0
    PowerLawBranch(double d, double a);
};

// Rate-independent hysteresis pair: rising branch for di/dt > 0, falling
// branch for di/dt < 0. The branches intersect at the return point i_r.
struct PowerLawHysteresisElement {
    PowerLawBranch rising;
    PowerLawBranch falling;
    PowerLawHysteresisElement(PowerLawBranch up, PowerLawBranch down)
        : rising(up), falling(down) {}
};

// didt_sign must be -1 or +1; 0 throws AmbiguousBranch.
double powerlaw_voltage(const PowerLawHysteresisElement& e, double i, int didt_sign);

// Intersection of the two branches for i > 0:
//   i_r = (D_falling / D_rising)^(1 / (alpha_rising - alpha_falling)).
// Computed as an exact quotient when the exponent difference is 1.
// Throws DegenerateInput when the exponents coincide.
struct ReturnPoint {
    double i_r = 0.0;
    double v_r = 0.0;
};
ReturnPoint powerlaw_return_point(const PowerLawHysteresisElement& e);

// Generic memristive one-port: v = R(x, i) i, dx/dt = f(x, i).
struct MemristiveSystem {
    int state_dim = 1;
    std::function<double(const std::vector<double>&, double)> memristance;
    std::function<std::vector<double>(const std::vector<double>&, double)> state_rate;
    std::vector<double> initial_state;
};

// Charge-controlled demo instance: x = q, R = R0 + k q, dq/dt = i.
// Flux is then the single-valued function psi(q) = R0 q + k q^2 / 2.
struct ChargeControlledInstance {
    double R0 = 1.0; // ohms > 0
    double k = 0.0;  // ohms per coulomb
    ChargeControlledInstance(double r0, double k_);
    MemristiveSystem to_memristive(double q0 = 0.0) const;
};

double memristive_voltage(const MemristiveSystem& m, const std::vector<double>& x, double i);
std::vector<double> memristive_state_rate(const MemristiveSystem& m,
                                          const std::vector<double>& x, double i);

} // namespace zcsim
