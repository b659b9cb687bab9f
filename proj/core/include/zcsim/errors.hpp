#pragma once

#include <stdexcept>
#include <string>

namespace zcsim {

// Base error carrying a short machine-readable code alongside the message.
// The code ends up in tool summaries as "error = <code>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Malformed arguments: bad sizes, non-finite values, out-of-range settings.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

// Two waveforms that must share (period, sample count) do not.
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what) : Error("grid-mismatch", what) {}
};

// Input is valid but carries no usable signal (e.g. identically zero waveform).
struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& what) : Error("degenerate-input", what) {}
};

// A crossing set that cannot belong to a continuous periodic signal.
struct InconsistentCrossings : Error {
    explicit InconsistentCrossings(const std::string& what)
        : Error("inconsistent-crossings", what) {}
};

// Ballast admittance lacks the relative-degree-one high-frequency rolloff.
struct NoAsymptoticInductance : Error {
    explicit NoAsymptoticInductance(const std::string& what)
        : Error("no-asymptotic-inductance", what) {}
};

// The requested steady state does not exist (drive below the existence bound).
struct NoSolution : Error {
    explicit NoSolution(const std::string& what) : Error("no-solution", what) {}
};

// A structural assumption of the chosen method is violated by the result
// (e.g. a two-crossing solve whose current shows more than two crossings).
struct AssumptionViolated : Error {
    explicit AssumptionViolated(const std::string& what)
        : Error("assumption-violated", what) {}
};

// Iteration failed to reach the requested tolerance.
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what)
        : Error("convergence-failure", what) {}
};

// A scalar root find located zero or several brackets where one was required.
struct RootBracketError : Error {
    explicit RootBracketError(const std::string& what) : Error("root-bracket", what) {}
};

// Element or state-space model evaluated outside its domain.
struct ModelDomainError : Error {
    explicit ModelDomainError(const std::string& what) : Error("model-domain", what) {}
};

// Harmonic division hit a (near) zero admittance with a nonzero right side.
struct ResonanceError : Error {
    explicit ResonanceError(const std::string& what) : Error("resonance", what) {}
};

// Event integration found more than one switching event inside one step.
struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& what) : Error("step-too-large", what) {}
};

// Switch count exceeded the runaway guard.
struct ZenoError : Error {
    explicit ZenoError(const std::string& what) : Error("zeno", what) {}
};

// Trajectory escaped the admissible region.
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

} // namespace zcsim
