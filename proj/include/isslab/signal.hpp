#pragma once

#include <cstdint>
#include <vector>

namespace isslab {

/// Piecewise-constant scalar input signal. Breakpoints t_0 = 0 < ... < t_K;
/// value(t) is constant on each right-open interval [t_k, t_{k+1}) and zero
/// for t >= t_K.
class InputSignal {
public:
    InputSignal() = default;
    InputSignal(std::vector<double> breakpoints, std::vector<double> values);

    static InputSignal zero();
    static InputSignal constant(double value, double duration);
    /// K intervals of equal length on [0, duration], values uniform in
    /// [-amplitude, amplitude] from a splitmix64 stream. When align_step > 0
    /// the breakpoints are snapped to multiples of align_step.
    static InputSignal random_piecewise(std::uint64_t seed, int intervals, double amplitude,
                                        double duration, double align_step = 0.0);

    double value(double t) const;
    double end_time() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }
    bool is_zero() const { return values_.empty(); }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }

    /// Exact integral of the signal over [0, t].
    double integral(double t) const;

    /// Restriction shifted left by tau: s |-> value(tau + s).
    InputSignal shifted_left(double tau) const;

    InputSignal scaled(double factor) const;

private:
    std::vector<double> breakpoints_;  // size K+1, starts at 0
    std::vector<double> values_;       // size K
};

}  // namespace isslab
