#include "isslab/signal.hpp"

#include "isslab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isslab {

InputSignal::InputSignal(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() && values_.empty()) return;
    if (breakpoints_.size() != values_.size() + 1) {
        throw std::invalid_argument("InputSignal: need K+1 breakpoints for K values");
    }
    if (breakpoints_.front() != 0.0) {
        throw std::invalid_argument("InputSignal: first breakpoint must be 0");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k] > breakpoints_[k - 1])) {
            throw std::invalid_argument("InputSignal: breakpoints must be strictly increasing");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("InputSignal: non-finite value");
    }
}

InputSignal InputSignal::zero() { return InputSignal(); }

InputSignal InputSignal::constant(double value, double duration) {
    return InputSignal({0.0, duration}, {value});
}

InputSignal InputSignal::random_piecewise(std::uint64_t seed, int intervals, double amplitude,
                                          double duration, double align_step) {
    if (intervals < 1) throw std::invalid_argument("random_piecewise: intervals must be >= 1");
    SplitMix64 rng(seed);
    std::vector<double> bp(static_cast<std::size_t>(intervals) + 1);
    for (int k = 0; k <= intervals; ++k) {
        double t = duration * static_cast<double>(k) / intervals;
        if (align_step > 0.0) t = std::round(t / align_step) * align_step;
        bp[static_cast<std::size_t>(k)] = t;
    }
    std::vector<double> vals(static_cast<std::size_t>(intervals));
    for (auto& v : vals) v = rng.uniform(-amplitude, amplitude);
    return InputSignal(std::move(bp), std::move(vals));
}

double InputSignal::value(double t) const {
    if (values_.empty() || t < 0.0 || t >= breakpoints_.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const auto k = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
    return values_[std::min(k, values_.size() - 1)];
}

double InputSignal::integral(double t) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double lo = breakpoints_[k];
        const double hi = std::min(breakpoints_[k + 1], t);
        if (hi <= lo) break;
        acc += values_[k] * (hi - lo);
    }
    return acc;
}

InputSignal InputSignal::shifted_left(double tau) const {
    std::vector<double> bp{0.0};
    std::vector<double> vals;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double hi = breakpoints_[k + 1] - tau;
        if (hi <= 0.0) continue;
        bp.push_back(hi);
        vals.push_back(values_[k]);
    }
    if (vals.empty()) return InputSignal();
    return InputSignal(std::move(bp), std::move(vals));
}

InputSignal InputSignal::scaled(double factor) const {
    std::vector<double> vals = values_;
    for (auto& v : vals) v *= factor;
    return InputSignal(breakpoints_, std::move(vals));
}

}  // namespace isslab
