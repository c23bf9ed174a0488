#include "tvtest/transition.hpp"

#include <cmath>

#include "tvtest/errors.hpp"

namespace tvtest {

void validate(const TransitionParams& p) {
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) {
        throw InvalidInputError("transition: gamma must be finite and >= 0");
    }
    if (!(p.c > 0.0) || !std::isfinite(p.c)) {
        throw InvalidInputError("transition: threshold c must be finite and > 0");
    }
}

double transition_value(double t, const TransitionParams& p) noexcept {
    if (p.gamma == 0.0) {
        return 0.0;
    }
    const double x = p.gamma * (t - p.c);
    if (x >= 0.0) {
        // exp(-x) <= 1: no overflow; underflows to 0 and saturates at +1/2.
        return 1.0 / (1.0 + std::exp(-x)) - 0.5;
    }
    // Mirror branch, exp(x) <= 1. Algebraically identical to the first form.
    const double ex = std::exp(x);
    return ex / (1.0 + ex) - 0.5;
}

std::vector<double> transition_series(std::size_t length, const TransitionParams& p,
                                      long t_start) {
    if (length == 0) {
        throw InvalidInputError("transition_series: length must be >= 1");
    }
    std::vector<double> out(length);
    for (std::size_t i = 0; i < length; ++i) {
        out[i] = transition_value(static_cast<double>(t_start + static_cast<long>(i)), p);
    }
    return out;
}

}  // namespace tvtest
