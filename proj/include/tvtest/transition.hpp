#pragma once

#include <cstddef>
#include <vector>

namespace tvtest {

/// Logistic smooth transition in the time index: gamma controls the speed of
/// the change, c locates its midpoint. gamma = 0 encodes the no-transition
/// null and makes the function identically zero.
struct TransitionParams {
    double gamma = 0.0;  ///< smoothness, per time unit; >= 0
    double c = 1.0;      ///< threshold location in time-index units; > 0
};

/// Throws InvalidInputError if the parameters violate their invariants.
void validate(const TransitionParams& p);

/// F(t) = 1 / (1 + exp(-gamma (t - c))) - 1/2, bounded in [-1/2, 1/2].
///
/// Evaluated on the branch where the exponent is nonpositive, so no finite
/// input overflows; far from the threshold the value saturates to +-1/2.
/// t is a real, not an integer: figure grids and burn-in offsets share this
/// code path.
double transition_value(double t, const TransitionParams& p) noexcept;

/// transition_value over t = t_start, ..., t_start + length - 1.
/// length = 0 is an empty-input error.
std::vector<double> transition_series(std::size_t length, const TransitionParams& p,
                                      long t_start = 1);

}  // namespace tvtest
