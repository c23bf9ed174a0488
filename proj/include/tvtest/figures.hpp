#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tvtest {

/// CSV with columns `t,F_gamma_<g>...` for t = 1..T, one transition-function
/// column per smoothness value, all sharing the threshold c. Values come
/// from transition_value pointwise. Empty gammas is an empty-input error.
std::string emit_figure_data(std::size_t T, const std::vector<double>& gammas, double c);

}  // namespace tvtest
