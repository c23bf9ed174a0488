#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tvtest/rng.hpp"
#include "tvtest/transition.hpp"

namespace tvtest {

/// Conditional mean: y_t = alpha0 + beta0 y_{t-1} + (alpha1 + beta1 y_{t-1}) F(t) + u_t.
struct MeanParams {
    double alpha0 = 0.0;
    double beta0 = 0.0;
    double alpha1 = 0.0;
    double beta1 = 0.0;
    TransitionParams transition;
};

/// Conditional variance: h_t^2 = a0 + b0 u_{t-1}^2 + (a1 + b1 u_{t-1}^2) F(t).
/// Positivity is guaranteed a priori by a0 - |a1|/2 > 0 and b0 - |b1|/2 >= 0,
/// since F is bounded in [-1/2, 1/2].
struct VarianceParams {
    double a0 = 1.0;
    double b0 = 0.0;
    double a1 = 0.0;
    double b1 = 0.0;
    TransitionParams transition;
};

enum class DgpKind {
    ar_homoskedastic,  ///< AR(1), unit normal errors
    tv_mean,           ///< smooth-transition mean, unit normal errors
    ar_arch,           ///< AR(1) mean, constant-parameter ARCH errors
    tv_arch,           ///< AR(1) mean, smooth-transition ARCH errors
};

struct DgpSpec {
    DgpKind kind = DgpKind::ar_homoskedastic;
    MeanParams mean;
    /// Absent = unit normal errors (the homoskedastic kinds).
    std::optional<VarianceParams> variance;
    std::size_t sample_size = 0;
    std::size_t burn_in = 100;
};

/// Checks the per-kind constraints (which parameters must be switched off),
/// stationarity of both mean regimes, and variance positivity. Throws
/// InvalidInputError on violation.
void validate(const DgpSpec& spec);

struct TimeSeries {
    std::vector<double> values;
    /// Conditional variance path, kept only when requested; diagnostics of
    /// the simulator, never an input to the test statistics.
    std::optional<std::vector<double>> latent_h2;
};

/// Simulates the recursion over t = 1-burn_in, ..., T with zero initial
/// conditions, then discards the burn-in samples. The transition argument t
/// extends backward over the burn-in (t <= 0 before the retained range), so
/// F is continuous across the burn-in boundary; the threshold c is
/// interpreted on the retained index range 1..T. Deterministic given the
/// stream.
TimeSeries simulate(const DgpSpec& spec, RngStream& stream, bool keep_latent = false);

}  // namespace tvtest
