#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace tvtest {

/// The test procedures: asymptotic and bootstrap, for the conditional mean
/// and the conditional variance.
enum class Method {
    ma,   ///< mean test, F reference distribution
    mwb,  ///< mean test, wild bootstrap p-value
    va,   ///< variance test, F reference distribution
    vb,   ///< variance test, residual bootstrap p-value
    vwb,  ///< variance test, wild bootstrap p-value
    tr2,  ///< variance test, n*R^2 statistic, chi-squared reference
};

std::string_view method_name(Method m);
std::optional<Method> method_from_string(std::string_view name);

struct TestOutcome {
    Method method{};
    double statistic = 0.0;
    double p_value = 1.0;
    /// Reference-distribution degrees of freedom. df1 is the restriction
    /// count; df2 the denominator (effective observations minus regressors).
    int df1 = 0;
    int df2 = 0;
    /// Number of bootstrap iterations behind p_value; 0 for asymptotic
    /// methods.
    int bootstrap_count = 0;
};

enum class Multiplier { standard_normal, rademacher };

/// How the mean-test bootstrap regenerates the sample. The fixed-design
/// scheme keeps the original lagged values as regressors; the recursive
/// scheme re-runs the fitted null autoregression. fixed_design is the
/// default; recursive exists for sensitivity runs.
enum class MeanBootstrapScheme { fixed_design, recursive };

struct BootstrapConfig {
    int iterations = 1000;  ///< >= 99
    Multiplier multiplier = Multiplier::standard_normal;
    std::uint64_t seed = 0;
    MeanBootstrapScheme mean_scheme = MeanBootstrapScheme::fixed_design;
};

/// Fits the auxiliary mean regression y_t on [1, y_{t-1}, s_t, s_t y_{t-1}]
/// and tests the joint exclusion of the two trend columns with an
/// F(2, n-4) reference, n being the effective observation count.
TestOutcome mean_test_asymptotic(std::span<const double> y);

/// Wild bootstrap p-value for the mean-test statistic. The null AR(1) fit
/// provides fitted values and residuals; each bootstrap sample multiplies
/// the residuals by iid mean-zero unit-variance draws, which preserves
/// heteroskedasticity of unknown form. The p-value is the fraction of
/// bootstrap statistics strictly exceeding the observed one, so its value
/// always lies on the grid {0, 1/M, ..., 1}.
TestOutcome mean_test_wild_bootstrap(std::span<const double> y, const BootstrapConfig& cfg);

/// Squares the residuals of an AR(1) fit of y, regresses them on
/// [1, u^2_{t-1}, s_t, s_t u^2_{t-1}], and tests the joint exclusion of
/// everything but the intercept with an F(3, n-4) reference.
TestOutcome variance_test_asymptotic(std::span<const double> y);

/// Residual-resampling bootstrap for the variance-test statistic: bootstrap
/// series are the restricted-fit intercept plus residuals resampled with
/// replacement, and the statistic is recomputed on each series (regressed
/// on its own lag).
TestOutcome variance_test_bootstrap(std::span<const double> y, const BootstrapConfig& cfg);

/// Same as variance_test_bootstrap except each restricted-fit residual is
/// multiplied in place by an iid draw instead of being resampled.
TestOutcome variance_test_wild_bootstrap(std::span<const double> y, const BootstrapConfig& cfg);

/// n*R^2 variant of the variance test with a chi-squared(3) reference.
TestOutcome variance_test_tr2(std::span<const double> y);

/// Dispatch by method tag; cfg is ignored by the asymptotic methods.
TestOutcome run_test(Method method, std::span<const double> y, const BootstrapConfig& cfg);

}  // namespace tvtest
