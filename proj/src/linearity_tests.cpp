#include "tvtest/linearity_tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tvtest/distributions.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/ols.hpp"
#include "tvtest/rng.hpp"

namespace tvtest {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::ma: return "ma";
        case Method::mwb: return "mwb";
        case Method::va: return "va";
        case Method::vb: return "vb";
        case Method::vwb: return "vwb";
        case Method::tr2: return "tr2";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view name) {
    for (Method m : {Method::ma, Method::mwb, Method::va, Method::vb, Method::vwb, Method::tr2}) {
        if (method_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

namespace {

void validate_bootstrap(const BootstrapConfig& cfg) {
    if (cfg.iterations < 99) {
        throw InvalidInputError("bootstrap: iterations must be >= 99");
    }
}

void require_length(std::span<const double> y) {
    if (y.size() < 10) {
        throw InsufficientDataError("test: series must have at least 10 observations, got " +
                                    std::to_string(y.size()));
    }
}

double multiplier_draw(RngStream& s, Multiplier m) {
    return m == Multiplier::standard_normal ? s.normal() : s.rademacher();
}

/// Restricted-vs-unrestricted F with q restrictions. Rounding can push the
/// SSR difference a hair negative when the restricted coefficients are
/// essentially zero; clamp so statistics stay nonnegative.
double nested_f(double ssr0, double ssr1, int q, int df2) {
    const double num = std::max(ssr0 - ssr1, 0.0) / q;
    return num / (ssr1 / df2);
}

struct MeanParts {
    RegressionData d;       // full design [1, lag, s, s*lag] and target
    DesignMatrix x_null;    // [1, lag]
    RegressionFit fit_null;
    RegressionFit fit_full;
    double f = 0.0;
    int df2 = 0;
};

MeanParts compute_mean_parts(std::span<const double> y) {
    require_length(y);
    MeanParts p;
    p.d = build_mean_design(y);
    p.x_null = head_columns(p.d.X, 2);
    p.fit_full = ols_fit(p.d.X, p.d.y);
    p.fit_null = ols_fit(p.x_null, p.d.y);
    p.df2 = static_cast<int>(p.d.X.rows) - 4;
    p.f = nested_f(p.fit_null.ssr, p.fit_full.ssr, 2, p.df2);
    return p;
}

struct VarianceAux {
    double f = 0.0;
    double tr2 = 0.0;
    int df2 = 0;
    std::size_t nrows = 0;
    double rho0 = 0.0;          // restricted-fit intercept
    std::vector<double> pool;   // restricted-fit residuals
};

/// The variance-side statistic on any nonnegative-or-bootstrap series v:
/// unrestricted regression of v_t on [1, v_{t-1}, s_t, s_t v_{t-1}] against
/// the intercept-only restriction. check_sign enforces v >= 0 (true for a
/// genuine squared-residual series; bootstrap series may go negative).
VarianceAux variance_aux(std::span<const double> v, bool check_sign) {
    RegressionData d = check_sign ? build_variance_design(v) : build_lagged_trend_design(v);
    const RegressionFit fit_full = ols_fit(d.X, d.y);  // throws first on collinear input
    const RegressionFit fit_null = ols_fit(head_columns(d.X, 1), d.y);

    VarianceAux aux;
    aux.nrows = d.X.rows;
    aux.df2 = static_cast<int>(aux.nrows) - 4;
    aux.f = nested_f(fit_null.ssr, fit_full.ssr, 3, aux.df2);
    // fit_null is intercept-only, so its SSR is the total sum of squares.
    aux.tr2 = static_cast<double>(aux.nrows) *
              std::max(1.0 - fit_full.ssr / fit_null.ssr, 0.0);
    aux.rho0 = fit_null.coefficients[0];
    aux.pool = fit_null.residuals;
    return aux;
}

/// AR(1) residuals squared; the input every variance test shares.
std::vector<double> squared_ar1_residuals(std::span<const double> y) {
    require_length(y);
    RegressionData d = build_mean_design(y);
    const RegressionFit fit = ols_fit(head_columns(d.X, 2), d.y);
    std::vector<double> u2(fit.residuals.size());
    for (std::size_t i = 0; i < u2.size(); ++i) {
        u2[i] = fit.residuals[i] * fit.residuals[i];
    }
    return u2;
}

/// Runs draw_stat under per-draw derived streams and counts bootstrap
/// statistics strictly exceeding the observed one. A draw whose regression
/// is singular is discarded and redrawn from a fresh stream, with a hard
/// cap of 10*M total attempts. The first pass is parallel; statistics
/// depend only on the attempt index, so the count is independent of
/// scheduling and thread count. Retries run serially in slot order with
/// attempt indices M, M+1, ..., which keeps them deterministic too.
template <typename DrawStat>
int bootstrap_exceed_count(const BootstrapConfig& cfg, double observed, DrawStat&& draw_stat) {
    const int m_total = cfg.iterations;
    std::vector<double> stats(static_cast<std::size_t>(m_total), 0.0);
    std::vector<unsigned char> ok(static_cast<std::size_t>(m_total), 0);

#pragma omp parallel for schedule(static)
    for (int m = 0; m < m_total; ++m) {
        try {
            stats[m] = draw_stat(
                derive_seed(cfg.seed, {seedtag::bootstrap, static_cast<std::uint64_t>(m)}));
            ok[m] = 1;
        } catch (const SingularDesignError&) {
            ok[m] = 0;
        }
    }

    long attempt = m_total;
    const long cap = 10L * m_total;
    for (int m = 0; m < m_total; ++m) {
        while (!ok[m]) {
            if (attempt >= cap) {
                throw BootstrapFailureError("bootstrap: redraw cap of 10*M attempts exhausted");
            }
            try {
                stats[m] = draw_stat(
                    derive_seed(cfg.seed, {seedtag::bootstrap, static_cast<std::uint64_t>(attempt)}));
                ok[m] = 1;
            } catch (const SingularDesignError&) {
            }
            ++attempt;
        }
    }

    int exceed = 0;
    for (int m = 0; m < m_total; ++m) {
        // Strict inequality: ties favor non-rejection.
        if (stats[m] > observed) {
            ++exceed;
        }
    }
    return exceed;
}

}  // namespace

TestOutcome mean_test_asymptotic(std::span<const double> y) {
    const MeanParts p = compute_mean_parts(y);
    return {Method::ma, p.f, f_upper_tail(p.f, 2, p.df2), 2, p.df2, 0};
}

TestOutcome mean_test_wild_bootstrap(std::span<const double> y, const BootstrapConfig& cfg) {
    validate_bootstrap(cfg);
    const MeanParts p = compute_mean_parts(y);
    const std::size_t n = p.d.X.rows;

    std::vector<double> fitted_null(n);
    for (std::size_t i = 0; i < n; ++i) {
        fitted_null[i] = p.d.y[i] - p.fit_null.residuals[i];
    }

    int exceed = 0;
    if (cfg.mean_scheme == MeanBootstrapScheme::fixed_design) {
        // The designs never change, so factorize once and re-solve per draw.
        const QrSolver solver_full(p.d.X);
        const QrSolver solver_null(p.x_null);
        exceed = bootstrap_exceed_count(cfg, p.f, [&](std::uint64_t draw_seed) {
            RngStream s(draw_seed);
            std::vector<double> ystar(n);
            for (std::size_t i = 0; i < n; ++i) {
                ystar[i] = fitted_null[i] +
                           multiplier_draw(s, cfg.multiplier) * p.fit_null.residuals[i];
            }
            const RegressionFit f1 = solver_full.solve(ystar);
            const RegressionFit f0 = solver_null.solve(ystar);
            return nested_f(f0.ssr, f1.ssr, 2, p.df2);
        });
    } else {
        const double phi0 = p.fit_null.coefficients[0];
        const double phi1 = p.fit_null.coefficients[1];
        exceed = bootstrap_exceed_count(cfg, p.f, [&](std::uint64_t draw_seed) {
            RngStream s(draw_seed);
            std::vector<double> yb(y.size());
            yb[0] = y[0];
            for (std::size_t t = 1; t < yb.size(); ++t) {
                yb[t] = phi0 + phi1 * yb[t - 1] +
                        multiplier_draw(s, cfg.multiplier) * p.fit_null.residuals[t - 1];
            }
            const RegressionData d = build_mean_design(yb);
            const RegressionFit f1 = ols_fit(d.X, d.y);
            const RegressionFit f0 = ols_fit(head_columns(d.X, 2), d.y);
            return nested_f(f0.ssr, f1.ssr, 2, p.df2);
        });
    }

    return {Method::mwb, p.f, static_cast<double>(exceed) / cfg.iterations, 2, p.df2,
            cfg.iterations};
}

TestOutcome variance_test_asymptotic(std::span<const double> y) {
    const std::vector<double> u2 = squared_ar1_residuals(y);
    const VarianceAux aux = variance_aux(u2, true);
    return {Method::va, aux.f, f_upper_tail(aux.f, 3, aux.df2), 3, aux.df2, 0};
}

TestOutcome variance_test_bootstrap(std::span<const double> y, const BootstrapConfig& cfg) {
    validate_bootstrap(cfg);
    const std::vector<double> u2 = squared_ar1_residuals(y);
    const VarianceAux aux = variance_aux(u2, true);
    const std::size_t len = aux.pool.size();

    const int exceed = bootstrap_exceed_count(cfg, aux.f, [&](std::uint64_t draw_seed) {
        RngStream s(draw_seed);
        std::vector<double> b(len);
        for (std::size_t i = 0; i < len; ++i) {
            b[i] = aux.rho0 + aux.pool[s.uniform_index(len)];
        }
        return variance_aux(b, false).f;
    });

    return {Method::vb, aux.f, static_cast<double>(exceed) / cfg.iterations, 3, aux.df2,
            cfg.iterations};
}

TestOutcome variance_test_wild_bootstrap(std::span<const double> y, const BootstrapConfig& cfg) {
    validate_bootstrap(cfg);
    const std::vector<double> u2 = squared_ar1_residuals(y);
    const VarianceAux aux = variance_aux(u2, true);
    const std::size_t len = aux.pool.size();

    const int exceed = bootstrap_exceed_count(cfg, aux.f, [&](std::uint64_t draw_seed) {
        RngStream s(draw_seed);
        std::vector<double> b(len);
        for (std::size_t i = 0; i < len; ++i) {
            b[i] = aux.rho0 + aux.pool[i] * multiplier_draw(s, cfg.multiplier);
        }
        return variance_aux(b, false).f;
    });

    return {Method::vwb, aux.f, static_cast<double>(exceed) / cfg.iterations, 3, aux.df2,
            cfg.iterations};
}

TestOutcome variance_test_tr2(std::span<const double> y) {
    const std::vector<double> u2 = squared_ar1_residuals(y);
    const VarianceAux aux = variance_aux(u2, true);
    return {Method::tr2, aux.tr2, chi_squared_upper_tail(aux.tr2, 3), 3,
            static_cast<int>(aux.nrows), 0};
}

TestOutcome run_test(Method method, std::span<const double> y, const BootstrapConfig& cfg) {
    switch (method) {
        case Method::ma: return mean_test_asymptotic(y);
        case Method::mwb: return mean_test_wild_bootstrap(y, cfg);
        case Method::va: return variance_test_asymptotic(y);
        case Method::vb: return variance_test_bootstrap(y, cfg);
        case Method::vwb: return variance_test_wild_bootstrap(y, cfg);
        case Method::tr2: return variance_test_tr2(y);
    }
    throw InvalidInputError("run_test: unknown method");
}

}  // namespace tvtest
