#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tvtest {

/// Dense row-major design matrix. Invariants: rows > cols, full column rank
/// at working precision (checked when a solver is built from it).
struct DesignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major, rows * cols

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Result of a least-squares fit.
struct RegressionFit {
    std::vector<double> coefficients;  // length cols
    std::vector<double> residuals;     // length rows
    double ssr = 0.0;                  // sum of squared residuals
    double sigma2_hat = 0.0;           // ssr / (rows - cols)
};

/// Householder QR least-squares solver. Factorizes once; solves many targets.
/// The trend/interaction columns of the designs used here correlate heavily
/// with the lag column, so an orthogonal decomposition is used rather than
/// normal equations.
class QrSolver {
public:
    /// Factorizes X. Throws SingularDesignError when the diagonal of R
    /// indicates rank deficiency (condition estimate above 1e12).
    explicit QrSolver(const DesignMatrix& X);

    /// Least-squares solve for one target vector (length = rows).
    RegressionFit solve(std::span<const double> y) const;

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return k_; }

    /// max|r_ii| / min|r_ii|, a cheap lower bound on the condition number.
    double condition_estimate() const { return cond_; }

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<double> qr_;     // Householder vectors below the diagonal, R above
    std::vector<double> rdiag_;  // diagonal of R
    double cond_ = 0.0;
};

/// One-shot convenience wrapper around QrSolver.
RegressionFit ols_fit(const DesignMatrix& X, std::span<const double> y);

/// Design matrix together with its target vector.
struct RegressionData {
    DesignMatrix X;
    std::vector<double> y;
};

/// Core builder shared by the mean and variance auxiliary regressions:
/// one observation is lost to the lag, so for a series v of length L the
/// rows are t = 2..L (L-1 of them) with columns
///   [1, v_{t-1}, s_t, s_t * v_{t-1}],  s_t = t / L,
/// and target v_t. The time regressor is rescaled to t/L because a raw-t
/// interaction column conditions badly at L ~ 1000 while leaving every
/// F statistic built on this design unchanged.
RegressionData build_lagged_trend_design(std::span<const double> series);

/// Auxiliary regression design for the time-varying mean test; requires
/// at least 8 observations.
RegressionData build_mean_design(std::span<const double> y);

/// Auxiliary regression design for the time-varying variance test, built
/// from a squared-residual series; additionally requires u2 >= 0 elementwise.
RegressionData build_variance_design(std::span<const double> u2);

/// Copy of the leading k columns (the nested null design).
DesignMatrix head_columns(const DesignMatrix& X, std::size_t k);

}  // namespace tvtest
