#include "tvtest/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvtest/errors.hpp"

namespace tvtest {

namespace {
constexpr double kMaxCondition = 1e12;
}

QrSolver::QrSolver(const DesignMatrix& X)
    : n_(X.rows), k_(X.cols), qr_(X.values), rdiag_(X.cols, 0.0) {
    if (n_ <= k_ || k_ == 0) {
        throw InvalidInputError("QrSolver: need rows > cols >= 1");
    }
    auto a = [this](std::size_t i, std::size_t j) -> double& { return qr_[i * k_ + j]; };

    for (std::size_t j = 0; j < k_; ++j) {
        double nrm = 0.0;
        for (std::size_t i = j; i < n_; ++i) {
            nrm = std::hypot(nrm, a(i, j));
        }
        if (nrm == 0.0) {
            throw SingularDesignError("QrSolver: column " + std::to_string(j) +
                                      " is zero below the diagonal");
        }
        if (a(j, j) < 0.0) {
            nrm = -nrm;
        }
        for (std::size_t i = j; i < n_; ++i) {
            a(i, j) /= nrm;
        }
        a(j, j) += 1.0;
        for (std::size_t col = j + 1; col < k_; ++col) {
            double s = 0.0;
            for (std::size_t i = j; i < n_; ++i) {
                s += a(i, j) * a(i, col);
            }
            s = -s / a(j, j);
            for (std::size_t i = j; i < n_; ++i) {
                a(i, col) += s * a(i, j);
            }
        }
        rdiag_[j] = -nrm;
    }

    double rmax = 0.0;
    double rmin = std::numeric_limits<double>::infinity();
    for (double d : rdiag_) {
        rmax = std::max(rmax, std::abs(d));
        rmin = std::min(rmin, std::abs(d));
    }
    cond_ = (rmin > 0.0) ? rmax / rmin : std::numeric_limits<double>::infinity();
    if (!(cond_ <= kMaxCondition)) {
        throw SingularDesignError("QrSolver: design is rank deficient at working precision");
    }
}

RegressionFit QrSolver::solve(std::span<const double> y) const {
    if (y.size() != n_) {
        throw InvalidInputError("QrSolver::solve: target length does not match design rows");
    }
    auto a = [this](std::size_t i, std::size_t j) -> double { return qr_[i * k_ + j]; };

    std::vector<double> w(y.begin(), y.end());
    // Apply Q' to the target.
    for (std::size_t j = 0; j < k_; ++j) {
        double s = 0.0;
        for (std::size_t i = j; i < n_; ++i) {
            s += a(i, j) * w[i];
        }
        s = -s / a(j, j);
        for (std::size_t i = j; i < n_; ++i) {
            w[i] += s * a(i, j);
        }
    }

    RegressionFit fit;
    fit.coefficients.assign(k_, 0.0);
    // Back-substitute R beta = head of Q'y.
    for (std::size_t jj = k_; jj-- > 0;) {
        double s = w[jj];
        for (std::size_t col = jj + 1; col < k_; ++col) {
            s -= a(jj, col) * fit.coefficients[col];
        }
        fit.coefficients[jj] = s / rdiag_[jj];
    }

    // The projection residual is Q applied to the tail of Q'y.
    double ssr = 0.0;
    for (std::size_t i = k_; i < n_; ++i) {
        ssr += w[i] * w[i];
    }
    std::vector<double> r(n_, 0.0);
    for (std::size_t i = k_; i < n_; ++i) {
        r[i] = w[i];
    }
    for (std::size_t j = k_; j-- > 0;) {
        double s = 0.0;
        for (std::size_t i = j; i < n_; ++i) {
            s += a(i, j) * r[i];
        }
        s = -s / a(j, j);
        for (std::size_t i = j; i < n_; ++i) {
            r[i] += s * a(i, j);
        }
    }
    fit.residuals = std::move(r);
    fit.ssr = ssr;
    fit.sigma2_hat = ssr / static_cast<double>(n_ - k_);
    return fit;
}

RegressionFit ols_fit(const DesignMatrix& X, std::span<const double> y) {
    return QrSolver(X).solve(y);
}

RegressionData build_lagged_trend_design(std::span<const double> series) {
    const std::size_t len = series.size();
    if (len < 8) {
        throw InsufficientDataError("lagged trend design: need at least 8 observations, got " +
                                    std::to_string(len));
    }
    const std::size_t n = len - 1;  // one observation lost to the lag
    RegressionData d;
    d.X.rows = n;
    d.X.cols = 4;
    d.X.values.resize(n * 4);
    d.y.resize(n);
    const double scale = static_cast<double>(len);
    for (std::size_t i = 0; i < n; ++i) {
        const double lag = series[i];
        const double s = static_cast<double>(i + 2) / scale;  // s_t = t / L, t = 2..L
        d.X.values[i * 4 + 0] = 1.0;
        d.X.values[i * 4 + 1] = lag;
        d.X.values[i * 4 + 2] = s;
        d.X.values[i * 4 + 3] = s * lag;
        d.y[i] = series[i + 1];
    }
    return d;
}

RegressionData build_mean_design(std::span<const double> y) {
    return build_lagged_trend_design(y);
}

RegressionData build_variance_design(std::span<const double> u2) {
    for (double v : u2) {
        if (!(v >= 0.0)) {
            throw InvalidInputError("variance design: squared residuals must be nonnegative");
        }
    }
    return build_lagged_trend_design(u2);
}

DesignMatrix head_columns(const DesignMatrix& X, std::size_t k) {
    if (k == 0 || k > X.cols) {
        throw InvalidInputError("head_columns: k out of range");
    }
    DesignMatrix out;
    out.rows = X.rows;
    out.cols = k;
    out.values.resize(X.rows * k);
    for (std::size_t i = 0; i < X.rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            out.values[i * k + j] = X.values[i * X.cols + j];
        }
    }
    return out;
}

}  // namespace tvtest
