#include "tvtest/dgp.hpp"

#include <cmath>
#include <string>

#include "tvtest/errors.hpp"

namespace tvtest {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw InvalidInputError("dgp: " + what);
    }
}

}  // namespace

void validate(const DgpSpec& spec) {
    require(spec.sample_size >= 1, "sample_size must be >= 1");

    const MeanParams& m = spec.mean;
    require(std::isfinite(m.alpha0) && std::isfinite(m.beta0) && std::isfinite(m.alpha1) &&
                std::isfinite(m.beta1),
            "mean parameters must be finite");
    // Both regimes stationary: F spans (-1/2, 1/2), so the regime AR
    // coefficients are beta0 +- beta1/2.
    require(std::abs(m.beta0) < 1.0, "|beta0| must be < 1");
    require(std::abs(m.beta0 + m.beta1 / 2.0) < 1.0 && std::abs(m.beta0 - m.beta1 / 2.0) < 1.0,
            "|beta0 +- beta1/2| must be < 1");

    switch (spec.kind) {
        case DgpKind::ar_homoskedastic:
            require(m.alpha1 == 0.0 && m.beta1 == 0.0,
                    "ar_homoskedastic requires alpha1 = beta1 = 0");
            require(!spec.variance.has_value(), "ar_homoskedastic uses unit normal errors");
            break;
        case DgpKind::tv_mean:
            require(!spec.variance.has_value(), "tv_mean uses unit normal errors");
            validate(m.transition);
            break;
        case DgpKind::ar_arch:
            require(spec.variance.has_value(), "ar_arch requires variance parameters");
            require(spec.variance->a1 == 0.0 && spec.variance->b1 == 0.0,
                    "ar_arch requires a1 = b1 = 0");
            break;
        case DgpKind::tv_arch:
            require(spec.variance.has_value(), "tv_arch requires variance parameters");
            require(m.alpha1 == 0.0 && m.beta1 == 0.0, "tv_arch requires alpha1 = beta1 = 0");
            validate(spec.variance->transition);
            break;
    }

    if (spec.variance) {
        const VarianceParams& v = *spec.variance;
        require(std::isfinite(v.a0) && std::isfinite(v.b0) && std::isfinite(v.a1) &&
                    std::isfinite(v.b1),
                "variance parameters must be finite");
        require(v.a0 - std::abs(v.a1) / 2.0 > 0.0, "a0 - |a1|/2 must be > 0");
        require(v.b0 - std::abs(v.b1) / 2.0 >= 0.0, "b0 - |b1|/2 must be >= 0");
        require(v.b0 < 1.0, "b0 must be < 1 for weak stationarity");
    }
}

TimeSeries simulate(const DgpSpec& spec, RngStream& stream, bool keep_latent) {
    validate(spec);

    const std::size_t T = spec.sample_size;
    TimeSeries out;
    out.values.reserve(T);
    if (keep_latent) {
        out.latent_h2.emplace();
        out.latent_h2->reserve(T);
    }

    const MeanParams& m = spec.mean;
    const bool arch = spec.variance.has_value();

    double prev_y = 0.0;
    double prev_u = 0.0;
    const long t_begin = 1 - static_cast<long>(spec.burn_in);
    for (long t = t_begin; t <= static_cast<long>(T); ++t) {
        double h2 = 1.0;
        if (arch) {
            const VarianceParams& v = *spec.variance;
            const double fv = transition_value(static_cast<double>(t), v.transition);
            const double u2 = prev_u * prev_u;
            h2 = v.a0 + v.b0 * u2 + (v.a1 + v.b1 * u2) * fv;
            if (!(h2 > 0.0)) {
                throw PositivityError(t, h2);
            }
        }
        const double u = std::sqrt(h2) * stream.normal();
        const double fm = transition_value(static_cast<double>(t), m.transition);
        const double y = m.alpha0 + m.beta0 * prev_y + (m.alpha1 + m.beta1 * prev_y) * fm + u;
        if (t >= 1) {
            out.values.push_back(y);
            if (keep_latent) {
                out.latent_h2->push_back(h2);
            }
        }
        prev_y = y;
        prev_u = u;
    }
    return out;
}

}  // namespace tvtest
