#include "tvtest/distributions.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include "tvtest/errors.hpp"

namespace tvtest {

double f_upper_tail(double f, int df1, int df2) {
    if (df1 <= 0 || df2 <= 0) {
        throw InvalidInputError("f_upper_tail: degrees of freedom must be positive");
    }
    if (!(f > 0.0)) {
        return 1.0;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    const boost::math::fisher_f_distribution<double> dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

double chi_squared_upper_tail(double x, int df) {
    if (df <= 0) {
        throw InvalidInputError("chi_squared_upper_tail: degrees of freedom must be positive");
    }
    if (!(x > 0.0)) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    const boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

}  // namespace tvtest
