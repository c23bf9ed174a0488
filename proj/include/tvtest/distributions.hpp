#pragma once

namespace tvtest {

/// Upper-tail probability of the F(df1, df2) distribution at f.
/// f <= 0 maps to 1.
double f_upper_tail(double f, int df1, int df2);

/// Upper-tail probability of the chi-squared distribution with df degrees
/// of freedom at x. x <= 0 maps to 1.
double chi_squared_upper_tail(double x, int df);

}  // namespace tvtest
