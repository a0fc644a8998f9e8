#pragma once

#include <complex>

namespace benford {

/// Mellin transform values on the line Re(s) = 1 and friends.
using ComplexValue = std::complex<double>;

/// Gamma(z) for Re(z) > 0.
///
/// Lanczos approximation (g = 607/128, 14 terms) evaluated in log space, so
/// the result stays representable far up the imaginary axis. Relative error
/// is below 1e-12 on Re(z) in [0.5, 20], |Im(z)| <= 100.
/// Throws DomainError when Re(z) <= 0.
ComplexValue complex_gamma(ComplexValue z);

/// log Gamma(z) for Re(z) > 0 (principal branch not guaranteed; exp() of it is).
ComplexValue complex_log_gamma(ComplexValue z);

/// |Gamma(1 + ix)| = sqrt(pi x / sinh(pi x)), 1 at x = 0. Even in x.
double gamma_abs_on_line(double x);

/// zeta(n) - 1 = sum_{l >= 2} l^{-n} for integer n >= 2, absolute error <= 1e-15.
double zeta_minus_one(int n);

/// Gamma(n) = (n-1)! for integer n >= 1; exact for n <= 20.
double gamma_real(int n);

}  // namespace benford
