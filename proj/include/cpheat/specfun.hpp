#pragma once

#include <complex>

#include "cpheat/numkernel.hpp"

namespace cpheat {

// Principal-branch logarithm of the Gamma function; exp(log_gamma(z)) = Gamma(z).
Complex log_gamma(Complex z);

// 1/Gamma(z); entire, zero at the non-positive integers.
Complex rgamma(Complex z);

// log(Gamma(z + a) / Gamma(z + b)), accurate for large |z| in the right half plane.
Complex log_gamma_ratio(Complex z, double a, double b);

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z);

// (z)_m = z (z+1) ... (z+m-1).
Complex pochhammer(Complex z, int m);

// Power series of 2F1(a, b; c; x) for real |x| < 1.
Complex hyp2f1_series(Complex a, Complex b, Complex c, double x);

// Gauss hypergeometric function for real z <= 0.
Complex gauss_2f1(Complex a, Complex b, Complex c, double z);

// Bessel function of the first kind, nu >= 0, x >= 0.
double bessel_j(double nu, double x);

// Bernoulli number B_n (B_1 = -1/2) and polynomial B_n(x).
double bernoulli_number(int n);
double bernoulli_poly(int n, double x);

}  // namespace cpheat
