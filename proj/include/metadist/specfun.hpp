#pragma once

// Scalar special functions: log-gamma, rising factorial, generalized binomial
// coefficients, Gauss hypergeometric 2F1 on the negative real axis and the
// regularized incomplete beta function. All routines are pure.

namespace metadist::specfun {

/// ln Gamma(x) for x > 0 (Lanczos approximation, ~15 significant digits).
/// Throws DomainError for x <= 0.
double ln_gamma(double x);

/// Gamma(x) for x > 0.
double gamma_fn(double x);

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
double rising_factorial(double a, int n);

/// Binomial coefficient with real upper argument, top*(top-1)*...*(top-k+1)/k!.
/// Returns 0 for k < 0.
double binomial(double top, int k);

/// Gauss hypergeometric function 2F1(a,b;c;z) for z <= 0.
///
/// The Pfaff transformation
///   2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
/// maps the whole negative axis into [0,1), where the power series converges.
/// Summation stops once a term falls below 1e-16 of the partial sum while the
/// terms are shrinking; more than 10,000 terms is a ConvergenceError.
/// Throws DomainError for z > 0 or c a nonpositive integer.
double gauss_2f1(double a, double b, double c, double z);

/// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double reg_inc_beta(double x, double a, double b);

}  // namespace metadist::specfun
