#pragma once

#include <cstdint>

namespace egonet::tail {

/// P[B >= k] for B ~ Binomial(n, p), via the regularized incomplete beta
/// identity I_p(k, n-k+1). Log-space evaluation; relative accuracy ~1e-12
/// for results down to 1e-300. k = 0 gives 1, k > n gives 0.
double binom_sf(std::uint64_t k, std::uint64_t n, double p);

/// Smallest j with binom_sf(j, n, p) <= t, found by bisection over k.
/// Always <= n + 1; requires t in (0,1).
std::uint64_t binom_threshold_k(std::uint64_t n, double p, double t);

/// P[X >= k] for X ~ Poisson(lambda), via the regularized lower incomplete
/// gamma identity P[X >= k] = P(k, lambda) for k >= 1.
double poisson_sf(std::uint64_t k, double lambda);

/// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a).
double gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

/// Quantile of the chi-squared distribution with 1 degree of freedom,
/// solved from the CDF to ~1e-10.
double chi2_quantile_1df(double prob);

}  // namespace egonet::tail
