#pragma once

#include <cstdint>
#include <vector>

namespace loopgas {

// ln C(n, k) via lgamma
double log_binomial(double n, double k);

// C(2k,k) 4^{-k}, stable for all k (≈ 1/sqrt(pi k) for large k)
double central_binomial_4k(int64_t k);

// h_up(k) = 2k 4^{-k} C(2k,k)
double h_up(int64_t k);

// regularized lower incomplete gamma P(a,x); Q(a,x) = 1 - P(a,x)
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// CDFs used as comparison targets
double inverse_gamma_cdf(double shape, double scale, double x);  // P(X<=x), X ~ InvGamma
double inverse_exponential_cdf(double x);                        // X = 1/Exp(1): exp(-1/x)
double exponential_cdf(double x);

// sum_{k=N+1}^{inf} k^{-s} (ln k)^j for s > 1, j in {0,1,2};
// direct summation plus Euler–Maclaurin remainder
double power_log_tail_sum(double s, int j, double N);

// prefix sums of odd reciprocals: c_{2m} = 2 (1 + 1/3 + ... + 1/(2m-1));
// table[m] = c_{2m}, m = 0..M (c_0 = 0)
std::vector<double> odd_harmonic_table(int64_t M);

}  // namespace loopgas
