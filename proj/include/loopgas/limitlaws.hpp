#pragma once

#include <functional>

namespace loopgas {

// Biggins transform of the limiting cascade:
// sin(pi(2-alpha))/sin(pi(theta-alpha)) on (alpha, alpha+1), +inf outside
double phi_alpha(double alpha, double theta);

// minimal root of phi_alpha(theta) = 1 in (alpha, alpha+1); equals
// min(2, 2 alpha - 1)
double theta_root(double alpha);

// psi_{alpha,theta}(q) = Gamma(alpha-1/2)^{-1} int_0^inf
//   exp(-q^{2/theta} y - 1/y) y^{-(alpha+1/2)} dy
// (Laplace transform of the cascade martingale limit, suitably scaled)
double psi(double alpha, double theta, double q, double abs_tol = 1e-10);

// Laplace transform targets of the limit laws, as q -> E[e^{-qX}]
std::function<double(double)> dilute_volume_laplace(double alpha);  // psi(alpha,2,(a-3/2)q)
std::function<double(double)> dense_w_laplace(double alpha);

}  // namespace loopgas
