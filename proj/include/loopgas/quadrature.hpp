#pragma once

#include <functional>
#include <vector>

namespace loopgas {

// tanh-sinh (double-exponential) rule on (-1,1); nodes cluster doubly-
// exponentially at both endpoints, which handles algebraic endpoint
// singularities like (1-x)^b.
struct TanhSinhRule {
    std::vector<double> x;   // nodes in (-1,1), symmetric
    std::vector<double> w;   // weights
    std::vector<double> xc;  // 1 - |x|, computed without cancellation

    explicit TanhSinhRule(int level = 9, double tmax = 6.5);

    // integral over (a,b) of f
    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double c = 0.5 * (a + b), r = 0.5 * (b - a);
        double s = 0.0;
        for (size_t i = 0; i < x.size(); ++i) s += w[i] * f(c + r * x[i]);
        return s * r;
    }
};

// adaptive Gauss-Kronrod (G7,K15); absolute/relative tolerance
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol = 1e-12, int max_depth = 30);

// Gauss-Legendre nodes/weights on [-1,1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace loopgas
