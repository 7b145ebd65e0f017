#include "loopgas/limitlaws.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "loopgas/errors.hpp"
#include "loopgas/quadrature.hpp"

namespace loopgas {

namespace {
constexpr double kPi = std::numbers::pi;
}

double phi_alpha(double alpha, double theta) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw ConfigError("phi_alpha: alpha in (1,2) required");
    if (theta <= alpha || theta >= alpha + 1.0) return std::numeric_limits<double>::infinity();
    return std::sin(kPi * (2.0 - alpha)) / std::sin(kPi * (theta - alpha));
}

double theta_root(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw ConfigError("theta_root: alpha in (1,2) required");
    // phi(theta) = 1 on (alpha, alpha+1/2] rearranges to
    // sin(pi(theta-alpha)) = sin(pi(2-alpha)), monotone increasing there;
    // bisection on the rearranged form keeps the comparison well conditioned
    const double target = std::sin(kPi * (2.0 - alpha));
    double lo = alpha + 1e-14, hi = alpha + 0.5;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (std::sin(kPi * (mid - alpha)) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

double psi(double alpha, double theta, double q, double abs_tol) {
    if (q < 0.0) throw ConfigError("psi: q >= 0 required");
    if (q == 0.0) return 1.0;
    const double a = std::pow(q, 2.0 / theta);
    const double c = alpha + 0.5;
    // y = e^t: integrand exp(-a e^t - e^{-t} + (1/2 - alpha) t), doubly
    // decaying; generous fixed window then adaptive refinement
    auto f = [&](double t) {
        double ex = -a * std::exp(t) - std::exp(-t) + (1.0 - c) * t;
        return (ex < -745.0) ? 0.0 : std::exp(ex);
    };
    double hi = std::log(745.0 / a) + 1.0;  // beyond this the integrand is 0
    double val = adaptive_gk(f, -45.0, std::max(hi, -40.0), abs_tol * 0.5, 1e-13);
    return val / std::tgamma(alpha - 0.5);
}

std::function<double(double)> dilute_volume_laplace(double alpha) {
    if (!(alpha > 1.5)) throw ConfigError("dilute_volume_laplace: alpha > 3/2 required");
    return [alpha](double q) { return psi(alpha, 2.0, (alpha - 1.5) * q); };
}

std::function<double(double)> dense_w_laplace(double alpha) {
    if (!(alpha < 1.5)) throw ConfigError("dense_w_laplace: alpha < 3/2 required");
    double scale = std::tgamma(alpha + 0.5) / std::tgamma(1.5 - alpha);
    return [alpha, scale](double q) { return psi(alpha, 2.0 * alpha - 1.0, scale * q); };
}

}  // namespace loopgas
