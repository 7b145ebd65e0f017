#include <cmath>

#include "doctest.h"
#include "loopgas/limitlaws.hpp"
#include "loopgas/quadrature.hpp"
#include "loopgas/special.hpp"

using namespace loopgas;

TEST_CASE("phi_alpha values") {
    CHECK(phi_alpha(1.75, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(phi_alpha(1.75, 2.5) == doctest::Approx(1.0).epsilon(1e-14));  // second root
    CHECK(std::isinf(phi_alpha(1.75, 1.7)));
    CHECK(std::isinf(phi_alpha(1.75, 2.75)));
    CHECK(phi_alpha(1.75, 2.75 - 1e-9) > 1e6);  // pole
}

TEST_CASE("theta_root") {
    CHECK(std::fabs(theta_root(7.0 / 6.0) - 4.0 / 3.0) < 1e-10);
    CHECK(std::fabs(theta_root(11.0 / 6.0) - 2.0) < 1e-10);
    // double root: bisection resolves it to sqrt(eps) only
    CHECK(std::fabs(theta_root(1.5) - 2.0) < 1e-6);
    for (double b : {0.1, 0.25, 0.4}) {
        CHECK(theta_root(1.5 + b) == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(theta_root(1.5 - b) == doctest::Approx(2.0 - 2.0 * b).epsilon(1e-10));
    }
    // 20 values across (1,2)
    for (int i = 1; i <= 20; ++i) {
        double a = 1.0 + i / 21.0;
        CHECK(std::fabs(theta_root(a) - std::min(2.0, 2.0 * a - 1.0)) < 1e-10);
    }
}

TEST_CASE("psi normalization and frozen values") {
    CHECK(psi(1.75, 2.0, 0.0) == doctest::Approx(1.0));
    CHECK(psi(1.25, 1.6, 0.0) == doctest::Approx(1.0));
    // frozen from 40-digit quadrature
    CHECK(psi(1.75, 2.0, 0.25) == doctest::Approx(0.6783050390036377).epsilon(1e-10));
    CHECK(psi(1.75, 2.0, 0.5) == doctest::Approx(0.5224030845494626).epsilon(1e-10));
    CHECK(psi(1.5, 2.0, 1.0) == doctest::Approx(0.2797317636330449).epsilon(1e-10));
    CHECK(psi(1.25, 1.5, 0.7) == doctest::Approx(0.3045879009131839).epsilon(1e-10));
}

TEST_CASE("psi at alpha=3/2 equals the alternate integral") {
    for (double x : {0.3, 1.0, 2.5}) {
        double alt = adaptive_gk([x](double t) { return std::exp(-x / t - t); }, 1e-12, 60.0,
                                 1e-11);
        CHECK(psi(1.5, 2.0, x) == doctest::Approx(alt).epsilon(1e-9));
    }
}

TEST_CASE("dilute identity: psi vs inverse-gamma Laplace transform") {
    const double alpha = 1.75;
    auto target = dilute_volume_laplace(alpha);
    const double a = alpha - 0.5, b = alpha - 1.5;
    for (double q : {0.5, 1.0, 2.0}) {
        // Laplace transform of InvGamma(a,b) by quadrature of the density
        double lap = adaptive_gk(
            [&](double t) {
                return std::exp(-q * t) * std::pow(b, a) / std::tgamma(a) *
                       std::pow(t, -a - 1.0) * std::exp(-b / t);
            },
            1e-10, 200.0, 1e-11);
        CHECK(target(q) == doctest::Approx(lap).epsilon(1e-8));
    }
}

TEST_CASE("psi complete monotonicity (finite differences alternate in sign)") {
    const double dq = 0.05;
    for (double q = 0.2; q < 2.0; q += 0.3) {
        double f0 = psi(1.75, 2.0, q), f1 = psi(1.75, 2.0, q + dq),
               f2 = psi(1.75, 2.0, q + 2 * dq), f3 = psi(1.75, 2.0, q + 3 * dq);
        CHECK(f1 - f0 < 0.0);
        CHECK(f2 - 2 * f1 + f0 > 0.0);
        CHECK(f3 - 3 * f2 + 3 * f1 - f0 < 0.0);
    }
}

TEST_CASE("inverse-exponential cdf") {
    CHECK(inverse_exponential_cdf(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(inverse_exponential_cdf(0.0) == 0.0);
    // median of 1/Exp(1) is 1/ln 2
    CHECK(inverse_exponential_cdf(1.0 / std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
}
