#include <cmath>

#include "doctest.h"
#include "loopgas/errors.hpp"
#include "loopgas/limitlaws.hpp"
#include "loopgas/params.hpp"

using namespace loopgas;

TEST_CASE("n=1 dilute point") {
    auto p = derive_params(1.0, DiluteSel{});
    CHECK(p.b == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(p.alpha == doctest::Approx(11.0 / 6.0).epsilon(1e-14));
    CHECK(p.theta_alpha == doctest::Approx(2.0));
    CHECK(line_residual(p) < 1e-12);
    // dilute relation holds too
    double bb = p.b;
    CHECK(p.g == doctest::Approx(3.0 * p.h / (2.0 * (bb * bb - 2.0 * bb + 3.0))).epsilon(1e-12));
}

TEST_CASE("n=sqrt2 dilute point") {
    auto p = derive_params(std::sqrt(2.0), DiluteSel{});
    CHECK(p.b == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(p.alpha == doctest::Approx(1.75).epsilon(1e-14));
    CHECK(p.theta_alpha == doctest::Approx(2.0));
    CHECK(p.beta_alpha == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(line_residual(p) < 1e-12);
}

TEST_CASE("o2 boundary and sub points") {
    const double pi2 = M_PI * M_PI;
    auto pb = derive_params(2.0, O2Sel{4.0 / (3.0 * pi2)});
    CHECK(pb.regime == Regime::o2_boundary);
    CHECK(pb.g == doctest::Approx(pb.h / 2.0).epsilon(1e-13));
    CHECK(pb.case_tag == CaseTag::A);
    CHECK(pb.alpha == doctest::Approx(1.5));

    auto ps = derive_params(2.0, O2Sel{2.0 / pi2});
    CHECK(ps.regime == Regime::o2_sub);
    CHECK(ps.g == doctest::Approx(0.0).epsilon(1e-15));

    auto pm = derive_params(2.0, O2Sel{1.7 / pi2});
    CHECK(pm.regime == Regime::o2_sub);
    CHECK(pm.case_tag == CaseTag::B);
    CHECK(pm.g < pm.h / 2.0);
    CHECK(line_residual(pm) < 1e-12);

    CHECK_THROWS_AS(derive_params(2.0, O2Sel{0.3 / pi2}), OutOfPhase);
}

TEST_CASE("dense regime validation") {
    // dense needs h above the dilute h and below the g=0 point
    auto dil = derive_params(1.0, DiluteSel{});
    CHECK_THROWS_AS(derive_params(1.0, DenseSel{dil.h * 0.5}), OutOfPhase);
    auto pd = derive_params(1.0, DenseSel{dil.h * 1.3});
    CHECK(pd.regime == Regime::dense);
    CHECK(pd.alpha == doctest::Approx(1.5 - pd.b).epsilon(1e-14));
    CHECK(pd.theta_alpha == doctest::Approx(2.0 * pd.alpha - 1.0).epsilon(1e-14));
    CHECK(line_residual(pd) < 1e-12);
    // far enough out g goes negative
    CHECK_THROWS_AS(derive_params(1.0, DenseSel{dil.h * 10.0}), DegenerateWeight);
}

TEST_CASE("theta_alpha matches the root of the Biggins transform") {
    for (double n : {0.3, 0.8, 1.0, 1.41421356, 1.9}) {
        auto p = derive_params(n, DiluteSel{});
        CHECK(std::fabs(theta_root(p.alpha) - p.theta_alpha) < 1e-10);
        auto pd = derive_params(n, DenseSel{p.h * 1.2});
        CHECK(std::fabs(theta_root(pd.alpha) - pd.theta_alpha) < 1e-10);
    }
}

TEST_CASE("b decreasing in n") {
    double prev = 1e9;
    for (double n = 0.1; n <= 2.0001; n += 0.1) {
        double nn = std::min(n, 2.0);
        double b = std::acos(nn / 2.0) / M_PI;
        CHECK(b < prev);
        prev = b;
    }
    CHECK(std::acos(1.0) == doctest::Approx(0.0));
}

TEST_CASE("params json contains all fields") {
    auto p = derive_params(std::sqrt(2.0), DiluteSel{});
    auto j = p.to_json();
    for (const char* key : {"\"n\":", "\"h\":", "\"g\":", "\"b\":", "\"alpha\":",
                            "\"theta_alpha\":", "\"beta_alpha\":", "\"gamma\":", "\"regime\":",
                            "\"case_tag\":"}) {
        CHECK(j.find(key) != std::string::npos);
    }
}
