#include "loopgas/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "loopgas/errors.hpp"
#include "loopgas/rng.hpp"

namespace loopgas {

namespace {

constexpr double kPi = std::numbers::pi;

double b_of_n(double n) { return std::acos(n / 2.0) / kPi; }

// g on the non-generic critical line, n < 2
double g_line(double n, double b, double h) {
    return 3.0 / (2.0 + b * b) * (h - (2.0 - n) / (2.0 * b * b) * h * h);
}

// dilute g as a function of h
double g_dilute(double b, double h) { return 3.0 * h / (2.0 * (b * b - 2.0 * b + 3.0)); }

void fill_exponents(CriticalParams& p) {
    p.gamma = 1.0 / std::sqrt(p.h);
    switch (p.regime) {
        case Regime::dilute: p.alpha = 1.5 + p.b; break;
        case Regime::dense: p.alpha = 1.5 - p.b; break;
        default: p.alpha = 1.5; break;
    }
    p.theta_alpha = std::min(2.0, 2.0 * p.alpha - 1.0);
    p.beta_alpha = p.theta_alpha - p.alpha;
    p.case_tag = (p.regime == Regime::o2_sub) ? CaseTag::B : CaseTag::A;
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::dense: return "dense";
        case Regime::dilute: return "dilute";
        case Regime::o2_boundary: return "o2_boundary";
        case Regime::o2_sub: return "o2_sub";
    }
    return "?";
}

std::string to_string(CaseTag c) { return c == CaseTag::A ? "A" : "B"; }

CriticalParams derive_params(double n, DiluteSel) {
    if (!(n > 0.0 && n < 2.0)) throw OutOfPhase("dilute regime requires n in (0,2)");
    CriticalParams p;
    p.n = n;
    p.b = b_of_n(n);
    // equate the line equation with the dilute relation; rational solve for h
    p.h = (1.0 - (2.0 + p.b * p.b) / (2.0 * (p.b * p.b - 2.0 * p.b + 3.0))) * 2.0 * p.b * p.b /
          (2.0 - n);
    p.g = g_dilute(p.b, p.h);
    if (p.g <= 0.0) throw DegenerateWeight("dilute point has g <= 0");
    p.regime = Regime::dilute;
    fill_exponents(p);
    return p;
}

CriticalParams derive_params(double n, DenseSel sel) {
    if (!(n > 0.0 && n < 2.0)) throw OutOfPhase("dense regime requires n in (0,2)");
    CriticalParams p;
    p.n = n;
    p.b = b_of_n(n);
    p.h = sel.h;
    if (!(p.h > 0.0)) throw OutOfPhase("dense regime requires h > 0");
    p.g = g_line(n, p.b, p.h);
    if (p.g <= 0.0) throw DegenerateWeight("supplied h gives g <= 0");
    if (!(p.g < g_dilute(p.b, p.h))) {
        throw OutOfPhase("supplied h violates the strict dense inequality g < 3h/(2(b^2-2b+3))");
    }
    p.regime = Regime::dense;
    fill_exponents(p);
    return p;
}

CriticalParams derive_params(double n, O2Sel sel) {
    if (std::fabs(n - 2.0) > 1e-14) throw OutOfPhase("o2 selector requires n = 2");
    const double h_lo = 4.0 / (3.0 * kPi * kPi), h_hi = 2.0 / (kPi * kPi);
    CriticalParams p;
    p.n = 2.0;
    p.b = 0.0;
    p.h = sel.h;
    if (!(p.h >= h_lo - 1e-15 && p.h <= h_hi + 1e-15))
        throw OutOfPhase("o2 requires h in [4/(3pi^2), 2/pi^2]");
    p.g = 1.5 * (p.h - kPi * kPi / 2.0 * p.h * p.h);
    if (p.g < -1e-15) throw DegenerateWeight("o2 point has g < 0");
    if (p.g < 0.0) p.g = 0.0;
    p.regime = (std::fabs(p.g - p.h / 2.0) < 1e-12 * p.h) ? Regime::o2_boundary : Regime::o2_sub;
    fill_exponents(p);
    return p;
}

double line_residual(const CriticalParams& p) {
    double expect;
    if (p.is_o2()) {
        expect = 1.5 * (p.h - kPi * kPi / 2.0 * p.h * p.h);
    } else {
        expect = g_line(p.n, p.b, p.h);
    }
    double denom = std::max({std::fabs(p.g), std::fabs(expect), 1e-300});
    return std::fabs(p.g - expect) / denom;
}

std::string CriticalParams::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"n\":" << n << ",\"h\":" << h << ",\"g\":" << g << ",\"b\":" << b
       << ",\"alpha\":" << alpha << ",\"theta_alpha\":" << theta_alpha
       << ",\"beta_alpha\":" << beta_alpha << ",\"gamma\":" << gamma << ",\"regime\":\""
       << to_string(regime) << "\",\"case_tag\":\"" << to_string(case_tag) << "\"}";
    return os.str();
}

uint64_t CriticalParams::hash() const {
    auto bits = [](double x) {
        uint64_t u;
        static_assert(sizeof(double) == sizeof(uint64_t));
        std::memcpy(&u, &x, sizeof(u));
        return u;
    };
    uint64_t acc = 0x243f6a8885a308d3ULL;
    acc = mix64(acc, bits(n));
    acc = mix64(acc, bits(h));
    acc = mix64(acc, bits(g));
    acc = mix64(acc, static_cast<uint64_t>(regime));
    return acc;
}

}  // namespace loopgas
