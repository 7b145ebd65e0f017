#include "loopgas/resolvent.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "loopgas/errors.hpp"

namespace loopgas {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// divided difference (x^j - y^j)/(x - y) for j in [-5, 3]; smooth in x near y
double power_dd(int j, double x, double y) {
    if (j == 0) return 0.0;
    if (j > 0) {
        double acc = 0.0;
        for (int i = 0; i < j; ++i) acc += std::pow(x, i) * std::pow(y, j - 1 - i);
        return acc;
    }
    int m = -j;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += std::pow(x, i) * std::pow(y, m - 1 - i);
    return -acc / (std::pow(x, m) * std::pow(y, m));
}

// Laurent coefficients of C+(x) = B(x) - (gamma^2/x^2) B(gamma^2/x),
// powers x^j, j = -5..3 (j = -1 absent). C-(x) = C+(-x). The constant and
// linear coefficients are nudged (by ~1 ulp of the largest term) so that
// C+(gamma) = C+(-gamma) = 0 holds in floating point exactly as it does
// analytically; the endpoint behaviour of rho depends on it.
struct CPlus {
    std::array<double, 9> c{};  // index 0 <-> power -5
    double gam;

    explicit CPlus(const CriticalParams& p) : gam(p.gamma) {
        const double n = p.n, g = p.g, b = p.b;
        const double A = g / (4.0 - n * n);
        const double D = 1.0 / (4.0 - n * n);
        const double c1 = 2.0 * b * gam;
        const double c2 = 2.0 * b * b * gam * gam;
        const double c3 = 2.0 / 3.0 * (b + 2.0 * b * b * b) * gam * gam * gam;
        at(3) = A;
        at(2) = A * c1;
        at(1) = A * c2 - D;
        at(0) = A * c3 - D * c1;
        at(-2) = -(A * c3 - D * c1) * gam * gam;
        at(-3) = -(A * c2 - D) * std::pow(gam, 4);
        at(-4) = -A * c1 * std::pow(gam, 6);
        at(-5) = -A * std::pow(gam, 8);
        double rp = eval(gam), rm = eval(-gam);
        at(0) -= 0.5 * (rp + rm);
        at(1) -= 0.5 * (rp - rm) / gam;
    }

    double& at(int j) { return c[static_cast<size_t>(j + 5)]; }
    double at(int j) const { return c[static_cast<size_t>(j + 5)]; }

    template <typename T>
    T eval(T x) const {
        T inv = 1.0 / x;
        T inv2 = inv * inv;
        T poly = ((at(3) * x + at(2)) * x + at(1)) * x + at(0);
        T lau = inv2 * (at(-2) + inv * (at(-3) + inv * (at(-4) + inv * at(-5))));
        return poly + lau;
    }

    // C+(gamma - du) = -du * eval_dd(gamma - du, gamma)
    double eval_near(double x, double sign_y) const {
        double y = sign_y * gam;
        double acc = 0.0;
        for (int j = -5; j <= 3; ++j) {
            if (j == -1 || at(j) == 0.0) continue;
            acc += at(j) * power_dd(j, x, y);
        }
        return (x - y) * acc;
    }
};

double dist_to_cut(cplx xi, double gam) {
    double x = xi.real(), y = std::fabs(xi.imag());
    if (x >= -gam && x <= gam) return y;
    double dx = (x > gam) ? x - gam : -gam - x;
    return std::hypot(dx, y);
}

// ---- n = 2 closed form (limit of the general-n resolvent along the line) ----

template <typename T>
T p1_o2(const CriticalParams& p, T xi) {
    const double g = p.g, gam = p.gamma;
    T inv = 1.0 / xi, inv3 = inv * inv * inv, inv5 = inv3 * inv * inv;
    return g * xi * xi * xi - g * std::pow(gam, 8) * inv5 - xi + std::pow(gam, 4) * inv3;
}

template <typename T>
T p2_o2(const CriticalParams& p, T xi) {
    const double g = p.g, gam = p.gamma, h = p.h;
    T inv = 1.0 / xi, inv2 = inv * inv, inv4 = inv2 * inv2;
    return g * (xi * xi - std::pow(gam, 6) * inv4) +
           (g / (3.0 * h) - 1.0) * (1.0 - gam * gam * inv2);
}

template <typename T>
T p3_o2(const CriticalParams& p, T xi) {
    const double g = p.g, gam = p.gamma, h = p.h;
    T inv = 1.0 / xi, inv3 = inv * inv * inv, inv5 = inv3 * inv * inv;
    return g / (kPi * kPi * h) * (xi - std::pow(gam, 4) * inv3) +
           0.25 * (std::pow(gam, 4) * inv3 - g * std::pow(gam, 8) * inv5) + 0.5 * inv;
}

cplx resolvent_o2(const CriticalParams& p, cplx xi) {
    const double gam = p.gamma;
    cplx L = std::log((xi - gam) / (xi + gam));
    return L * L / (4.0 * kPi * kPi) * p1_o2(p, xi) + gam / (kPi * kPi) * L * p2_o2(p, xi) +
           p3_o2(p, xi);
}

// P1 and P2 as Laurent coefficient sets for the edge path (both vanish at
// +-gamma analytically; same 1-ulp nudge as CPlus)
struct O2Polys {
    std::array<double, 9> p1{}, p2{};
    double gam;

    explicit O2Polys(const CriticalParams& p) : gam(p.gamma) {
        const double g = p.g, h = p.h;
        auto idx = [](int j) { return static_cast<size_t>(j + 5); };
        p1[idx(3)] = g;
        p1[idx(1)] = -1.0;
        p1[idx(-3)] = std::pow(gam, 4);
        p1[idx(-5)] = -g * std::pow(gam, 8);
        const double q = g / (3.0 * h) - 1.0;
        p2[idx(2)] = g;
        p2[idx(-4)] = -g * std::pow(gam, 6);
        p2[idx(0)] = q;
        p2[idx(-2)] = -q * gam * gam;
        // enforce P1(gamma) = 0 (odd) and P2(gamma) = 0 (even)
        double r1 = eval(p1, gam);
        p1[idx(1)] -= r1 / gam;
        double r2 = eval(p2, gam);
        p2[idx(0)] -= r2;
    }

    static double eval(const std::array<double, 9>& c, double x) {
        double acc = 0.0;
        for (int j = -5; j <= 3; ++j) {
            double cj = c[static_cast<size_t>(j + 5)];
            if (cj != 0.0) acc += cj * std::pow(x, j);
        }
        return acc;
    }

    static double eval_near(const std::array<double, 9>& c, double x, double y) {
        double acc = 0.0;
        for (int j = -5; j <= 3; ++j) {
            double cj = c[static_cast<size_t>(j + 5)];
            if (cj != 0.0) acc += cj * power_dd(j, x, y);
        }
        return (x - y) * acc;
    }
};

// ---- near-zero Taylor series of rho ----

// Taylor coefficients of E(u) = ((gam-u)/(gam+u))^b = exp(-2b atanh(u/gam)):
// (1 - u^2/gam^2) E' = (-2b/gam) E
std::vector<double> exp_atanh_coeffs(double b, double gam, int T) {
    std::vector<double> e(static_cast<size_t>(T) + 1);
    e[0] = 1.0;
    e[1] = -2.0 * b / gam;
    for (int m = 1; m < T; ++m) {
        e[static_cast<size_t>(m) + 1] =
            ((-2.0 * b / gam) * e[static_cast<size_t>(m)] +
             (m - 1.0) * e[static_cast<size_t>(m) - 1] / (gam * gam)) /
            (m + 1.0);
    }
    return e;
}

struct RhoSeriesN {
    std::vector<double> coef;  // coef[t/2] multiplies u^t
    double pref;

    RhoSeriesN(const CriticalParams& p, const CPlus& cp, int T = 56) {
        auto e = exp_atanh_coeffs(p.b, p.gamma, T + 6);
        coef.assign(static_cast<size_t>(T) / 2 + 1, 0.0);
        for (int t = 0; t <= T; t += 2) {
            double s = 0.0;
            for (int j = -5; j <= 3; ++j) {
                if (j == -1) continue;
                int m = t - j;
                if (m >= 0 && m < static_cast<int>(e.size()))
                    s += cp.at(j) * e[static_cast<size_t>(m)];
            }
            coef[static_cast<size_t>(t) / 2] = s;
        }
        pref = -2.0 * std::sin(kPi * p.b) / kPi;
    }

    double eval(double u) const {
        double u2 = u * u, acc = 0.0, pw = 1.0;
        for (double c : coef) {
            acc += c * pw;
            pw *= u2;
        }
        return pref * acc;
    }
};

struct RhoSeriesO2 {
    std::vector<double> coef;

    explicit RhoSeriesO2(const CriticalParams& p, int T = 56) {
        const double g = p.g, gam = p.gamma, h = p.h;
        const std::array<std::pair<int, double>, 4> p1{
            {{3, g}, {1, -1.0}, {-3, std::pow(gam, 4)}, {-5, -g * std::pow(gam, 8)}}};
        const double q = g / (3.0 * h) - 1.0;
        auto p2t = [&](int t) -> double {
            switch (t) {
                case 2: return 2.0 * gam * g;
                case -4: return -2.0 * gam * g * std::pow(gam, 6);
                case 0: return 2.0 * gam * q;
                case -2: return -2.0 * gam * q * gam * gam;
                default: return 0.0;
            }
        };
        coef.assign(static_cast<size_t>(T) / 2 + 1, 0.0);
        for (int t = 0; t <= T; t += 2) {
            double s = p2t(t);
            for (auto [j, cj] : p1) {
                int m = t - j;
                if (m >= 1 && (m % 2) == 1) s += cj * (-2.0 / (m * std::pow(gam, m)));
            }
            coef[static_cast<size_t>(t) / 2] = s;
        }
    }

    double eval(double u) const {
        double u2 = u * u, acc = 0.0, pw = 1.0;
        for (double c : coef) {
            acc += c * pw;
            pw *= u2;
        }
        return -acc / (2.0 * kPi * kPi);
    }
};

}  // namespace

std::complex<double> resolvent_w(const CriticalParams& p, std::complex<double> xi) {
    const double gam = p.gamma;
    if (dist_to_cut(xi, gam) < 1e-12) throw OnCut("resolvent_w: xi within 1e-12 of the cut");
    if (p.is_o2()) return resolvent_o2(p, xi);
    const double n = p.n, g = p.g, b = p.b, h = p.h;
    CPlus cp(p);
    cplx xi3 = xi * xi * xi, xi5 = xi3 * xi * xi;
    cplx wpart = (2.0 * (xi - g * xi3) - n * (1.0 / (h * h * xi3) - g / (std::pow(h, 4) * xi5))) /
                     (4.0 - n * n) +
                 n / ((2.0 + n) * xi);
    cplx ratio = (xi - gam) / (xi + gam);
    cplx rb = std::pow(ratio, b);
    cplx whom = cp.eval(xi) * rb - cp.eval(-xi) / rb;
    return wpart + whom;
}

double spectral_density_direct(const CriticalParams& p, double u) {
    const double gam = p.gamma;
    double au = std::fabs(u);
    if (au >= gam) return 0.0;
    if (p.is_o2()) {
        double lam = std::log((gam - u) / (gam + u));
        return -(lam * p1_o2(p, u) + 2.0 * gam * p2_o2(p, u)) / (2.0 * kPi * kPi);
    }
    CPlus cp(p);
    double E = std::pow((gam - u) / (gam + u), p.b);
    return -std::sin(kPi * p.b) / kPi * (cp.eval(u) * E + cp.eval(-u) / E);
}

double spectral_density_edge(const CriticalParams& p, double du) {
    const double gam = p.gamma;
    if (du <= 0.0) return 0.0;
    const double u = gam - du;
    if (p.is_o2()) {
        O2Polys polys(p);
        double lam = std::log(du) - std::log(2.0 * gam - du);
        double P1 = O2Polys::eval_near(polys.p1, u, gam);
        double P2 = O2Polys::eval_near(polys.p2, u, gam);
        return -(lam * P1 + 2.0 * gam * P2) / (2.0 * kPi * kPi);
    }
    CPlus cp(p);
    // E = (du/(2 gamma - du))^b
    double E = std::pow(du / (2.0 * gam - du), p.b);
    double Cp = cp.eval_near(u, +1.0);   // ~ -du * C'(gamma)
    double Cm = cp.eval_near(-u, -1.0);  // C-(u) = C+(-u), -u near -gamma
    return -std::sin(kPi * p.b) / kPi * (Cp * E + Cm / E);
}

double spectral_density(const CriticalParams& p, double u) {
    const double gam = p.gamma;
    double au = std::fabs(u);
    if (au >= gam) return 0.0;  // endpoint clamp
    if (au > 0.99 * gam) return spectral_density_edge(p, gam - au);
    if (au > 0.15 * gam) return spectral_density_direct(p, u);
    if (p.is_o2()) {
        static thread_local uint64_t key = 0;
        static thread_local RhoSeriesO2* series = nullptr;
        if (!series || key != p.hash()) {
            delete series;
            series = new RhoSeriesO2(p);
            key = p.hash();
        }
        return series->eval(u);
    }
    static thread_local uint64_t key = 0;
    static thread_local RhoSeriesN* series = nullptr;
    if (!series || key != p.hash()) {
        delete series;
        CPlus cp(p);
        series = new RhoSeriesN(p, cp);
        key = p.hash();
    }
    return series->eval(u);
}

}  // namespace loopgas
