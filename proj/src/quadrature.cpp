#include "loopgas/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "loopgas/errors.hpp"

namespace loopgas {

TanhSinhRule::TanhSinhRule(int level, double tmax) {
    // x(t) = tanh(pi/2 sinh t), dx = pi/2 cosh t / cosh^2(pi/2 sinh t)
    const double hstep = tmax / std::ldexp(1.0, level);
    const double half_pi = std::numbers::pi / 2.0;
    const long n_half = std::lround(tmax / hstep);
    for (long i = -n_half; i <= n_half; ++i) {
        double t = hstep * static_cast<double>(i);
        double st = std::sinh(t);
        double xx = std::tanh(half_pi * st);
        // 1 - |x| = 2 / (exp(2 pi/2 |sinh t|) + 1), no cancellation
        double e2 = std::exp(-2.0 * half_pi * std::fabs(st));
        double cm = 2.0 * e2 / (1.0 + e2);
        if (cm < 1e-36) continue;  // weight underflows anyway
        double ch = std::cosh(half_pi * st);
        double ww = hstep * half_pi * std::cosh(t) / (ch * ch);
        x.push_back(xx);
        w.push_back(ww);
        xc.push_back(cm);
    }
}

namespace {

// Kronrod-15 nodes/weights (positive half) and embedded Gauss-7 weights
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

void gk15(const std::function<double(double)>& f, double a, double b, double& res,
          double& err) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double fk = 0.0, fg = 0.0;
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - r * kXgk[i]);
        fv[14 - i] = f(c + r * kXgk[i]);
    }
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) fk += kWgk[i] * (fv[i] + fv[14 - i]);
    fk += kWgk[7] * fv[7];
    for (int i = 0; i < 3; ++i) fg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    fg += kWg[3] * fv[7];
    res = fk * r;
    err = std::fabs((fk - fg) * r);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double tol, int depth, int max_depth) {
    double res, err;
    gk15(f, a, b, res, err);
    if (err <= tol || depth >= max_depth) {
        if (depth >= max_depth && err > 16.0 * tol)
            throw QuadratureNonConvergence("adaptive_gk: depth limit, err=" +
                                           std::to_string(err));
        return res;
    }
    double m = 0.5 * (a + b);
    return adaptive_rec(f, a, m, tol * 0.5, depth + 1, max_depth) +
           adaptive_rec(f, m, b, tol * 0.5, depth + 1, max_depth);
}

}  // namespace

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int max_depth) {
    double res, err;
    gk15(f, a, b, res, err);
    double tol = std::max(abs_tol, rel_tol * std::fabs(res));
    if (err <= tol) return res;
    return adaptive_rec(f, a, b, tol, 0, max_depth);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    // Newton on Legendre polynomials, standard
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

}  // namespace loopgas
