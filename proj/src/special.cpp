#include "loopgas/special.hpp"

#include <cmath>
#include <limits>

#include "loopgas/errors.hpp"

namespace loopgas {

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double central_binomial_4k(int64_t k) {
    if (k == 0) return 1.0;
    double lk = static_cast<double>(k);
    return std::exp(log_binomial(2.0 * lk, lk) - 2.0 * lk * std::log(2.0));
}

double h_up(int64_t k) { return 2.0 * static_cast<double>(k) * central_binomial_4k(k); }

namespace {

// series for P(a,x), x < a+1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int iter = 0; iter < 500; ++iter) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a,x), x >= a+1 (modified Lentz)
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double hh = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        hh *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * hh;
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw ConfigError("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw ConfigError("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double inverse_gamma_cdf(double shape, double scale, double x) {
    if (x <= 0.0) return 0.0;
    return gamma_q(shape, scale / x);
}

double inverse_exponential_cdf(double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(-1.0 / x);
}

double exponential_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

double power_log_tail_sum(double s, int j, double N) {
    if (s <= 1.0) throw ConfigError("power_log_tail_sum: needs s > 1");
    // sum k = N+1 .. N1 directly, then Euler-Maclaurin from N1
    auto f = [&](double x) {
        double lx = std::log(x);
        double w = (j == 0) ? 1.0 : (j == 1 ? lx : lx * lx);
        return std::pow(x, -s) * w;
    };
    double N1 = std::max(N, 1.0);
    double direct = 0.0;
    const double N_STOP = N + 200000.0;
    double k = std::floor(N) + 1.0;
    for (; k <= N_STOP; k += 1.0) direct += f(k);
    // Euler-Maclaurin from the last summed integer m:
    // sum_{k>m} f(k) = int_m^inf f - f(m)/2 - f'(m)/12 + O(f''')
    double m = k - 1.0;
    double lm = std::log(m);
    double integral;  // int_m^inf x^{-s} ln^j x dx
    double t = s - 1.0;
    double mp = std::pow(m, -t);
    if (j == 0) {
        integral = mp / t;
    } else if (j == 1) {
        integral = mp * (lm / t + 1.0 / (t * t));
    } else {
        integral = mp * (lm * lm / t + 2.0 * lm / (t * t) + 2.0 / (t * t * t));
    }
    // f'(x) = x^{-s-1} ln^{j-1} x (j - s ln x)
    double fp;
    if (j == 0) {
        fp = -s * std::pow(m, -s - 1.0);
    } else if (j == 1) {
        fp = std::pow(m, -s - 1.0) * (1.0 - s * lm);
    } else {
        fp = std::pow(m, -s - 1.0) * lm * (2.0 - s * lm);
    }
    return direct + integral - 0.5 * f(m) - fp / 12.0;
}

std::vector<double> odd_harmonic_table(int64_t M) {
    std::vector<double> c(static_cast<size_t>(M) + 1, 0.0);
    double acc = 0.0;
    for (int64_t m = 1; m <= M; ++m) {
        acc += 1.0 / static_cast<double>(2 * m - 1);
        c[static_cast<size_t>(m)] = 2.0 * acc;
    }
    return c;
}

}  // namespace loopgas
