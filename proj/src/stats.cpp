#include "loopgas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loopgas/errors.hpp"

namespace loopgas {

double EmpiricalLaw::effective_n() const {
    if (!weighted()) return static_cast<double>(samples.size());
    double sw = 0.0, sw2 = 0.0;
    for (double w : weights) {
        sw += w;
        sw2 += w * w;
    }
    return sw * sw / sw2;
}

double EmpiricalLaw::mean() const {
    if (samples.empty()) throw InsufficientData("mean of empty law");
    if (!weighted())
        return std::accumulate(samples.begin(), samples.end(), 0.0) /
               static_cast<double>(samples.size());
    double sw = 0.0, sx = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        sw += weights[i];
        sx += weights[i] * samples[i];
    }
    return sx / sw;
}

double EmpiricalLaw::stderr_mean() const {
    double m = mean();
    if (!weighted()) {
        double v = 0.0;
        for (double x : samples) v += (x - m) * (x - m);
        v /= static_cast<double>(samples.size() - 1);
        return std::sqrt(v / static_cast<double>(samples.size()));
    }
    // ratio-estimator linearization
    double sw = 0.0;
    for (double w : weights) sw += w;
    double acc = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        double d = weights[i] * (samples[i] - m);
        acc += d * d;
    }
    return std::sqrt(acc) / sw;
}

double EmpiricalLaw::median() const {
    if (samples.empty()) throw InsufficientData("median of empty law");
    std::vector<size_t> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return samples[a] < samples[b]; });
    if (!weighted()) {
        size_t n = idx.size();
        return (n % 2) ? samples[idx[n / 2]]
                       : 0.5 * (samples[idx[n / 2 - 1]] + samples[idx[n / 2]]);
    }
    double sw = 0.0;
    for (double w : weights) sw += w;
    double acc = 0.0;
    for (size_t i : idx) {
        acc += weights[i];
        if (acc >= 0.5 * sw) return samples[i];
    }
    return samples[idx.back()];
}

double ks_statistic(const EmpiricalLaw& law, const std::function<double(double)>& cdf) {
    if (law.size() < 2) throw InsufficientData("ks_statistic: need samples");
    std::vector<size_t> idx(law.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return law.samples[a] < law.samples[b]; });
    double sw = 0.0;
    if (law.weighted())
        for (double w : law.weights) sw += w;
    double d = 0.0, acc = 0.0;
    const double n = static_cast<double>(law.size());
    for (size_t r = 0; r < idx.size(); ++r) {
        double before = law.weighted() ? acc / sw : static_cast<double>(r) / n;
        acc += law.weighted() ? law.weights[idx[r]] : 0.0;
        double after = law.weighted() ? acc / sw : static_cast<double>(r + 1) / n;
        double f = cdf(law.samples[idx[r]]);
        d = std::max({d, std::fabs(f - before), std::fabs(f - after)});
    }
    return d;
}

TwoSampleKs ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw InsufficientData("ks_two_sample: need samples");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / sa.size() -
                                  static_cast<double>(j) / sb.size()));
    }
    double ne = static_cast<double>(sa.size()) * sb.size() / (sa.size() + sb.size());
    return {d, ks_p_value(d, ne)};
}

double ks_p_value(double statistic, double n_eff) {
    double lam = (std::sqrt(n_eff) + 0.12 + 0.11 / std::sqrt(n_eff)) * statistic;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
        s += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

std::vector<LaplacePoint> empirical_laplace(const EmpiricalLaw& law,
                                            const std::vector<double>& q_grid, int batches) {
    if (law.size() < static_cast<size_t>(2 * batches))
        throw InsufficientData("empirical_laplace: too few samples for jackknife");
    std::vector<LaplacePoint> out;
    for (double q : q_grid) {
        // per-batch weighted means, jackknife over batches
        std::vector<double> bw(static_cast<size_t>(batches), 0.0),
            bx(static_cast<size_t>(batches), 0.0);
        for (size_t i = 0; i < law.size(); ++i) {
            size_t b = i % static_cast<size_t>(batches);
            double w = law.weighted() ? law.weights[i] : 1.0;
            bw[b] += w;
            bx[b] += w * std::exp(-q * law.samples[i]);
        }
        double tw = 0.0, tx = 0.0;
        for (int b = 0; b < batches; ++b) {
            tw += bw[static_cast<size_t>(b)];
            tx += bx[static_cast<size_t>(b)];
        }
        double full = tx / tw;
        double jsum = 0.0, jsq = 0.0;
        for (int b = 0; b < batches; ++b) {
            double v = (tx - bx[static_cast<size_t>(b)]) / (tw - bw[static_cast<size_t>(b)]);
            jsum += v;
            jsq += v * v;
        }
        double jm = jsum / batches;
        double var = (batches - 1.0) / batches * (jsq - batches * jm * jm);
        out.push_back({q, full, std::sqrt(std::max(var, 0.0))});
    }
    return out;
}

SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw InsufficientData("loglog_slope");
    double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - slope * x[i] - intercept;
        ss += r * r;
    }
    double se = std::sqrt(ss / (n - 2.0) * n / denom);
    return {slope, intercept, se};
}

HillFit hill_tail(const std::vector<double>& samples, size_t top_k) {
    if (samples.size() < top_k + 1 || top_k < 5) throw InsufficientData("hill_tail");
    std::vector<double> s = samples;
    std::sort(s.begin(), s.end(), std::greater<double>());
    double x_k = s[top_k];
    double acc = 0.0;
    for (size_t i = 0; i < top_k; ++i) acc += std::log(s[i] / x_k);
    double inv_index = acc / static_cast<double>(top_k);  // 1/alpha
    double alpha = 1.0 / inv_index;
    double se = alpha / std::sqrt(static_cast<double>(top_k));
    return {alpha, alpha - 1.96 * se, alpha + 1.96 * se};
}

}  // namespace loopgas
