#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace loopgas {

// Sample container used by every comparison report. Weights optional
// (importance-weighted modes); normalized on demand.
struct EmpiricalLaw {
    std::vector<double> samples;
    std::vector<double> weights;  // empty = unweighted
    std::string source;
    uint64_t seed = 0;

    size_t size() const { return samples.size(); }
    bool weighted() const { return !weights.empty(); }
    double effective_n() const;  // (sum w)^2 / sum w^2
    double mean() const;
    double stderr_mean() const;
    double median() const;
};

// two-sided Kolmogorov-Smirnov statistic against a CDF callable;
// weighted variant uses the weighted empirical CDF
double ks_statistic(const EmpiricalLaw& law, const std::function<double(double)>& cdf);

// two-sample KS statistic and asymptotic p-value
struct TwoSampleKs { double statistic, p_value; };
TwoSampleKs ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

// critical value shorthand: P(D_n > c/sqrt(n)) ~ 2 sum (-1)^{k-1} e^{-2k^2c^2}
double ks_p_value(double statistic, double n_eff);

// empirical Laplace transform with jackknife-over-batches stderr
struct LaplacePoint { double q, value, stderr_v; };
std::vector<LaplacePoint> empirical_laplace(const EmpiricalLaw& law,
                                            const std::vector<double>& q_grid,
                                            int batches = 50);

// log-log least-squares slope of y against x (both already logged)
struct SlopeFit { double slope, intercept, stderr_slope; };
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Hill estimator of a right-tail index from the top k order statistics
struct HillFit { double tail_index, ci_low, ci_high; };
HillFit hill_tail(const std::vector<double>& samples, size_t top_k);

}  // namespace loopgas
