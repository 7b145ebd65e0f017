#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopgas/params.hpp"
#include "loopgas/rng.hpp"

namespace loopgas {

enum class FkMethod { o2_closed_form, rho_moments, circle_series };

std::string to_string(FkMethod m);

// Scaled partition-function coefficients s_k = F_k h^k, k = 0..K_max, plus
// cached spectral-density quadrature nodes used by every identity integral.
struct PartitionTable {
    CriticalParams params;
    int64_t K_max = 0;
    std::vector<double> s;      // s[k], k = 0..K_max
    double tail_constant = 0.0; // fitted C in s_k ~ C k^{-alpha-1/2} (ln k)^{caseB}
    FkMethod method = FkMethod::rho_moments;
    double cross_check_rel = 0.0;  // worst relative disagreement seen, k <= 50

    // tanh-sinh nodes on (0, gamma) with rho cached; qdu = gamma - u exactly
    std::vector<double> qu, qdu, qw, qrho;

    double sk(int64_t k) const;      // table value or tail extension
    double vbar(int64_t p) const;    // expected volume 1/s_p (tail-extended)
    // integral of rho(u) f(y, 1-y) over (-gamma, gamma), y = h u^2;
    // 1-y is handed to f free of cancellation so (1-y)^{-3/2}-type factors
    // stay accurate at the endpoint nodes
    template <typename F>
    double rho_integral(F&& f) const {
        double acc = 0.0;
        const double h = params.h, gam = params.gamma;
        for (size_t i = 0; i < qu.size(); ++i) {
            double omy = h * qdu[i] * (2.0 * gam - qdu[i]);
            acc += qw[i] * qrho[i] * f(1.0 - omy, omy);
        }
        return 2.0 * acc;
    }
};

// n=2 scaled coefficient from the explicit closed form; c2m = odd-harmonic
// prefix table (odd_harmonic_table), needs entries up to k+2.
double o2_sk(const CriticalParams& p, int64_t k, const std::vector<double>& c2m);

// convenience: whole range 0..K
std::vector<double> o2_sk_range(const CriticalParams& p, int64_t K);

PartitionTable fk_table(const CriticalParams& p, int64_t K_max,
                        FkMethod method = FkMethod::rho_moments,
                        bool cross_check = true);

// single coefficient via contour extraction on |xi| = gamma(1+delta);
// delta <= 0 selects a k-adapted radius
double circle_series_sk(const CriticalParams& p, int64_t k, int grid = 4096,
                        double delta = 0.0);

// ---- offspring law mu_JS ----

struct TailSpec {
    double A = 0.0;       // coefficient of k^{-(alpha+1)} (ln k)^j
    double B = 0.0;       // coefficient of k^{-(alpha+2)} (ln k)^j
    double exponent = 0.0;  // alpha + 1
    bool log_factor = false;
    int64_t kmin = 0;     // first tail index = K_max + 1
    double mass = 0.0;
    double mean = 0.0;
};

class OffspringLaw {
  public:
    OffspringLaw() = default;
    OffspringLaw(const CriticalParams& params, const PartitionTable& table);

    const CriticalParams& params() const { return params_; }
    int64_t k_max() const { return static_cast<int64_t>(head_.size()) - 1; }
    double pmf(int64_t k) const;   // head exact, tail analytic
    double head_mass() const { return head_mass_; }
    double tail_mass() const { return tail_.mass; }
    double mean() const { return mean_; }                  // head + matched tail
    double fit_mean_residual() const { return fit_mean_residual_; }  // pure-fit diagnostic
    const TailSpec& tail() const { return tail_; }

    // O(1) draw of K ~ mu_JS (walk step is K-1)
    int64_t sample(Rng& rng) const;

    // exact-head + analytic-tail expectation of f(k) (f bounded)
    template <typename F>
    double expect(F&& f, int64_t tail_terms = 2000000) const {
        double acc = 0.0;
        for (int64_t k = 0; k < static_cast<int64_t>(head_.size()); ++k)
            acc += head_[static_cast<size_t>(k)] * f(k);
        // tail by direct summation of the two-term model (far tail negligible)
        for (int64_t k = tail_.kmin; k < tail_.kmin + tail_terms; ++k) {
            double p = pmf(k);
            acc += p * f(k);
        }
        return acc;
    }

  private:
    CriticalParams params_;
    std::vector<double> head_;      // mu(0..K_max)
    double head_mass_ = 0.0;
    double mean_ = 0.0;
    double fit_mean_residual_ = 0.0;
    TailSpec tail_;
    // alias table over 0..K_max plus one tail slot
    std::vector<double> alias_prob_;
    std::vector<uint32_t> alias_idx_;
};

// ---- identity checks (all free of series truncation: they evaluate the
//      infinite sums through the spectral measure) ----

// criticality: n h^2 int rho u^2 (1-h u^2)^{-3/2} du  vs  1 - (3/2) g/h
struct CriticalityPair { double lhs, rhs; };
CriticalityPair criticality_integral(const CriticalParams& p, const PartitionTable& t);

// total mass of nu(.;n): should be 1
double nu_total_mass(const CriticalParams& p, const PartitionTable& t);

// fixed point: 1 + sum_k C(2k-1,k-1) ghat_k (4h)^{-k}  vs  1/(4h); returns |lhs-rhs|/rhs
double fixed_point_residual(const CriticalParams& p, const PartitionTable& t);

// harmonicity residuals |sum_k h_up(l+k) nu(k) - h_up(l)| / h_up(l), l = 1..l_max
std::vector<double> harmonicity_check(const CriticalParams& p, const PartitionTable& t,
                                      int l_max);

// fk cache file: '#' metadata line then "k,s_k" rows
void write_fk_csv(const std::string& path, const PartitionTable& t,
                  const std::string& manifest_json);
PartitionTable read_fk_csv(const std::string& path);

}  // namespace loopgas
