#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "loopgas/walk.hpp"

namespace loopgas {

// binned one-step kernel estimate of the chain at a representative state:
// ratio bins for S1/q plus the atom at 0
struct KernelTable {
    int64_t q_rep = 0;
    std::vector<double> bin_lo;    // ratio bin lower edges (log-spaced), sorted
    std::vector<double> mass;      // per-bin mass (normalized, excludes atom0)
    std::vector<double> cum;       // cumulative mass including atom0 first
    double atom0 = 0.0;            // absorption probability
    double ess = 0.0;              // effective sample size of the weighted draws
    int64_t n_draws = 0;
    double clipped = 0.0;          // mass clipped when bins overflow the estimate

    double cdf_ratio(double x) const;   // P(S1/q <= x) including the atom at 0
    double quantile_ratio(double u) const;  // inverse of cdf_ratio (0 for the atom)
};

struct SpineConfig {
    int64_t n_tab = 4000;       // pointed draws per kernel table
    int64_t dyadic_above = 1024;
    int bins = 4096;
    WalkConfig walk;
};

// build/fetch cached kernel tables; thread-safe
class KernelCache {
  public:
    KernelCache(const CriticalParams& params, const OffspringLaw& law,
                const PartitionTable& table, SpineConfig cfg = {});

    const KernelTable& at_state(int64_t q, Rng& rng);
    // direct access for tests / the kernel acceptance check
    KernelTable build_table(int64_t q, int64_t n_tab, Rng& rng) const;

    const SpineConfig& config() const { return cfg_; }
    const CriticalParams& params() const { return params_; }
    const PartitionTable& table() const { return table_; }

  private:
    int64_t rep_state(int64_t q) const;
    CriticalParams params_;
    const OffspringLaw& law_;
    const PartitionTable& table_;
    SpineConfig cfg_;
    std::mutex mu_;
    std::map<int64_t, std::unique_ptr<KernelTable>> cache_;
};

struct SpinePath {
    std::vector<int64_t> states;  // S_0 = p, ..., absorbed at 0
    bool absorbed = false;
    int64_t clip_events = 0;
};

// one step of the chain from q using the tabulated kernel
int64_t spine_step(KernelCache& cache, int64_t q, Rng& rng);

// SIR alternative: resample one (vector, child) pair by expected volume
int64_t spine_step_sir(const CriticalParams& params, const OffspringLaw& law,
                       const PartitionTable& table, int64_t q, int64_t n_cand, Rng& rng,
                       int64_t* clip_count = nullptr, const WalkConfig& cfg = {});

// run the chain until absorption, a step limit, or S > upper (if set)
SpinePath spine_run(KernelCache& cache, int64_t p, int64_t max_steps, Rng& rng,
                    int64_t stop_below = 1, int64_t stop_above = 0);

// ---- n=2 closed-form marginal and the multiplicative walk ----

// quantile of xi (n=2): tan^2(pi u / 2)
double xi_quantile(double u);
// CDF of xi (n=2): (2/pi) arctan sqrt(x)
double xi_cdf(double x);

// Y_k = x0 prod xi_i
std::vector<double> y_walk(double x0, int steps, Rng& rng);

// ---- renewal function and hitting ----

struct RenewalEstimate {
    std::vector<double> x_grid;
    std::vector<double> R;      // R(x) on the grid
    double c0 = 0.0;            // slope fit of R(x)/x on the plateau
    int64_t guard_trips = 0;
};

RenewalEstimate renewal_function(const std::vector<double>& x_grid, int64_t n_paths, Rng& rng,
                                 int64_t step_cap = 50000000);

struct HittingEstimate {
    double p = 0, prob = 0, prob_stderr = 0, lnp_scaled = 0;
};

// P_p(T_M < T^+_{bp}) for the tabulated-kernel chain
HittingEstimate hitting_probability(KernelCache& cache, int64_t p, int64_t M, double b,
                                    int64_t n_runs, Rng& rng);

// ---- coupling of S and Y through common uniforms ----

struct CouplingResult {
    double max_ratio = 1.0;  // sup_k max(S_k/Y_k, Y_k/S_k) up to sigma_M
    bool success = false;    // stayed <= a
    int64_t steps = 0;
};

CouplingResult coupling_run(KernelCache& cache, int64_t p, int64_t M, double a, Rng& rng,
                            int64_t step_cap = 2000000);

// ---- Green function / occupation ----

// expected visit counts per band [e^t, e^{t+1}); n<2: unstopped (until
// absorption); n=2: stopped at T_M ^ T_B+
std::vector<double> green_occupation(KernelCache& cache, int64_t p, int64_t M, int64_t B,
                                     const std::vector<int>& t_bands, int64_t n_runs, Rng& rng,
                                     int64_t step_cap = 100000);

}  // namespace loopgas
