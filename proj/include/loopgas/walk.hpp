#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "loopgas/partition.hpp"
#include "loopgas/rng.hpp"

namespace loopgas {

enum class ChildMode { pointed_raw, nonpointed_capped, nonpointed_exact };

std::string to_string(ChildMode m);

struct WalkConfig {
    int64_t runaway_cap = 1000000000;  // hard step cap per excursion
    double kappa = 0.05;               // capped-mode acceptance constant
    bool degree4_thinning = true;
};

// One left-continuous walk run to -p. steps kept only on request.
struct WalkExcursion {
    int64_t p = 0;
    int64_t T = 0;       // T_p: first hitting time of -p
    int64_t L = 0;       // L_p: number of -1 steps
    double weight = 0.0; // 1/(1+L), importance weight for non-pointed statistics
    std::vector<int64_t> steps;
};

// half-perimeters of the outermost loops (after degree-4 thinning) plus the
// gasket vertex count of the run that produced them
struct ChildSet {
    std::vector<int64_t> half_perimeters;
    int64_t gasket_vertices = 0;  // 1 + L
    int64_t cap_hits = 0;         // capped mode: accepted draws with 1+L < kappa f(p)
    int64_t attempts = 0;         // rejection attempts consumed
};

// f(p) = p^alpha (case A) or p^{3/2}/(ln p + 1) (case B)
double f_scale(const CriticalParams& p, double x);

// i.i.d. steps X = K-1, K ~ mu_JS, run until the walk hits -p.
// Throws RunawayGuard past cfg.runaway_cap.
WalkExcursion sample_excursion(const OffspringLaw& law, int64_t p, Rng& rng,
                               const WalkConfig& cfg = {}, bool keep_steps = false);

// outermost-loop generator; appends into `out` (cleared first)
void children(const OffspringLaw& law, const CriticalParams& params, int64_t p,
              ChildMode mode, Rng& rng, ChildSet& out, const WalkConfig& cfg = {});

// degree-4 thinning probability a = g / ghat_2
double thinning_probability(const CriticalParams& params, const PartitionTable& table);

struct KempermanResult {
    double lhs = 0.0, lhs_stderr = 0.0, rhs = 0.0;
    int64_t n_used = 0, guard_trips = 0;
};

// Monte Carlo E[(T_p-1)^{-1} sum f(X_i)] against the exact single-step
// expectation E[p/(p+X_1) f(X_1)]
KempermanResult kemperman_check(const OffspringLaw& law, int64_t p,
                                const std::function<double(int64_t)>& f, int64_t N,
                                Rng& rng, const WalkConfig& cfg = {});

}  // namespace loopgas
