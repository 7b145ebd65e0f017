#pragma once

#include <cstdint>
#include <vector>

#include "loopgas/walk.hpp"

namespace loopgas {

// one increment of the spectrally positive alpha-stable process with
// E[exp(-q zeta_s)] = exp(s q^alpha)  (c_alpha = 1 normalization)
double stable_increment(double alpha, double s, Rng& rng);

enum class NuMethod { walk_limit, stable_grid };

struct StableJumpSet {
    double alpha = 0.0;
    std::vector<double> jumps;  // descending
    double tau_est = 0.0;
    double weight = 1.0;  // ∝ 1/tau for stable_grid; 1 for walk_limit
    NuMethod method = NuMethod::walk_limit;
    double dropped_theta_mass = 0.0;  // sum of jump^theta over sub-threshold jumps
};

struct NuConfig {
    int64_t P0 = 100000;     // walk_limit internal perimeter
    double dt = 1e-4;        // stable_grid step
    double eps = 1e-4;       // stable_grid jump cutoff
    double min_jump = 0.0;   // collect only jumps >= min_jump (0: all resolvable)
    bool unit_jumps = false; // walk_limit: also keep X_i = 0 (half-perimeter 1) children
    double theta_for_accounting = 2.0;
    WalkConfig walk;
};

// one draw from nu_alpha (jumps of zeta before tau, 1/tau-biased).
// walk_limit: one nonpointed_capped excursion at perimeter P0, jumps
// (X_i+1)/P0 for X_i >= 1, no degree-4 thinning (the 1/(1+L) bias enacts the
// 1/tau bias). stable_grid: grid simulation of zeta to the first crossing of
// -1; weights ∝ 1/tau to be self-normalized per batch.
StableJumpSet sample_nu_alpha(const CriticalParams& params, const OffspringLaw& law,
                              NuMethod method, Rng& rng, const NuConfig& cfg = {});

// multiplicative cascade Z(ui) = Z(u) xi_i^(u); per-generation summaries
struct ContCascadeRun {
    std::vector<double> W;               // sum Z^theta_alpha per generation
    std::vector<double> D;               // -2 sum Z^2 ln Z per generation
    std::vector<double> truncated_mass;  // theta_alpha-mass of dropped children
    std::vector<size_t> nodes;           // particles per generation
};

struct ContCascadeConfig {
    double child_floor = 1e-5;  // drop children with Z < child_floor
    int64_t node_cap = 3000000;
    NuConfig nu;  // nu.P0 is the per-node walk resolution
};

ContCascadeRun grow_cascade(const CriticalParams& params, const OffspringLaw& law, int l_max,
                            Rng& rng, const ContCascadeConfig& cfg = {});

}  // namespace loopgas
