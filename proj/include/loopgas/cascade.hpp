#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "loopgas/walk.hpp"

namespace loopgas {

struct CascadeConfig {
    WalkConfig walk;
    int64_t vertex_cap = 200000000;  // per-replica total-vertex guard
    int64_t node_cap = 50000000;     // pending + expanded node guard
};

// frontier rule: expand while depth < max_depth and chi >= freeze_below
struct Frontier {
    std::optional<int> max_depth;
    std::optional<int64_t> freeze_below;
};

// perimeter cascade grown generation by generation; generations[l] holds the
// chi values at depth l, descending
struct PerimeterCascade {
    int64_t root = 0;
    ChildMode mode = ChildMode::nonpointed_capped;
    std::vector<std::vector<int64_t>> generations;
    int64_t expanded_gasket_vertices = 0;  // sum of (1+L) over expanded nodes
    int64_t cap_hits = 0;
    bool frontier_reached = false;
};

struct VolumeSample {
    int64_t p = 0;
    int64_t V = 0;       // total vertices
    double weight = 1.0;
    int64_t cap_hits = 0;
    int64_t nodes = 0;
    uint64_t seed = 0;
};

PerimeterCascade sample_cascade(const CriticalParams& params, const OffspringLaw& law,
                                int64_t p, const Frontier& frontier, ChildMode mode,
                                Rng& rng, const CascadeConfig& cfg = {});

// full recursion to exhaustion; V = sum over nodes of (1 + L).
// Child subtrees get deterministically split RNG streams, so V depends only
// on (law, p, seed), not on traversal order.
VolumeSample sample_volume(const CriticalParams& params, const OffspringLaw& law, int64_t p,
                           ChildMode mode, uint64_t seed, const CascadeConfig& cfg = {});

// additive and derivative martingales at generation l of a cascade
struct DiscreteMartingales { double W = 0.0, D = 0.0; };
DiscreteMartingales discrete_martingales(const PerimeterCascade& c, const CriticalParams& params,
                                         int l);

// freeze-below-M gasket volume |g_M| of one replica (sum of 1+L over nodes
// expanded before the stopping line)
int64_t gasket_volume(const CriticalParams& params, const OffspringLaw& law, int64_t p,
                      int64_t M, ChildMode mode, uint64_t seed, const CascadeConfig& cfg = {});

}  // namespace loopgas
