#include "loopgas/cascade.hpp"

#include <algorithm>
#include <cmath>

#include "loopgas/errors.hpp"

namespace loopgas {

PerimeterCascade sample_cascade(const CriticalParams& params, const OffspringLaw& law,
                                int64_t p, const Frontier& frontier, ChildMode mode, Rng& rng,
                                const CascadeConfig& cfg) {
    PerimeterCascade out;
    out.root = p;
    out.mode = mode;
    out.generations.push_back({p});
    int64_t nodes = 1;
    ChildSet kids;
    for (int depth = 0;; ++depth) {
        if (frontier.max_depth && depth >= *frontier.max_depth) break;
        const auto& cur = out.generations[static_cast<size_t>(depth)];
        std::vector<int64_t> next;
        bool any_expanded = false;
        for (int64_t chi : cur) {
            if (frontier.freeze_below && chi < *frontier.freeze_below) {
                out.frontier_reached = true;
                continue;  // frozen node: not expanded
            }
            any_expanded = true;
            children(law, params, chi, mode, rng, kids, cfg.walk);
            out.expanded_gasket_vertices += kids.gasket_vertices;
            out.cap_hits += kids.cap_hits;
            next.insert(next.end(), kids.half_perimeters.begin(), kids.half_perimeters.end());
            nodes += static_cast<int64_t>(kids.half_perimeters.size());
            if (nodes > cfg.node_cap) throw MemoryGuard("sample_cascade: node cap exceeded");
        }
        if (!any_expanded || next.empty()) {
            if (!next.empty()) out.generations.push_back(std::move(next));
            break;
        }
        std::sort(next.begin(), next.end(), std::greater<int64_t>());
        out.generations.push_back(std::move(next));
    }
    return out;
}

VolumeSample sample_volume(const CriticalParams& params, const OffspringLaw& law, int64_t p,
                           ChildMode mode, uint64_t seed, const CascadeConfig& cfg) {
    if (mode == ChildMode::pointed_raw)
        throw ConfigError("sample_volume: pointed_raw has no per-replica volume weighting; "
                          "use nonpointed_exact or nonpointed_capped");
    VolumeSample out;
    out.p = p;
    out.seed = seed;
    // stack of (perimeter, node seed); children get mix(parent_seed, index)
    std::vector<std::pair<int64_t, uint64_t>> stack;
    stack.emplace_back(p, mix64(seed, 0x9d2c5680));
    ChildSet kids;
    while (!stack.empty()) {
        auto [chi, node_seed] = stack.back();
        stack.pop_back();
        Rng rng = Rng::stream(node_seed, 1);
        children(law, params, chi, mode, rng, kids, cfg.walk);
        out.V += kids.gasket_vertices;
        out.cap_hits += kids.cap_hits;
        ++out.nodes;
        if (out.V > cfg.vertex_cap) throw MemoryGuard("sample_volume: vertex cap exceeded");
        if (static_cast<int64_t>(stack.size()) +
                static_cast<int64_t>(kids.half_perimeters.size()) > cfg.node_cap)
            throw MemoryGuard("sample_volume: node cap exceeded");
        for (size_t i = 0; i < kids.half_perimeters.size(); ++i) {
            stack.emplace_back(kids.half_perimeters[i],
                               mix64(node_seed, static_cast<uint64_t>(i + 1)));
        }
    }
    return out;
}

DiscreteMartingales discrete_martingales(const PerimeterCascade& c,
                                         const CriticalParams& params, int l) {
    if (l < 0 || static_cast<size_t>(l) >= c.generations.size())
        throw ConfigError("discrete_martingales: cascade has no generation " + std::to_string(l));
    DiscreteMartingales m;
    const double p = static_cast<double>(c.root);
    for (int64_t chi : c.generations[static_cast<size_t>(l)]) {
        double z = static_cast<double>(chi) / p;
        m.W += std::pow(z, params.theta_alpha);
        m.D += -2.0 * z * z * std::log(z);
    }
    return m;
}

int64_t gasket_volume(const CriticalParams& params, const OffspringLaw& law, int64_t p,
                      int64_t M, ChildMode mode, uint64_t seed, const CascadeConfig& cfg) {
    // expand nodes with chi >= M; frozen nodes contribute nothing.
    // M > p is out of contract; by convention the frontier never forms and the
    // whole map counts as gasket (full-volume ratio downstream).
    if (p < M) return sample_volume(params, law, p, mode, seed, cfg).V;
    int64_t vol = 0;
    std::vector<std::pair<int64_t, uint64_t>> stack;
    stack.emplace_back(p, mix64(seed, 0x9d2c5680));
    ChildSet kids;
    int64_t nodes = 0;
    while (!stack.empty()) {
        auto [chi, node_seed] = stack.back();
        stack.pop_back();
        Rng rng = Rng::stream(node_seed, 1);
        children(law, params, chi, mode, rng, kids, cfg.walk);
        vol += kids.gasket_vertices;
        ++nodes;
        if (vol > cfg.vertex_cap) throw MemoryGuard("gasket_volume: vertex cap exceeded");
        for (size_t i = 0; i < kids.half_perimeters.size(); ++i) {
            if (kids.half_perimeters[i] >= M)
                stack.emplace_back(kids.half_perimeters[i],
                                   mix64(node_seed, static_cast<uint64_t>(i + 1)));
        }
        if (nodes > cfg.node_cap) throw MemoryGuard("gasket_volume: node cap exceeded");
    }
    return vol;
}

}  // namespace loopgas
