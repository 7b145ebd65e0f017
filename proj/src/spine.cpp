#include "loopgas/spine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loopgas/errors.hpp"

namespace loopgas {

namespace {
constexpr double kPi = std::numbers::pi;
}

double KernelTable::cdf_ratio(double x) const {
    if (x < 0.0) return 0.0;
    double acc = atom0;
    for (size_t i = 0; i < bin_lo.size(); ++i) {
        double hi = (i + 1 < bin_lo.size()) ? bin_lo[i + 1] : bin_lo[i] * 1.01;
        if (x >= hi) {
            acc += mass[i];
        } else if (x > bin_lo[i]) {
            acc += mass[i] * (x - bin_lo[i]) / (hi - bin_lo[i]);
            break;
        } else {
            break;
        }
    }
    return std::min(acc, 1.0);
}

double KernelTable::quantile_ratio(double u) const {
    if (u <= atom0) return 0.0;
    // cum[i] = atom0 + mass[0..i]
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    size_t i = static_cast<size_t>(it - cum.begin());
    if (i >= bin_lo.size()) i = bin_lo.size() - 1;
    double lo_mass = (i == 0) ? atom0 : cum[i - 1];
    double frac = (u - lo_mass) / std::max(cum[i] - lo_mass, 1e-300);
    double hi = (i + 1 < bin_lo.size()) ? bin_lo[i + 1] : bin_lo[i] * 1.01;
    return bin_lo[i] + frac * (hi - bin_lo[i]);
}

KernelCache::KernelCache(const CriticalParams& params, const OffspringLaw& law,
                         const PartitionTable& table, SpineConfig cfg)
    : params_(params), law_(law), table_(table), cfg_(cfg) {}

int64_t KernelCache::rep_state(int64_t q) const {
    if (q <= cfg_.dyadic_above) return q;
    // above the asymptotic cutoff the one-step ratio law is state-independent
    // to O(1/sqrt(q)); one table serves all such states
    const int64_t asym = cfg_.dyadic_above * 16;
    if (q > asym) q = asym;
    int level = 0;
    int64_t v = q;
    while (v > cfg_.dyadic_above) {
        v >>= 1;
        ++level;
    }
    // geometric midpoint of the dyadic bin holding q
    double lo = static_cast<double>(cfg_.dyadic_above) * std::ldexp(1.0, level - 1) * 2.0;
    return static_cast<int64_t>(std::llround(lo * std::sqrt(2.0)));
}

KernelTable KernelCache::build_table(int64_t q, int64_t n_tab, Rng& rng) const {
    KernelTable t;
    t.q_rep = q;
    t.n_draws = n_tab;
    const int nb = cfg_.bins;
    const double lo_ratio = 0.5 / static_cast<double>(q);
    const double hi_ratio = 32.0;
    const double llo = std::log(lo_ratio), lhi = std::log(hi_ratio);
    t.bin_lo.resize(static_cast<size_t>(nb));
    for (int i = 0; i < nb; ++i)
        t.bin_lo[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / nb);
    std::vector<double> acc(static_cast<size_t>(nb), 0.0);
    double sw = 0.0, sw2 = 0.0, overflow = 0.0;
    ChildSet kids;
    const double vq = table_.vbar(q);
    for (int64_t d = 0; d < n_tab; ++d) {
        children(law_, params_, q, ChildMode::pointed_raw, rng, kids, cfg_.walk);
        double w = 1.0 / static_cast<double>(kids.gasket_vertices);  // 1/(1+L)
        sw += w;
        sw2 += w * w;
        for (int64_t c : kids.half_perimeters) {
            double ratio = static_cast<double>(c) / static_cast<double>(q);
            double vw = w * table_.vbar(c);
            if (ratio >= hi_ratio) {
                overflow += vw;
                continue;
            }
            int idx = static_cast<int>(std::floor((std::log(ratio) - llo) / (lhi - llo) * nb));
            idx = std::clamp(idx, 0, nb - 1);
            acc[static_cast<size_t>(idx)] += vw;
        }
    }
    t.ess = sw * sw / sw2;
    if (t.ess < 100.0)
        throw KernelDegenerate("kernel table at q=" + std::to_string(q) +
                               " has effective sample size " + std::to_string(t.ess));
    // P(S1 in bin) = E^{(q)}[sum 1{chi in bin} vbar(chi)] / vbar(q); pointed
    // draws are reweighted by 1/(1+L) and self-normalized
    double scale = 1.0 / (sw * vq);
    double total = 0.0;
    t.mass.resize(static_cast<size_t>(nb));
    for (int i = 0; i < nb; ++i) {
        t.mass[static_cast<size_t>(i)] = acc[static_cast<size_t>(i)] * scale;
        total += t.mass[static_cast<size_t>(i)];
    }
    t.clipped = overflow * scale;
    total += t.clipped;
    if (total > 1.0) {
        // MC noise pushed the survival mass above 1; renormalize and record
        for (auto& m : t.mass) m /= total;
        t.clipped += total - 1.0;
        total = 1.0;
    }
    t.atom0 = 1.0 - total;
    t.cum.resize(static_cast<size_t>(nb));
    double c = t.atom0;
    for (int i = 0; i < nb; ++i) {
        c += t.mass[static_cast<size_t>(i)];
        t.cum[static_cast<size_t>(i)] = c;
    }
    return t;
}

const KernelTable& KernelCache::at_state(int64_t q, Rng& rng) {
    int64_t rep = rep_state(q);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(rep);
        if (it != cache_.end()) return *it->second;
    }
    // build outside the lock; deterministic seed per (params, state).
    // n_tab shrinks with the state so per-table cost (~ n_tab f(q)) stays level
    Rng build_rng = Rng::stream(mix64(params_.hash(), 0x6b65726eULL), static_cast<uint64_t>(rep));
    (void)rng;
    int64_t n_tab = cfg_.n_tab;
    if (rep > 2048)
        n_tab = std::max<int64_t>(400, static_cast<int64_t>(
                                           cfg_.n_tab * std::pow(2048.0 / rep, 0.75)));
    auto t = std::make_unique<KernelTable>(build_table(rep, n_tab, build_rng));
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = cache_.emplace(rep, std::move(t));
    return *it->second;
}

int64_t spine_step(KernelCache& cache, int64_t q, Rng& rng) {
    if (q <= 0) return 0;
    const KernelTable& t = cache.at_state(q, rng);
    double u = rng.uniform();
    double ratio = t.quantile_ratio(u);
    if (ratio == 0.0) return 0;
    int64_t s = static_cast<int64_t>(std::llround(ratio * static_cast<double>(q)));
    return std::max<int64_t>(s, 1);
}

int64_t spine_step_sir(const CriticalParams& params, const OffspringLaw& law,
                       const PartitionTable& table, int64_t q, int64_t n_cand, Rng& rng,
                       int64_t* clip_count, const WalkConfig& cfg) {
    if (q <= 0) return 0;
    const double vq = table.vbar(q);
    std::vector<std::vector<int64_t>> vecs(static_cast<size_t>(n_cand));
    std::vector<double> wsum(static_cast<size_t>(n_cand) + 1, 0.0);
    ChildSet kids;
    double total = 0.0;
    for (int64_t i = 0; i < n_cand; ++i) {
        children(law, params, q, ChildMode::nonpointed_capped, rng, kids, cfg);
        double sv = 0.0;
        for (int64_t c : kids.half_perimeters) sv += table.vbar(c);
        double zero_slot = vq - sv;
        if (zero_slot < 0.0) {
            if (clip_count) ++(*clip_count);
            zero_slot = 0.0;
        }
        vecs[static_cast<size_t>(i)] = kids.half_perimeters;
        wsum[static_cast<size_t>(i)] = sv + zero_slot;
        total += sv + zero_slot;
    }
    double u = rng.uniform() * total;
    for (int64_t i = 0; i < n_cand; ++i) {
        if (u <= wsum[static_cast<size_t>(i)]) {
            // inside vector i: pick child by vbar, or the zero slot
            double sv = 0.0;
            for (int64_t c : vecs[static_cast<size_t>(i)]) sv += table.vbar(c);
            if (u >= sv) return 0;  // the zero slot
            double v = 0.0;
            for (int64_t c : vecs[static_cast<size_t>(i)]) {
                v += table.vbar(c);
                if (u <= v) return c;
            }
            return vecs[static_cast<size_t>(i)].back();
        }
        u -= wsum[static_cast<size_t>(i)];
    }
    return 0;
}

SpinePath spine_run(KernelCache& cache, int64_t p, int64_t max_steps, Rng& rng,
                    int64_t stop_below, int64_t stop_above) {
    SpinePath path;
    path.states.push_back(p);
    int64_t s = p;
    for (int64_t k = 0; k < max_steps; ++k) {
        if (s == 0 || s < stop_below || (stop_above > 0 && s > stop_above)) break;
        s = spine_step(cache, s, rng);
        path.states.push_back(s);
        if (s == 0) {
            path.absorbed = true;
            break;
        }
    }
    return path;
}

double xi_quantile(double u) {
    double t = std::tan(kPi * u / 2.0);
    return t * t;
}

double xi_cdf(double x) { return x <= 0.0 ? 0.0 : 2.0 / kPi * std::atan(std::sqrt(x)); }

std::vector<double> y_walk(double x0, int steps, Rng& rng) {
    std::vector<double> y(static_cast<size_t>(steps) + 1);
    y[0] = x0;
    for (int i = 1; i <= steps; ++i)
        y[static_cast<size_t>(i)] = y[static_cast<size_t>(i) - 1] * xi_quantile(rng.uniform());
    return y;
}

RenewalEstimate renewal_function(const std::vector<double>& x_grid, int64_t n_paths, Rng& rng,
                                 int64_t step_cap) {
    RenewalEstimate est;
    est.x_grid = x_grid;
    est.R.assign(x_grid.size(), 0.0);
    const double x_max = *std::max_element(x_grid.begin(), x_grid.end());
    for (int64_t path = 0; path < n_paths; ++path) {
        // strict ascending ladder heights of ln Y; height 0 is counted by the
        // +1 applied after the loop
        double lny = 0.0, running_max = 0.0;
        int64_t steps = 0;
        bool tripped = false;
        while (running_max <= x_max) {
            lny += std::log(xi_quantile(rng.uniform()));
            if (++steps > step_cap) {
                tripped = true;
                break;
            }
            if (lny > running_max) {
                running_max = lny;
                for (size_t i = 0; i < x_grid.size(); ++i)
                    if (running_max <= x_grid[i]) est.R[i] += 1.0;
            }
        }
        if (tripped) ++est.guard_trips;
    }
    for (auto& r : est.R) r = r / static_cast<double>(n_paths) + 1.0;  // +1: the 0th ladder point
    // c0 from the plateau of R(x)/x on the upper half of the grid
    double acc = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < x_grid.size(); ++i) {
        if (x_grid[i] >= 0.5 * x_max && x_grid[i] > 0.0) {
            acc += est.R[i] / x_grid[i];
            ++cnt;
        }
    }
    est.c0 = cnt ? acc / cnt : 0.0;
    return est;
}

HittingEstimate hitting_probability(KernelCache& cache, int64_t p, int64_t M, double b,
                                    int64_t n_runs, Rng& rng) {
    int64_t upper = static_cast<int64_t>(std::llround(b * static_cast<double>(p)));
    int64_t hits = 0;
    for (int64_t r = 0; r < n_runs; ++r) {
        int64_t s = p;
        for (int64_t k = 0; k < 100000; ++k) {
            if (s < M) {
                ++hits;
                break;
            }
            if (s > upper) break;
            s = spine_step(cache, s, rng);
        }
    }
    HittingEstimate est;
    est.p = static_cast<double>(p);
    est.prob = static_cast<double>(hits) / static_cast<double>(n_runs);
    est.prob_stderr = std::sqrt(est.prob * (1.0 - est.prob) / static_cast<double>(n_runs));
    est.lnp_scaled = std::log(static_cast<double>(p)) * est.prob;
    return est;
}

CouplingResult coupling_run(KernelCache& cache, int64_t p, int64_t M, double a, Rng& rng,
                            int64_t step_cap) {
    CouplingResult res;
    double y = static_cast<double>(p);
    int64_t s = p;
    res.max_ratio = 1.0;
    while (y >= static_cast<double>(M) && res.steps < step_cap) {
        double u = rng.uniform();
        y *= xi_quantile(u);
        if (s > 0) {
            const KernelTable& t = cache.at_state(s, rng);
            double ratio = t.quantile_ratio(u);
            s = (ratio == 0.0)
                    ? 0
                    : std::max<int64_t>(
                          static_cast<int64_t>(std::llround(ratio * static_cast<double>(s))), 1);
        }
        ++res.steps;
        if (s == 0) {
            res.max_ratio = 1e300;
            break;
        }
        double r1 = static_cast<double>(s) / y, r2 = y / static_cast<double>(s);
        res.max_ratio = std::max({res.max_ratio, r1, r2});
    }
    res.success = res.max_ratio <= a;
    return res;
}

std::vector<double> green_occupation(KernelCache& cache, int64_t p, int64_t M, int64_t B,
                                     const std::vector<int>& t_bands, int64_t n_runs, Rng& rng,
                                     int64_t step_cap) {
    std::vector<double> counts(t_bands.size(), 0.0);
    const bool stopped = cache.params().is_o2();
    for (int64_t r = 0; r < n_runs; ++r) {
        int64_t s = p;
        for (int64_t k = 0; k < step_cap; ++k) {
            if (s == 0) break;
            if (stopped && (s < M || s > B)) break;
            double ls = std::log(static_cast<double>(s));
            for (size_t i = 0; i < t_bands.size(); ++i) {
                if (ls >= t_bands[i] && ls < t_bands[i] + 1.0) counts[i] += 1.0;
            }
            s = spine_step(cache, s, rng);
        }
    }
    for (auto& c : counts) c /= static_cast<double>(n_runs);
    return counts;
}

}  // namespace loopgas
