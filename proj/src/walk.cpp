#include "loopgas/walk.hpp"

#include <cmath>

#include "loopgas/errors.hpp"

namespace loopgas {

std::string to_string(ChildMode m) {
    switch (m) {
        case ChildMode::pointed_raw: return "pointed_raw";
        case ChildMode::nonpointed_capped: return "nonpointed_capped";
        case ChildMode::nonpointed_exact: return "nonpointed_exact";
    }
    return "?";
}

double f_scale(const CriticalParams& p, double x) {
    if (p.case_tag == CaseTag::A) return std::pow(x, p.alpha);
    return std::pow(x, 1.5) / (std::log(x) + 1.0);
}

WalkExcursion sample_excursion(const OffspringLaw& law, int64_t p, Rng& rng,
                               const WalkConfig& cfg, bool keep_steps) {
    WalkExcursion ex;
    ex.p = p;
    int64_t S = 0, L = 0, T = 0;
    while (true) {
        int64_t K = law.sample(rng);
        ++T;
        S += K - 1;
        if (K == 0) {
            ++L;
            if (S == -p) break;
        }
        if (keep_steps) ex.steps.push_back(K - 1);
        if (T >= cfg.runaway_cap)
            throw RunawayGuard("sample_excursion: step cap " +
                               std::to_string(cfg.runaway_cap) + " reached at p=" +
                               std::to_string(p));
    }
    if (keep_steps) ex.steps.push_back(-1);  // the final step was recorded above except K==0 path
    ex.T = T;
    ex.L = L;
    ex.weight = 1.0 / (1.0 + static_cast<double>(L));
    return ex;
}

namespace {

// Runs one excursion, appending child half-perimeters (X_i + 1 for X_i >= 0).
// Aborts (returns false) as soon as 1 + L exceeds l_abort.
bool run_with_abort(const OffspringLaw& law, int64_t p, double l_abort, Rng& rng,
                    const WalkConfig& cfg, std::vector<int64_t>& kids, int64_t& L_out) {
    kids.clear();
    int64_t S = 0, L = 0, T = 0;
    while (true) {
        int64_t K = law.sample(rng);
        ++T;
        S += K - 1;
        if (K == 0) {
            ++L;
            if (1.0 + static_cast<double>(L) > l_abort) return false;
            if (S == -p) break;
        } else {
            kids.push_back(K);  // child half-perimeter = X + 1 = K
        }
        if (T >= cfg.runaway_cap)
            throw RunawayGuard("children: step cap reached at p=" + std::to_string(p));
    }
    L_out = L;
    return true;
}

}  // namespace

double thinning_probability(const CriticalParams& params, const PartitionTable& table) {
    double ghat2 = params.g + params.n * params.h * params.h * table.s[2];
    return params.g / ghat2;
}

void children(const OffspringLaw& law, const CriticalParams& params, int64_t p,
              ChildMode mode, Rng& rng, ChildSet& out, const WalkConfig& cfg) {
    out.half_perimeters.clear();
    out.cap_hits = 0;
    out.attempts = 0;
    int64_t L = 0;
    const double inf_abort = 1e300;
    switch (mode) {
        case ChildMode::pointed_raw: {
            out.attempts = 1;
            run_with_abort(law, p, inf_abort, rng, cfg, out.half_perimeters, L);
            break;
        }
        case ChildMode::nonpointed_exact: {
            // accept with prob (1+p)/(1+L); early abort once acceptance is impossible
            for (;;) {
                ++out.attempts;
                double u = rng.uniform();
                double l_abort = (1.0 + static_cast<double>(p)) / u;
                if (run_with_abort(law, p, l_abort, rng, cfg, out.half_perimeters, L)) break;
            }
            break;
        }
        case ChildMode::nonpointed_capped: {
            // envelope max(1+p, kappa f(p)): below the crossover perimeter this
            // is the exact rejection (1+L >= 1+p always), so the cap bias only
            // exists where kappa f(p) > 1+p, exactly the {1+L < kappa f(p)} events
            const double kf = cfg.kappa * f_scale(params, static_cast<double>(p));
            const double env = std::max(kf, 1.0 + static_cast<double>(p));
            for (;;) {
                ++out.attempts;
                double u = rng.uniform();
                double l_abort = env / u;  // accept iff u < env/(1+L)
                if (run_with_abort(law, p, l_abort, rng, cfg, out.half_perimeters, L)) {
                    if (1.0 + static_cast<double>(L) < kf) ++out.cap_hits;
                    break;
                }
            }
            break;
        }
    }
    out.gasket_vertices = 1 + L;
    // degree-4 thinning: entries equal to 2 survive with prob 1 - a
    if (cfg.degree4_thinning) {
        // a = g/ghat_2 computed from the law head: mu(2) relates to ghat_2, but the
        // direct expression keeps this independent of mu bookkeeping
        double ghat2_term = law.pmf(2);  // 3 ghat_2/(4h)
        double ghat2 = ghat2_term * 4.0 * params.h / 3.0;
        double a = params.g / ghat2;
        size_t keep = 0;
        for (size_t i = 0; i < out.half_perimeters.size(); ++i) {
            int64_t c = out.half_perimeters[i];
            if (c == 2 && rng.uniform() < a) continue;
            out.half_perimeters[keep++] = c;
        }
        out.half_perimeters.resize(keep);
    }
}

KempermanResult kemperman_check(const OffspringLaw& law, int64_t p,
                                const std::function<double(int64_t)>& f, int64_t N, Rng& rng,
                                const WalkConfig& cfg) {
    KempermanResult r;
    double acc = 0.0, acc2 = 0.0;
    for (int64_t i = 0; i < N; ++i) {
        int64_t S = 0, L = 0, T = 0;
        double fsum = 0.0;
        bool tripped = false;
        while (true) {
            int64_t K = law.sample(rng);
            ++T;
            S += K - 1;
            fsum += f(K - 1);
            if (K == 0) {
                ++L;
                if (S == -p) break;
            }
            if (T >= cfg.runaway_cap) {
                tripped = true;
                break;
            }
        }
        if (tripped) {
            ++r.guard_trips;
            continue;
        }
        double v = fsum / static_cast<double>(T - 1);
        acc += v;
        acc2 += v * v;
        ++r.n_used;
    }
    double n = static_cast<double>(r.n_used);
    r.lhs = acc / n;
    r.lhs_stderr = std::sqrt(std::max(acc2 / n - r.lhs * r.lhs, 0.0) / n);
    r.rhs = law.expect([&](int64_t k) {
        double x = static_cast<double>(k) - 1.0;
        return static_cast<double>(p) / (static_cast<double>(p) + x) * f(k - 1);
    });
    return r;
}

}  // namespace loopgas
