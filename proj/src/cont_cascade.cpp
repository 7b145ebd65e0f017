#include "loopgas/cont_cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loopgas/errors.hpp"

namespace loopgas {

namespace {
constexpr double kPi = std::numbers::pi;
}

double stable_increment(double alpha, double s, Rng& rng) {
    // Chambers-Mallows-Stuck for the totally skewed (beta = 1) stable law,
    // scaled so that E[exp(-q X)] = exp(q^alpha) at s = 1; then self-similar
    // scaling by s^{1/alpha}.
    const double tphi = std::tan(kPi * alpha / 2.0);
    const double B = std::atan(tphi) / alpha;
    const double S = std::pow(1.0 + tphi * tphi, 1.0 / (2.0 * alpha));
    const double V = kPi * (rng.uniform() - 0.5);
    const double W = rng.exponential();
    double x = S * std::sin(alpha * (V + B)) / std::pow(std::cos(V), 1.0 / alpha) *
               std::pow(std::cos(V - alpha * (V + B)) / W, (1.0 - alpha) / alpha);
    const double sigma = std::pow(std::fabs(std::cos(kPi * alpha / 2.0)), 1.0 / alpha);
    return std::pow(s, 1.0 / alpha) * sigma * x;
}

StableJumpSet sample_nu_alpha(const CriticalParams& params, const OffspringLaw& law,
                              NuMethod method, Rng& rng, const NuConfig& cfg) {
    StableJumpSet out;
    out.alpha = params.alpha;
    out.method = method;
    if (method == NuMethod::walk_limit) {
        // one nonpointed_capped excursion; jump = (X+1)/P0 for X >= 1
        const int64_t p0 = cfg.P0;
        const double kf = std::max(cfg.walk.kappa * f_scale(params, static_cast<double>(p0)),
                                   1.0 + static_cast<double>(p0));
        const int64_t least = cfg.unit_jumps ? 1 : 2;
        const int64_t min_child =
            std::max<int64_t>(least, static_cast<int64_t>(std::ceil(cfg.min_jump * p0)));
        // pow table for the dropped-mass accounting
        static thread_local std::vector<double> pow_tab;
        static thread_local double pow_theta = -1.0;
        const double theta = cfg.theta_for_accounting;
        if (pow_theta != theta) {
            pow_tab.assign(4096, 0.0);
            for (size_t k = 1; k < pow_tab.size(); ++k)
                pow_tab[k] = std::pow(static_cast<double>(k), theta);
            pow_theta = theta;
        }
        const double p0_theta = std::pow(static_cast<double>(p0), theta);
        for (;;) {
            double u = rng.uniform();
            double l_abort = kf / u;
            out.jumps.clear();
            double dropped = 0.0;
            int64_t S = 0, L = 0, T = 0;
            bool ok = true;
            while (true) {
                int64_t K = law.sample(rng);
                ++T;
                S += K - 1;
                if (K == 0) {
                    ++L;
                    if (1.0 + static_cast<double>(L) > l_abort) {
                        ok = false;
                        break;
                    }
                    if (S == -p0) break;
                } else if (K >= min_child) {
                    out.jumps.push_back(static_cast<double>(K) / static_cast<double>(p0));
                } else if (K >= least) {
                    dropped += (K < static_cast<int64_t>(pow_tab.size()))
                                   ? pow_tab[static_cast<size_t>(K)]
                                   : std::pow(static_cast<double>(K), theta);
                }
                if (T >= cfg.walk.runaway_cap)
                    throw RunawayGuard("sample_nu_alpha: walk cap reached");
            }
            if (ok) {
                out.tau_est = static_cast<double>(T) / f_scale(params, static_cast<double>(p0));
                out.weight = 1.0;
                out.dropped_theta_mass = dropped / p0_theta;
                break;
            }
        }
    } else {
        // grid simulation of zeta until it crosses -1
        double z = 0.0, t = 0.0;
        out.jumps.clear();
        const int64_t max_steps = 100000000;
        int64_t steps = 0;
        while (z > -1.0) {
            double inc = stable_increment(params.alpha, cfg.dt, rng);
            if (inc > cfg.eps && inc >= cfg.min_jump) out.jumps.push_back(inc);
            z += inc;
            t += cfg.dt;
            if (++steps > max_steps) throw RunawayGuard("sample_nu_alpha: grid cap reached");
        }
        out.tau_est = t;
        out.weight = 1.0 / t;  // self-normalize across a batch
    }
    std::sort(out.jumps.begin(), out.jumps.end(), std::greater<double>());
    return out;
}

ContCascadeRun grow_cascade(const CriticalParams& params, const OffspringLaw& law, int l_max,
                            Rng& rng, const ContCascadeConfig& cfg) {
    ContCascadeRun run;
    const double theta = params.theta_alpha;
    std::vector<double> cur{1.0};
    run.W.push_back(1.0);
    run.D.push_back(0.0);
    run.truncated_mass.push_back(0.0);
    run.nodes.push_back(1);
    NuConfig nu = cfg.nu;
    nu.unit_jumps = true;  // the 1/P0-resolution children carry real theta-mass
    nu.theta_for_accounting = theta;
    int64_t total_nodes = 1;
    for (int l = 1; l <= l_max && !cur.empty(); ++l) {
        std::vector<double> next;
        double W = 0.0, D = 0.0, trunc = 0.0;
        for (double z : cur) {
            nu.min_jump = cfg.child_floor / z;
            StableJumpSet js = sample_nu_alpha(params, law, NuMethod::walk_limit, rng, nu);
            trunc += std::pow(z, theta) * js.dropped_theta_mass;
            for (double j : js.jumps) {
                double zc = z * j;
                if (zc < cfg.child_floor) {
                    trunc += std::pow(zc, theta);
                    continue;
                }
                next.push_back(zc);
                W += std::pow(zc, theta);
                D += -2.0 * zc * zc * std::log(zc);
            }
        }
        total_nodes += static_cast<int64_t>(next.size());
        if (total_nodes > cfg.node_cap) throw MemoryGuard("grow_cascade: node cap exceeded");
        run.W.push_back(W);
        run.D.push_back(D);
        run.truncated_mass.push_back(trunc);
        run.nodes.push_back(next.size());
        cur = std::move(next);
    }
    while (static_cast<int>(run.W.size()) <= l_max) {
        run.W.push_back(0.0);
        run.D.push_back(0.0);
        run.truncated_mass.push_back(0.0);
        run.nodes.push_back(0);
    }
    return run;
}

}  // namespace loopgas
