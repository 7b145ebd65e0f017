// Acceptance suite: runs every shipped verification experiment at its stated
// tolerance and prints one pass/fail line per criterion. Exit code 0 iff all
// pass. `--only N` restricts to one criterion; `--threads T` overrides the
// worker count.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "loopgas/cascade.hpp"
#include "loopgas/cont_cascade.hpp"
#include "loopgas/errors.hpp"
#include "loopgas/io.hpp"
#include "loopgas/limitlaws.hpp"
#include "loopgas/special.hpp"
#include "loopgas/spine.hpp"
#include "loopgas/stats.hpp"
#include "loopgas/walk.hpp"

using namespace loopgas;

namespace {

int g_threads = 2;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

const double kPi2 = M_PI * M_PI;

struct ModelBundle {
    CriticalParams params;
    PartitionTable table;
    OffspringLaw law;
};

ModelBundle make_bundle(const CriticalParams& p, int64_t kmax, FkMethod m) {
    ModelBundle b{p, fk_table(p, kmax, m), OffspringLaw()};
    b.law = OffspringLaw(b.params, b.table);
    return b;
}

ModelBundle& sqrt2_bundle() {
    static ModelBundle b = make_bundle(derive_params(std::sqrt(2.0), DiluteSel{}), 100000,
                                       FkMethod::rho_moments);
    return b;
}

ModelBundle& o2_boundary_bundle() {
    static ModelBundle b = make_bundle(derive_params(2.0, O2Sel{4.0 / (3.0 * kPi2)}), 200000,
                                       FkMethod::o2_closed_form);
    return b;
}

// ---- criterion 1: deterministic identities at three n=2 points ----
bool criterion1() {
    Check c;
    for (double h : {4.0 / (3.0 * kPi2), 1.7 / kPi2, 2.0 / kPi2}) {
        auto p = derive_params(2.0, O2Sel{h});
        auto t = fk_table(p, 100000, FkMethod::o2_closed_form);
        OffspringLaw law(p, t);
        char tag[64];
        std::snprintf(tag, sizeof(tag), "h=%.4f", h);
        c.require(std::fabs(nu_total_mass(p, t) - 1.0) <= 1e-8, std::string(tag) + " nu mass");
        auto cp = criticality_integral(p, t);
        c.require(std::fabs(cp.lhs - cp.rhs) <= 1e-7, std::string(tag) + " criticality");
        c.require(fixed_point_residual(p, t) <= 1e-6, std::string(tag) + " fixed point");
        c.require(std::fabs(law.mean() - 1.0) <= 1e-6, std::string(tag) + " mu mean");
        c.require(std::fabs(law.pmf(0) - 4.0 * h) <= 1e-12, std::string(tag) + " mu0");
        auto harm = harmonicity_check(p, t, 20);
        for (int l = 1; l <= 20; ++l)
            c.require(harm[(size_t)l - 1] <= 1e-5,
                      std::string(tag) + " harmonicity l=" + std::to_string(l));
        for (int64_t k = 3; k <= 50; ++k) {
            double lhs = t.vbar(k) * law.pmf(k);
            double rhs = h * central_binomial_4k(k) * 4.0;  // h C(2k,k) 4^{-k+1}
            c.require(std::fabs(lhs / rhs - 1.0) <= 1e-12,
                      std::string(tag) + " vbar*mu k=" + std::to_string(k));
        }
    }
    std::printf("[%s] criterion 1 (identities, n=2 x3 points)%s%s\n", c.ok ? "PASS" : "FAIL",
                c.ok ? "" : ": ", c.detail.c_str());
    return c.ok;
}

// ---- criterion 2: coefficient cross-validation ----
bool criterion2() {
    Check c;
    {
        auto p = derive_params(2.0, O2Sel{1.7 / kPi2});
        auto tm = fk_table(p, 55, FkMethod::rho_moments, false);
        auto ref = o2_sk_range(p, 50);
        for (int64_t k = 1; k <= 50; ++k) {
            double rel = std::fabs(tm.s[(size_t)k] / ref[(size_t)k] - 1.0);
            c.require(rel <= 1e-8, "o2 moments vs closed k=" + std::to_string(k) + " rel=" +
                                       std::to_string(rel));
        }
    }
    {
        const double h = 1.7 / kPi2;
        auto p2 = derive_params(2.0, O2Sel{h});
        auto pn = derive_params(2.0 - 1e-4, DenseSel{h});
        auto t2 = fk_table(p2, 25, FkMethod::o2_closed_form, false);
        auto tn = fk_table(pn, 25, FkMethod::rho_moments, false);
        for (int64_t k = 1; k <= 20; ++k) {
            double rel = std::fabs(tn.s[(size_t)k] / t2.s[(size_t)k] - 1.0);
            c.require(rel <= 1e-3, "n=2-1e-4 vs n=2 k=" + std::to_string(k));
        }
    }
    {
        auto& b = sqrt2_bundle();
        for (int64_t k = 1; k <= 50; ++k) {
            double cs = circle_series_sk(b.params, k);
            double rel = std::fabs(b.table.s[(size_t)k] / cs - 1.0);
            c.require(rel <= 1e-6, "sqrt2 moments vs circle k=" + std::to_string(k));
        }
    }
    std::printf("[%s] criterion 2 (coefficient cross-validation)%s%s\n", c.ok ? "PASS" : "FAIL",
                c.ok ? "" : ": ", c.detail.c_str());
    return c.ok;
}

// ---- criterion 3: exponents ----
bool criterion3() {
    Check c;
    for (int i = 1; i <= 20; ++i) {
        double a = 1.0 + i / 21.0;  // grid avoids 3/2
        c.require(std::fabs(theta_root(a) - std::min(2.0, 2.0 * a - 1.0)) <= 1e-10,
                  "theta_root alpha=" + std::to_string(a));
    }
    {
        // case A tail slope on k in [K/4, K]
        auto& b = sqrt2_bundle();
        std::vector<double> xs, ys;
        for (int64_t k = b.table.K_max / 4; k <= b.table.K_max; k += b.table.K_max / 200) {
            xs.push_back(std::log((double)k));
            ys.push_back(std::log(b.law.pmf(k)));
        }
        auto fit = loglog_slope(xs, ys);
        c.require(std::fabs(fit.slope + (b.params.alpha + 1.0)) <= 0.05,
                  "caseA mu slope=" + std::to_string(fit.slope));
    }
    {
        // case B: mu(k) k^{5/2}/ln k within factor 1.5 of a constant
        auto p = derive_params(2.0, O2Sel{1.7 / kPi2});
        auto t = fk_table(p, 100000, FkMethod::o2_closed_form, false);
        OffspringLaw law(p, t);
        double lo = 1e300, hi = 0.0;
        for (int64_t k = t.K_max / 4; k <= t.K_max; k += t.K_max / 200) {
            double v = law.pmf(k) * std::pow((double)k, 2.5) / std::log((double)k);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        c.require(hi / lo <= 1.5, "caseB ratio=" + std::to_string(hi / lo));
    }
    std::printf("[%s] criterion 3 (exponents)%s%s\n", c.ok ? "PASS" : "FAIL", c.ok ? "" : ": ",
                c.detail.c_str());
    return c.ok;
}

// ---- criterion 4: walk layer ----
bool criterion4() {
    Check c;
    auto& b = sqrt2_bundle();
    struct F {
        const char* name;
        std::function<double(int64_t)> f;
    };
    std::vector<F> fs{{"1{x=-1}", [](int64_t x) { return x == -1 ? 1.0 : 0.0; }},
                      {"1{x+1>=10}", [](int64_t x) { return x + 1 >= 10 ? 1.0 : 0.0; }},
                      {"1", [](int64_t) { return 1.0; }}};
    for (int64_t p : {10, 100}) {
        for (auto& f : fs) {
            const int64_t N = 100000;
            std::vector<KempermanResult> parts((size_t)g_threads);
            parallel_replicas(g_threads, 411 + (uint64_t)p, g_threads, [&](int64_t i, Rng& rng) {
                parts[(size_t)i] = kemperman_check(b.law, p, f.f, N / g_threads, rng);
            });
            double lhs = 0.0, var = 0.0, rhs = parts[0].rhs;
            int64_t used = 0;
            for (auto& pr : parts) {
                lhs += pr.lhs * (double)pr.n_used;
                var += pr.lhs_stderr * pr.lhs_stderr * (double)pr.n_used * (double)pr.n_used;
                used += pr.n_used;
            }
            lhs /= (double)used;
            double se = std::sqrt(var) / (double)used;
            c.require(std::fabs(lhs - rhs) <= 3.0 * se + 1e-6,
                      std::string("kemperman ") + f.name + " p=" + std::to_string(p) + " lhs=" +
                          std::to_string(lhs) + " rhs=" + std::to_string(rhs) + " se=" +
                          std::to_string(se));
        }
    }
    {
        // P(T_1 > k) slope (case A): N = 1e6 excursions
        const int64_t N = 1000000;
        WalkConfig cfg;
        cfg.runaway_cap = 100000000;
        std::vector<std::vector<int64_t>> parts((size_t)g_threads);
        std::vector<int64_t> trips((size_t)g_threads, 0);
        parallel_replicas(g_threads, 417, g_threads, [&](int64_t i, Rng& rng) {
            auto& t1 = parts[(size_t)i];
            t1.reserve((size_t)(N / g_threads));
            for (int64_t r = 0; r < N / g_threads; ++r) {
                try {
                    t1.push_back(sample_excursion(b.law, 1, rng, cfg).T);
                } catch (const RunawayGuard&) {
                    ++trips[(size_t)i];
                }
            }
        });
        std::vector<int64_t> T1;
        int64_t total_trips = 0;
        for (auto& pr : parts) T1.insert(T1.end(), pr.begin(), pr.end());
        for (auto tr : trips) total_trips += tr;
        std::sort(T1.begin(), T1.end());
        std::vector<double> xs, ys;
        for (double k = 100.0; k <= 100000.0; k *= 1.6) {
            auto it = std::upper_bound(T1.begin(), T1.end(), (int64_t)k);
            double ccdf = (double)(T1.end() - it) / (double)T1.size();
            if (ccdf > 0.0) {
                xs.push_back(std::log(k));
                ys.push_back(std::log(ccdf));
            }
        }
        auto fit = loglog_slope(xs, ys);
        c.require(std::fabs(fit.slope + 1.0 / b.params.alpha) <= 0.05,
                  "T1 tail slope=" + std::to_string(fit.slope) + " guard_trips=" +
                      std::to_string(total_trips));
    }
    std::printf("[%s] criterion 4 (walk layer)%s%s\n", c.ok ? "PASS" : "FAIL", c.ok ? "" : ": ",
                c.detail.c_str());
    return c.ok;
}

// ---- criterion 5: volume mean validates vbar (n<2) ----
bool criterion5() {
    Check c;
    auto& b = sqrt2_bundle();
    for (int64_t p : {64, 256}) {
        const int64_t N = 10000;
        std::vector<double> vols((size_t)N);
        parallel_replicas(N, 510 + (uint64_t)p, g_threads, [&](int64_t i, Rng&) {
            vols[(size_t)i] =
                (double)sample_volume(b.params, b.law, p, ChildMode::nonpointed_exact,
                                      mix64(510 + (uint64_t)p, (uint64_t)i))
                    .V;
        });
        EmpiricalLaw law;
        law.samples = std::move(vols);
        double ratio = law.mean() / b.table.vbar(p);
        double se = law.stderr_mean() / b.table.vbar(p);
        c.require(std::fabs(ratio - 1.0) <= 3.0 * se,
                  "p=" + std::to_string(p) + " ratio=" + std::to_string(ratio) + " se=" +
                      std::to_string(se));
        c.require(std::fabs(ratio - 1.0) <= 0.05, "p=" + std::to_string(p) + " |ratio-1|>0.05");
    }
    std::printf("[%s] criterion 5 (volume mean vs vbar)%s%s\n", c.ok ? "PASS" : "FAIL",
                c.ok ? "" : ": ", c.detail.c_str());
    return c.ok;
}

// ---- criterion 6: flagship dilute limit ----
bool criterion6() {
    Check c;
    auto& b = sqrt2_bundle();
    const double a = b.params.alpha;
    std::map<int64_t, EmpiricalLaw> laws;
    for (int64_t p : {128, 512}) {
        const int64_t N = 2000;
        std::vector<double> v((size_t)N);
        parallel_replicas(N, 611 + (uint64_t)p, g_threads, [&](int64_t i, Rng&) {
            v[(size_t)i] = (double)sample_volume(b.params, b.law, p,
                                                 ChildMode::nonpointed_capped,
                                                 mix64(611 + (uint64_t)p, (uint64_t)i))
                               .V /
                           b.table.vbar(p);
        });
        laws[p].samples = std::move(v);
    }
    auto cdf = [&](double x) { return inverse_gamma_cdf(a - 0.5, a - 1.5, x); };
    double ks128 = ks_statistic(laws[128], cdf);
    double ks512 = ks_statistic(laws[512], cdf);
    c.require(ks512 <= ks128 + 0.005,
              "KS nonincreasing: ks128=" + std::to_string(ks128) + " ks512=" +
                  std::to_string(ks512));
    c.require(ks512 <= 0.08, "ks512=" + std::to_string(ks512));
    auto target = dilute_volume_laplace(a);
    auto pts = empirical_laplace(laws[512], {0.5, 1.0, 2.0});
    for (auto& pt : pts) {
        c.require(std::fabs(pt.value - target(pt.q)) <= 3.0 * pt.stderr_v + 5e-4,
                  "laplace q=" + std::to_string(pt.q) + " emp=" + std::to_string(pt.value) +
                      " tgt=" + std::to_string(target(pt.q)) + " se=" +
                      std::to_string(pt.stderr_v));
    }
    std::printf("[%s] criterion 6 (dilute volume limit: ks128=%.4f ks512=%.4f)%s%s\n",
                c.ok ? "PASS" : "FAIL", ks128, ks512, c.ok ? "" : ": ", c.detail.c_str());
    return c.ok;
}

// ---- criterion 7: n=2 limit, property-based ----
bool criterion7() {
    Check c;
    auto& b = o2_boundary_bundle();
    std::map<int64_t, EmpiricalLaw> laws;
    for (int64_t p : {128, 512, 2048}) {
        const int64_t N = 2000;
        std::vector<double> v((size_t)N);
        parallel_replicas(N, 711 + (uint64_t)p, g_threads, [&](int64_t i, Rng&) {
            v[(size_t)i] = std::log((double)p) *
                           (double)sample_volume(b.params, b.law, p,
                                                 ChildMode::nonpointed_capped,
                                                 mix64(711 + (uint64_t)p, (uint64_t)i))
                               .V /
                           b.table.vbar(p);
        });
        laws[p].samples = std::move(v);
    }
    auto cdf = [](double x) { return inverse_exponential_cdf(x); };
    double k128 = ks_statistic(laws[128], cdf);
    double k512 = ks_statistic(laws[512], cdf);
    double k2048 = ks_statistic(laws[2048], cdf);
    c.require(k512 <= k128 + 0.005 && k2048 <= k512 + 0.005,
              "KS nonincreasing: " + std::to_string(k128) + "," + std::to_string(k512) + "," +
                  std::to_string(k2048));
    double med = laws[2048].median();
    double target_med = 1.0 / std::log(2.0);
    c.require(std::fabs(med / target_med - 1.0) <= 0.30,
              "median=" + std::to_string(med) + " target=" + std::to_string(target_med));
    // 7b: continuous-cascade surrogate at alpha = 3/2
    {
        const int N = 5000, lmax = 20;
        ContCascadeConfig cfg;
        cfg.nu.P0 = 512;
        cfg.child_floor = 2e-4;
        std::vector<double> inv_d((size_t)N, 0.0);
        parallel_replicas(N, 7175, g_threads, [&](int64_t i, Rng& rng) {
            auto run = grow_cascade(b.params, b.law, lmax, rng, cfg);
            double d = run.D[(size_t)lmax];
            inv_d[(size_t)i] = d > 0.0 ? 1.0 / d : 1e9;
        });
        EmpiricalLaw law;
        law.samples = std::move(inv_d);
        double ks = ks_statistic(law, [](double x) { return exponential_cdf(x); });
        c.require(ks <= 0.1, "1/D_20 vs Exp(1) ks=" + std::to_string(ks));
        note("criterion7b ks=" + std::to_string(ks));
    }
    std::printf("[%s] criterion 7 (n=2 limit: ks=%.3f,%.3f,%.3f med=%.3f)%s%s\n",
                c.ok ? "PASS" : "FAIL", k128, k512, k2048, laws[2048].median(),
                c.ok ? "" : ": ", c.detail.c_str());
    return c.ok;
}

// ---- criterion 8: spine layer ----
bool criterion8() {
    Check c;
    auto& b2 = o2_boundary_bundle();
    SpineConfig scfg;
    scfg.n_tab = 4000;
    KernelCache cache2(b2.params, b2.law, b2.table, scfg);
    {
        // kernel CDF vs arctan limit at p = 1e4
        Rng rng(811);
        auto t = cache2.build_table(10000, 20000, rng);
        double worst = 0.0;
        for (double x = 0.05; x <= 8.0; x *= 1.3)
            worst = std::max(worst, std::fabs(t.cdf_ratio(x) - xi_cdf(x)));
        c.require(worst <= 5.0 / std::sqrt(10000.0),
                  "kernel sup distance=" + std::to_string(worst));
    }
    {
        // many-to-one depth 1 and 2 at p = 600
        Rng rng(813);
        const int64_t p = 600;
        const int64_t n_chain = 20000, n_casc = 40000;
        int64_t h1 = 0, h2 = 0;
        for (int64_t i = 0; i < n_chain; ++i) {
            int64_t s1 = spine_step(cache2, p, rng);
            if (s1 >= p / 2) {
                ++h1;
                int64_t s2 = spine_step(cache2, s1, rng);
                if (s2 >= p / 4) ++h2;
            }
        }
        double chain1 = (double)h1 / n_chain, chain2 = (double)h2 / n_chain;
        double se1 = std::sqrt(chain1 * (1 - chain1) / n_chain);
        double se2 = std::sqrt(chain2 * (1 - chain2) / n_chain);
        // cascade side via pointed draws; depth-2 uses a nested pointed draw
        // whose 1/(1+L) weight is normalized by an independent estimate of
        // E[1/(1+L)] at the child state (ratio estimator)
        ChildSet kids, kids2;
        double num1 = 0.0, den = 0.0;
        double num2 = 0.0, den2 = 0.0;
        for (int64_t i = 0; i < n_casc; ++i) {
            children(b2.law, b2.params, p, ChildMode::pointed_raw, rng, kids);
            double w = 1.0 / (double)kids.gasket_vertices;
            den += w;
            for (int64_t c1 : kids.half_perimeters) {
                if (c1 < p / 2) continue;
                num1 += w * b2.table.vbar(c1);
                children(b2.law, b2.params, c1, ChildMode::pointed_raw, rng, kids2);
                double w2 = 1.0 / (double)kids2.gasket_vertices;
                den2 += w * b2.table.vbar(c1) * w2;
                double inner = 0.0;
                for (int64_t c2 : kids2.half_perimeters)
                    if (c2 >= p / 4) inner += b2.table.vbar(c2) / b2.table.vbar(c1);
                num2 += w * b2.table.vbar(c1) * w2 * inner;
            }
        }
        double casc1 = num1 / (den * b2.table.vbar(p));
        // depth-2: P(S1>=p/2, S2>=p/4) = E[ sum_{c1} (vbar(c1)/vbar(p))
        //   * E^{(c1)}[sum_{c2} vbar(c2)/vbar(c1) 1{..}] ]; the inner
        // expectation is itself a 1/(1+L)-weighted mean
        double casc2 = (num2 / den2) * casc1;
        c.require(std::fabs(chain1 - casc1) <= 3.0 * se1 + 0.01,
                  "many-to-one depth1 chain=" + std::to_string(chain1) + " casc=" +
                      std::to_string(casc1));
        c.require(std::fabs(chain2 - casc2) <= 3.0 * se2 + 0.02,
                  "many-to-one depth2 chain=" + std::to_string(chain2) + " casc=" +
                      std::to_string(casc2));
    }
    {
        // green occupation bounded across bands (case A: n = sqrt 2)
        auto& bA = sqrt2_bundle();
        SpineConfig sA;
        sA.n_tab = 2500;
        KernelCache cacheA(bA.params, bA.law, bA.table, sA);
        Rng rng(815);
        std::vector<int> bands{2, 3, 4, 5, 6, 7, 8};
        auto counts = green_occupation(cacheA, 10000, 0, 0, bands, 1500, rng, 20000);
        double mx = 0.0;
        for (double v : counts) mx = std::max(mx, v);
        c.require(mx <= 10.0, "green max band count=" + std::to_string(mx));
        note("green counts max=" + std::to_string(mx));
    }
    {
        // n=2 hitting product vs renewal target
        Rng rng(817);
        std::vector<double> grid;
        for (double x = 0.0; x <= 20.0; x += 0.5) grid.push_back(x);
        auto ren = renewal_function(grid, 30000, rng);
        double Rlnb = 0.0;
        const double bb = 4.0;
        for (size_t i = 0; i + 1 < grid.size(); ++i)
            if (grid[i] <= std::log(bb) && std::log(bb) < grid[i + 1])
                Rlnb = ren.R[i] + (ren.R[i + 1] - ren.R[i]) * (std::log(bb) - grid[i]) /
                                      (grid[i + 1] - grid[i]);
        double target = Rlnb / ren.c0;
        for (int64_t p : {1000, 10000}) {
            auto est = hitting_probability(cache2, p, 16, bb, 6000, rng);
            c.require(std::fabs(est.lnp_scaled / target - 1.0) <= 0.25,
                      "hitting p=" + std::to_string(p) + " lnp*P=" +
                          std::to_string(est.lnp_scaled) + " target=" + std::to_string(target));
        }
    }
    std::printf("[%s] criterion 8 (spine layer)%s%s\n", c.ok ? "PASS" : "FAIL", c.ok ? "" : ": ",
                c.detail.c_str());
    return c.ok;
}

// ---- criterion 9: gasket estimate exponent ----
bool criterion9() {
    Check c;
    auto& b = sqrt2_bundle();
    const int64_t p = 1024, N = 2000;
    std::vector<double> xs, ys;
    for (int64_t M : {4, 8, 16, 32}) {
        std::vector<double> fr((size_t)N);
        parallel_replicas(N, 911 + (uint64_t)M, g_threads, [&](int64_t i, Rng&) {
            fr[(size_t)i] = (double)gasket_volume(b.params, b.law, p, M,
                                                  ChildMode::nonpointed_capped,
                                                  mix64(911 + (uint64_t)M, (uint64_t)i)) /
                            b.table.vbar(p);
        });
        EmpiricalLaw law;
        law.samples = std::move(fr);
        xs.push_back(std::log((double)M));
        ys.push_back(std::log(law.mean()));
    }
    auto fit = loglog_slope(xs, ys);
    c.require(std::fabs(fit.slope + b.params.beta_alpha) <= 0.15,
              "gasket M-exponent=" + std::to_string(fit.slope) + " target=-" +
                  std::to_string(b.params.beta_alpha));
    std::printf("[%s] criterion 9 (gasket estimate: slope=%.3f target=-%.3f)%s%s\n",
                c.ok ? "PASS" : "FAIL", fit.slope, b.params.beta_alpha, c.ok ? "" : ": ",
                c.detail.c_str());
    return c.ok;
}

// ---- criterion 10: continuous-cascade martingale suite ----
bool criterion10() {
    Check c;
    struct Setup {
        double alpha;
        CriticalParams params;
        std::vector<double> thetas;
    };
    std::vector<Setup> setups;
    {
        double bb = 0.25;
        double n = 2.0 * std::cos(M_PI * bb);
        auto dil = derive_params(n, DiluteSel{});
        double hmax = 2.0 * bb * bb / (2.0 - n);
        setups.push_back({1.25, derive_params(n, DenseSel{std::sqrt(dil.h * hmax)}),
                          {1.5, 1.6, 1.75, 2.0, 2.1}});
    }
    setups.push_back({1.5, derive_params(2.0, O2Sel{4.0 / (3.0 * kPi2)}),
                      {1.8, 1.9, 2.0, 2.2, 2.4}});
    setups.push_back({1.75, derive_params(std::sqrt(2.0), DiluteSel{}),
                      {1.9, 2.0, 2.25, 2.5, 2.6}});
    for (auto& s : setups) {
        auto t = fk_table(s.params, 100000,
                          s.params.is_o2() ? FkMethod::o2_closed_form : FkMethod::rho_moments);
        OffspringLaw law(s.params, t);
        NuConfig cfg;
        cfg.P0 = 10000;
        const int64_t N = 4000;
        std::vector<std::vector<double>> sums(s.thetas.size());
        for (auto& v : sums) v.resize((size_t)N);
        std::vector<StableJumpSet> draws((size_t)N);
        parallel_replicas(N, 1011 + (uint64_t)(s.alpha * 100), g_threads,
                          [&](int64_t i, Rng& rng) {
                              draws[(size_t)i] = sample_nu_alpha(s.params, law,
                                                                 NuMethod::walk_limit, rng, cfg);
                          });
        for (size_t ti = 0; ti < s.thetas.size(); ++ti)
            for (size_t i = 0; i < (size_t)N; ++i) {
                double acc = 0.0;
                for (double j : draws[i].jumps) acc += std::pow(j, s.thetas[ti]);
                sums[ti][i] = acc;
            }
        for (size_t ti = 0; ti < s.thetas.size(); ++ti) {
            EmpiricalLaw el;
            el.samples = sums[ti];
            double target = phi_alpha(s.alpha, s.thetas[ti]);
            double se = el.stderr_mean();
            c.require(std::fabs(el.mean() - target) <= 3.0 * se + 0.01,
                      "biggins alpha=" + std::to_string(s.alpha) + " theta=" +
                          std::to_string(s.thetas[ti]) + " emp=" + std::to_string(el.mean()) +
                          " tgt=" + std::to_string(target) + " se=" + std::to_string(se));
        }
    }
    {
        // W mean constancy (alpha = 7/4, l <= 4) and W_12 vs inverse-Gamma
        auto& b = sqrt2_bundle();
        ContCascadeConfig cfg;
        cfg.nu.P0 = 3000;
        cfg.child_floor = 1e-4;
        const int N = 5000, lmax = 12;
        std::vector<std::vector<double>> W((size_t)N);
        parallel_replicas(N, 1017, g_threads, [&](int64_t i, Rng& rng) {
            W[(size_t)i] = grow_cascade(b.params, b.law, lmax, rng, cfg).W;
        });
        for (int l = 1; l <= 4; ++l) {
            EmpiricalLaw el;
            for (auto& w : W) el.samples.push_back(w[(size_t)l]);
            double se = el.stderr_mean();
            c.require(std::fabs(el.mean() - 1.0) <= 3.0 * se + 0.01,
                      "W mean l=" + std::to_string(l) + " mean=" + std::to_string(el.mean()) +
                          " se=" + std::to_string(se));
        }
        EmpiricalLaw w12;
        for (auto& w : W) w12.samples.push_back(w[(size_t)lmax]);
        double ks =
            ks_statistic(w12, [](double x) { return inverse_gamma_cdf(1.25, 0.25, x); });
        c.require(ks <= 0.05, "W12 vs InvGamma ks=" + std::to_string(ks));
        note("criterion10 W12 ks=" + std::to_string(ks));
    }
    std::printf("[%s] criterion 10 (continuous cascade)%s%s\n", c.ok ? "PASS" : "FAIL",
                c.ok ? "" : ": ", c.detail.c_str());
    return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
        if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) g_threads = std::atoi(argv[++i]);
    }
    using Fn = bool (*)();
    std::vector<std::pair<int, Fn>> crits{{1, criterion1}, {2, criterion2}, {3, criterion3},
                                          {4, criterion4}, {5, criterion5}, {6, criterion6},
                                          {7, criterion7}, {8, criterion8}, {9, criterion9},
                                          {10, criterion10}};
    bool all = true;
    for (auto& [id, fn] : crits) {
        if (only && id != only) continue;
        try {
            all = fn() && all;
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %d threw: %s\n", id, e.what());
            all = false;
        }
        std::fflush(stdout);
    }
    for (auto& n : g_notes) std::printf("note: %s\n", n.c_str());
    std::printf("%s\n", all ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES PRESENT");
    return all ? 0 : 1;
}
