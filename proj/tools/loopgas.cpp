#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "loopgas/cascade.hpp"
#include "loopgas/cont_cascade.hpp"
#include "loopgas/errors.hpp"
#include "loopgas/io.hpp"
#include "loopgas/limitlaws.hpp"
#include "loopgas/spine.hpp"
#include "loopgas/stats.hpp"
#include "loopgas/walk.hpp"

using namespace loopgas;

namespace {

struct Common {
    std::string n_expr = "sqrt(2)";
    std::string regime = "dilute";  // dilute | dense | o2
    std::string h_expr;
    uint64_t seed = 1;
    int threads = 0;
    std::string out;
    int64_t kmax = 100000;
    std::string method = "auto";  // auto | rho_moments | o2_closed_form | circle_series
};

void add_common(CLI::App* cmd, Common& c, bool needs_params = true) {
    if (needs_params) {
        cmd->add_option("--n", c.n_expr, "loop weight n in (0,2], accepts expressions");
        cmd->add_option("--regime", c.regime, "dilute | dense | o2");
        cmd->add_option("--h", c.h_expr, "face weight h (dense/o2), accepts expressions");
        cmd->add_option("--kmax", c.kmax, "partition table size");
        cmd->add_option("--method", c.method,
                        "fk method: auto | rho_moments | o2_closed_form | circle_series");
    }
    cmd->add_option("--seed", c.seed, "master seed (64-bit)");
    cmd->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", c.out, "output file (default: stdout)");
}

CriticalParams make_params(const Common& c) {
    double n = parse_numeric(c.n_expr);
    if (c.regime == "dilute") return derive_params(n, DiluteSel{});
    if (c.regime == "dense") {
        if (c.h_expr.empty()) throw ConfigError("dense regime requires --h");
        return derive_params(n, DenseSel{parse_numeric(c.h_expr)});
    }
    if (c.regime == "o2") {
        if (c.h_expr.empty()) throw ConfigError("o2 regime requires --h");
        return derive_params(2.0, O2Sel{parse_numeric(c.h_expr)});
    }
    throw ConfigError("unknown regime '" + c.regime + "'");
}

FkMethod pick_method(const Common& c, const CriticalParams& p) {
    if (c.method == "rho_moments") return FkMethod::rho_moments;
    if (c.method == "o2_closed_form") return FkMethod::o2_closed_form;
    if (c.method == "circle_series") return FkMethod::circle_series;
    if (c.method == "auto") return p.is_o2() ? FkMethod::o2_closed_form : FkMethod::rho_moments;
    throw ConfigError("unknown fk method '" + c.method + "'");
}

int n_threads(const Common& c) { return c.threads > 0 ? c.threads : hardware_threads(); }

RunManifest manifest_for(const std::string& sub, const Common& c, const CriticalParams* p,
                         int64_t replicas, const std::string& flags) {
    RunManifest m;
    m.subcommand = sub;
    if (p) m.params_json = p->to_json();
    m.flags = flags;
    m.master_seed = c.seed;
    m.replicas = replicas;
    return m;
}

void emit(const Common& c, const RunManifest& m, const std::vector<std::string>& lines) {
    if (c.out.empty()) {
        std::cout << "# " << m.core_json() << "\n";
        for (const auto& l : lines) std::cout << l << "\n";
    } else {
        write_lines(c.out, m, lines);
        std::ofstream mf(c.out + ".manifest.json");
        mf << m.full_json() << "\n";
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct IdentityReport {
    std::vector<std::string> lines;
    bool pass = true;

    void row(const std::string& name, double value, double target, double tol) {
        double res = std::fabs(value - target);
        bool ok = res <= tol;
        pass = pass && ok;
        lines.push_back(name + "," + fmt(value) + "," + fmt(target) + "," + fmt(res) + "," +
                        (ok ? "pass" : "FAIL"));
    }
};

IdentityReport run_identities(const CriticalParams& p, const PartitionTable& t, int l_max) {
    IdentityReport rep;
    rep.lines.push_back("check,value,target,residual,status");
    OffspringLaw law(p, t);
    rep.row("nu_total_mass", nu_total_mass(p, t), 1.0, 1e-8);
    rep.row("fixed_point_residual", fixed_point_residual(p, t), 0.0, 1e-6);
    auto cp = criticality_integral(p, t);
    rep.row("criticality_integral", cp.lhs, cp.rhs, 1e-7);
    rep.row("mu_mean", law.mean(), 1.0, 1e-6);
    rep.row("mu0", law.pmf(0), 4.0 * p.h, 1e-12);
    auto harm = harmonicity_check(p, t, l_max);
    for (int l = 1; l <= l_max; ++l)
        rep.row("harmonicity_l" + std::to_string(l), harm[(size_t)l - 1], 0.0,
                l == 1 ? 1e-6 : 1e-5);
    rep.lines.push_back("fit_mean_residual," + fmt(law.fit_mean_residual()) + ",0,," +
                        (law.fit_mean_residual() < 1e-4 ? "pass" : "FAIL"));
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for non-generic critical rigid loop-O(n) quadrangulations"};
    app.require_subcommand(1);

    Common c;
    std::string flags_joined;
    for (int i = 1; i < argc; ++i) flags_joined += std::string(i > 1 ? " " : "") + argv[i];

    auto* cmd_params = app.add_subcommand("params", "derive and print the critical point");
    add_common(cmd_params, c);

    auto* cmd_fk = app.add_subcommand("fk", "partition-function coefficient table");
    add_common(cmd_fk, c);

    int64_t mujs_rows = 50;
    auto* cmd_mujs = app.add_subcommand("mujs", "offspring law head and tail diagnostics");
    add_common(cmd_mujs, c);
    cmd_mujs->add_option("--rows", mujs_rows, "number of head rows to print");

    int id_lmax = 20;
    auto* cmd_id = app.add_subcommand("identities", "harmonicity/criticality/fixed-point checks");
    add_common(cmd_id, c);
    cmd_id->add_option("--lmax", id_lmax, "harmonicity depth");

    int64_t wc_n = 100000;
    std::vector<int64_t> wc_p{10, 100};
    auto* cmd_wc = app.add_subcommand("walk-check", "Kemperman identity Monte Carlo");
    add_common(cmd_wc, c);
    cmd_wc->add_option("--replicas", wc_n, "excursions per check");
    cmd_wc->add_option("--p", wc_p, "perimeters");

    int64_t casc_p = 512, casc_reps = 1;
    int casc_depth = 3;
    std::string casc_mode = "nonpointed_capped";
    auto* cmd_casc = app.add_subcommand("cascade", "perimeter cascade generations");
    add_common(cmd_casc, c);
    cmd_casc->add_option("--p", casc_p, "root half-perimeter");
    cmd_casc->add_option("--depth", casc_depth, "generations");
    cmd_casc->add_option("--replicas", casc_reps, "replicas");
    cmd_casc->add_option("--mode", casc_mode,
                         "pointed_raw | nonpointed_capped | nonpointed_exact");

    int64_t vol_p = 512, vol_reps = 1000;
    std::string vol_mode = "nonpointed_capped";
    auto* cmd_vol = app.add_subcommand("volume", "full volume replicas (JSONL)");
    add_common(cmd_vol, c);
    cmd_vol->add_option("--p", vol_p, "half-perimeter");
    cmd_vol->add_option("--replicas", vol_reps, "replicas");
    cmd_vol->add_option("--mode", vol_mode, "nonpointed_capped | nonpointed_exact");

    double cc_alpha = 1.75;
    int cc_lmax = 12;
    int64_t cc_reps = 100, cc_p0 = 512;
    double cc_floor = 1e-5;
    auto* cmd_cc = app.add_subcommand("cont-cascade", "limiting multiplicative cascade");
    add_common(cmd_cc, c, false);
    cmd_cc->add_option("--alpha", cc_alpha, "stable index in (1,2)");
    cmd_cc->add_option("--lmax", cc_lmax, "generations");
    cmd_cc->add_option("--replicas", cc_reps, "replicas");
    cmd_cc->add_option("--p0", cc_p0, "walk resolution per node");
    cmd_cc->add_option("--floor", cc_floor, "child floor");

    int64_t sp_p = 1000, sp_reps = 10, sp_steps = 10000, sp_ntab = 4000;
    auto* cmd_sp = app.add_subcommand("spine", "spine chain paths (JSONL)");
    add_common(cmd_sp, c);
    cmd_sp->add_option("--p", sp_p, "start state");
    cmd_sp->add_option("--replicas", sp_reps, "paths");
    cmd_sp->add_option("--steps", sp_steps, "step cap per path");
    cmd_sp->add_option("--ntab", sp_ntab, "kernel table draws");

    int64_t gr_p = 10000, gr_M = 4, gr_B = 0, gr_reps = 2000, gr_ntab = 3000;
    auto* cmd_gr = app.add_subcommand("green", "occupation per log band");
    add_common(cmd_gr, c);
    cmd_gr->add_option("--p", gr_p, "start state");
    cmd_gr->add_option("--M", gr_M, "lower barrier (n=2)");
    cmd_gr->add_option("--B", gr_B, "upper barrier (n=2; 0 = 4p)");
    cmd_gr->add_option("--replicas", gr_reps, "paths");
    cmd_gr->add_option("--ntab", gr_ntab, "kernel table draws");

    std::vector<int64_t> hit_p{1000, 10000};
    int64_t hit_M = 16, hit_reps = 4000, hit_ntab = 3000, hit_paths = 20000;
    double hit_b = 4.0;
    auto* cmd_hit = app.add_subcommand("hitting", "ln(p) P_p(T_M < T^+_{bp}) vs renewal target");
    add_common(cmd_hit, c);
    cmd_hit->add_option("--p", hit_p, "start states");
    cmd_hit->add_option("--M", hit_M, "lower barrier");
    cmd_hit->add_option("--b", hit_b, "upper barrier multiple");
    cmd_hit->add_option("--replicas", hit_reps, "chain runs per p");
    cmd_hit->add_option("--ntab", hit_ntab, "kernel table draws");
    cmd_hit->add_option("--paths", hit_paths, "renewal paths");

    int64_t cp_p = 10000, cp_reps = 200, cp_ntab = 3000;
    std::vector<int64_t> cp_M{100, 1000};
    double cp_a = 2.0;
    auto* cmd_cp = app.add_subcommand("coupling", "quantile coupling of the chain and Y");
    add_common(cmd_cp, c);
    cmd_cp->add_option("--p", cp_p, "start state");
    cmd_cp->add_option("--M", cp_M, "stopping levels");
    cmd_cp->add_option("--a", cp_a, "ratio tolerance");
    cmd_cp->add_option("--replicas", cp_reps, "runs per level");
    cmd_cp->add_option("--ntab", cp_ntab, "kernel table draws");

    double lim_alpha = 1.75, lim_theta = 2.0;
    std::vector<double> lim_q{0.5, 1.0, 2.0};
    auto* cmd_lim = app.add_subcommand("limits", "closed-form limit-law values");
    add_common(cmd_lim, c, false);
    cmd_lim->add_option("--alpha", lim_alpha, "stable index");
    cmd_lim->add_option("--theta", lim_theta, "exponent");
    cmd_lim->add_option("--q", lim_q, "Laplace arguments");

    std::string rep_dir = ".";
    auto* cmd_rep = app.add_subcommand("report", "summarize a directory of outputs");
    add_common(cmd_rep, c, false);
    cmd_rep->add_option("--dir", rep_dir, "directory of output files");

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        if (*cmd_params) {
            auto p = make_params(c);
            auto m = manifest_for("params", c, &p, 0, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, {p.to_json()});
            if (p.g == 0.0)
                std::cerr << "warning: g = 0 (loops-only map); endpoint of the n=2 window\n";
            return 0;
        }

        if (*cmd_fk) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            auto m = manifest_for("fk", c, &p, 0, flags_joined);
            m.wall_seconds = wall();
            if (c.out.empty()) {
                std::ostringstream name;
                name.precision(10);
                name << "fk_" << p.n << "_" << p.h << "_" << c.kmax << ".csv";
                c.out = name.str();
            }
            write_fk_csv(c.out, t, m.core_json());
            std::ofstream mf(c.out + ".manifest.json");
            m.cache_files.push_back(c.out);
            mf << m.full_json() << "\n";
            std::cout << c.out << " written, cross_check_rel=" << t.cross_check_rel << "\n";
            return 0;
        }

        if (*cmd_mujs) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            OffspringLaw law(p, t);
            std::vector<std::string> lines{"k,mu"};
            for (int64_t k = 0; k <= std::min(mujs_rows, law.k_max()); ++k)
                lines.push_back(std::to_string(k) + "," + fmt(law.pmf(k)));
            lines.push_back("# head_mass," + fmt(law.head_mass()));
            lines.push_back("# tail_mass," + fmt(law.tail_mass()));
            lines.push_back("# mean," + fmt(law.mean()));
            lines.push_back("# fit_mean_residual," + fmt(law.fit_mean_residual()));
            auto m = manifest_for("mujs", c, &p, 0, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }

        if (*cmd_id) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            auto rep = run_identities(p, t, id_lmax);
            auto m = manifest_for("identities", c, &p, 0, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, rep.lines);
            return rep.pass ? 0 : 3;
        }

        if (*cmd_wc) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            OffspringLaw law(p, t);
            std::vector<std::string> lines{"test,p,lhs,rhs,stderr,N,guard_trips"};
            struct F {
                const char* name;
                std::function<double(int64_t)> f;
            };
            std::vector<F> fs{{"indicator_down", [](int64_t x) { return x == -1 ? 1.0 : 0.0; }},
                              {"indicator_ge10", [](int64_t x) { return x + 1 >= 10 ? 1.0 : 0.0; }},
                              {"constant_one", [](int64_t) { return 1.0; }}};
            for (int64_t pp : wc_p) {
                for (auto& f : fs) {
                    int T = n_threads(c);
                    std::vector<KempermanResult> parts((size_t)T);
                    parallel_replicas(T, c.seed ^ (uint64_t)pp, T, [&](int64_t i, Rng& rng) {
                        parts[(size_t)i] = kemperman_check(law, pp, f.f, wc_n / T, rng);
                    });
                    KempermanResult agg;
                    double var = 0.0;
                    for (auto& pr : parts) {
                        agg.lhs += pr.lhs * (double)pr.n_used;
                        agg.n_used += pr.n_used;
                        agg.guard_trips += pr.guard_trips;
                        var += pr.lhs_stderr * pr.lhs_stderr * (double)pr.n_used * (double)pr.n_used;
                        agg.rhs = pr.rhs;
                    }
                    agg.lhs /= (double)agg.n_used;
                    agg.lhs_stderr = std::sqrt(var) / (double)agg.n_used;
                    lines.push_back(std::string(f.name) + "," + std::to_string(pp) + "," +
                                    fmt(agg.lhs) + "," + fmt(agg.rhs) + "," + fmt(agg.lhs_stderr) +
                                    "," + std::to_string(agg.n_used) + "," +
                                    std::to_string(agg.guard_trips));
                }
            }
            auto m = manifest_for("walk-check", c, &p, wc_n, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }

        if (*cmd_casc) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            OffspringLaw law(p, t);
            ChildMode mode = casc_mode == "pointed_raw"       ? ChildMode::pointed_raw
                             : casc_mode == "nonpointed_exact" ? ChildMode::nonpointed_exact
                                                               : ChildMode::nonpointed_capped;
            std::vector<std::string> lines{"replica,generation,chi"};
            for (int64_t r = 0; r < casc_reps; ++r) {
                Rng rng = replica_stream(c.seed, (uint64_t)r);
                Frontier fr;
                fr.max_depth = casc_depth;
                auto casc = sample_cascade(p, law, casc_p, fr, mode, rng);
                for (size_t l = 0; l < casc.generations.size(); ++l)
                    for (int64_t chi : casc.generations[l])
                        lines.push_back(std::to_string(r) + "," + std::to_string(l) + "," +
                                        std::to_string(chi));
            }
            auto m = manifest_for("cascade", c, &p, casc_reps, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }

        if (*cmd_vol) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            OffspringLaw law(p, t);
            ChildMode mode = vol_mode == "nonpointed_exact" ? ChildMode::nonpointed_exact
                                                            : ChildMode::nonpointed_capped;
            std::vector<std::string> lines((size_t)vol_reps);
            parallel_replicas(vol_reps, c.seed, n_threads(c), [&](int64_t i, Rng&) {
                auto v = sample_volume(p, law, vol_p, mode, mix64(c.seed, (uint64_t)i));
                std::ostringstream os;
                os << "{\"p\":" << v.p << ",\"V\":" << v.V << ",\"weight\":" << v.weight
                   << ",\"cap_hits\":" << v.cap_hits << ",\"seed\":" << v.seed << "}";
                lines[(size_t)i] = os.str();
            });
            auto m = manifest_for("volume", c, &p, vol_reps, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }

        if (*cmd_cc) {
            // alpha > 3/2: the dilute point with that index; alpha = 3/2: the o2
            // boundary point; alpha < 3/2: the dense point at the mid-window h
            CriticalParams p;
            if (std::fabs(cc_alpha - 1.5) < 1e-12) {
                p = derive_params(2.0, O2Sel{4.0 / (3.0 * M_PI * M_PI)});
            } else if (cc_alpha > 1.5) {
                double b = cc_alpha - 1.5;
                p = derive_params(2.0 * std::cos(M_PI * b), DiluteSel{});
            } else {
                double b = 1.5 - cc_alpha;
                double n = 2.0 * std::cos(M_PI * b);
                auto dil = derive_params(n, DiluteSel{});
                double hmax = 2.0 * b * b / (2.0 - n);
                p = derive_params(n, DenseSel{std::sqrt(dil.h * hmax)});
            }
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            OffspringLaw law(p, t);
            ContCascadeConfig cfg;
            cfg.nu.P0 = cc_p0;
            cfg.child_floor = cc_floor;
            std::vector<std::string> lines{"replica,generation,W,D,truncated_mass,nodes,seed"};
            std::vector<std::vector<std::string>> rows((size_t)cc_reps);
            parallel_replicas(cc_reps, c.seed, n_threads(c), [&](int64_t i, Rng& rng) {
                auto run = grow_cascade(p, law, cc_lmax, rng, cfg);
                for (int l = 0; l <= cc_lmax; ++l)
                    rows[(size_t)i].push_back(
                        std::to_string(i) + "," + std::to_string(l) + "," + fmt(run.W[(size_t)l]) +
                        "," + fmt(run.D[(size_t)l]) + "," + fmt(run.truncated_mass[(size_t)l]) +
                        "," + std::to_string(run.nodes[(size_t)l]) + "," +
                        std::to_string(mix64(c.seed, (uint64_t)i)));
            });
            for (auto& r : rows) lines.insert(lines.end(), r.begin(), r.end());
            auto m = manifest_for("cont-cascade", c, &p, cc_reps, flags_joined);
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }

        if (*cmd_sp || *cmd_gr || *cmd_hit || *cmd_cp) {
            auto p = make_params(c);
            auto t = fk_table(p, c.kmax, pick_method(c, p));
            OffspringLaw law(p, t);
            SpineConfig scfg;
            scfg.n_tab = *cmd_sp ? sp_ntab : (*cmd_gr ? gr_ntab : (*cmd_hit ? hit_ntab : cp_ntab));
            KernelCache cache(p, law, t, scfg);
            if (*cmd_sp) {
                std::vector<std::string> lines;
                for (int64_t r = 0; r < sp_reps; ++r) {
                    Rng rng = replica_stream(c.seed, (uint64_t)r);
                    auto path = spine_run(cache, sp_p, sp_steps, rng);
                    std::ostringstream os;
                    os << "{\"replica\":" << r << ",\"absorbed\":" << (path.absorbed ? 1 : 0)
                       << ",\"states\":[";
                    for (size_t i = 0; i < path.states.size(); ++i)
                        os << (i ? "," : "") << path.states[i];
                    os << "]}";
                    lines.push_back(os.str());
                }
                auto m = manifest_for("spine", c, &p, sp_reps, flags_joined);
                m.wall_seconds = wall();
                emit(c, m, lines);
            } else if (*cmd_gr) {
                if (gr_B == 0) gr_B = 4 * gr_p;
                std::vector<int> bands;
                for (int tt = (int)std::ceil(std::log((double)std::max<int64_t>(gr_M, 1)));
                     tt < std::log((double)gr_B); ++tt)
                    bands.push_back(tt);
                Rng rng = replica_stream(c.seed, 0);
                auto counts = green_occupation(cache, gr_p, gr_M, gr_B, bands, gr_reps, rng);
                std::vector<std::string> lines{"t,visits"};
                for (size_t i = 0; i < bands.size(); ++i)
                    lines.push_back(std::to_string(bands[i]) + "," + fmt(counts[i]));
                auto m = manifest_for("green", c, &p, gr_reps, flags_joined);
                m.wall_seconds = wall();
                emit(c, m, lines);
            } else if (*cmd_hit) {
                Rng rng = replica_stream(c.seed, 0);
                std::vector<double> grid;
                for (double x = 0.0; x <= 20.0; x += 1.0) grid.push_back(x);
                auto ren = renewal_function(grid, hit_paths, rng);
                double target = 0.0;
                for (size_t i = 0; i < grid.size(); ++i)
                    if (std::fabs(grid[i] - std::log(hit_b)) < 0.75) target = ren.R[i];
                target /= ren.c0;
                std::vector<std::string> lines{"p,prob,stderr,lnp_prob,target_R_over_c0"};
                for (int64_t pp : hit_p) {
                    auto est = hitting_probability(cache, pp, hit_M, hit_b, hit_reps, rng);
                    lines.push_back(std::to_string(pp) + "," + fmt(est.prob) + "," +
                                    fmt(est.prob_stderr) + "," + fmt(est.lnp_scaled) + "," +
                                    fmt(target));
                }
                auto m = manifest_for("hitting", c, &p, hit_reps, flags_joined);
                m.wall_seconds = wall();
                emit(c, m, lines);
            } else {
                std::vector<std::string> lines{"p,M,a,success_rate,mean_max_ratio,N"};
                for (int64_t M : cp_M) {
                    Rng rng = replica_stream(c.seed, (uint64_t)M);
                    int64_t succ = 0;
                    double mr = 0.0;
                    for (int64_t r = 0; r < cp_reps; ++r) {
                        auto res = coupling_run(cache, cp_p, M, cp_a, rng);
                        succ += res.success;
                        mr += std::min(res.max_ratio, 1e6);
                    }
                    lines.push_back(std::to_string(cp_p) + "," + std::to_string(M) + "," +
                                    fmt(cp_a) + "," + fmt((double)succ / (double)cp_reps) + "," +
                                    fmt(mr / (double)cp_reps) + "," + std::to_string(cp_reps));
                }
                auto m = manifest_for("coupling", c, &p, cp_reps, flags_joined);
                m.wall_seconds = wall();
                emit(c, m, lines);
            }
            return 0;
        }

        if (*cmd_lim) {
            std::vector<std::string> lines{"quantity,value"};
            lines.push_back("phi_alpha(" + fmt(lim_alpha) + "," + fmt(lim_theta) + ")," +
                            fmt(phi_alpha(lim_alpha, lim_theta)));
            lines.push_back("theta_root(" + fmt(lim_alpha) + ")," + fmt(theta_root(lim_alpha)));
            for (double q : lim_q)
                lines.push_back("psi(" + fmt(lim_alpha) + "," + fmt(lim_theta) + "," + fmt(q) +
                                ")," + fmt(psi(lim_alpha, lim_theta, q)));
            RunManifest m;
            m.subcommand = "limits";
            m.flags = flags_joined;
            m.master_seed = c.seed;
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }

        if (*cmd_rep) {
            namespace fs = std::filesystem;
            std::vector<std::string> lines{"file,lines,manifest"};
            for (const auto& e : fs::directory_iterator(rep_dir)) {
                if (!e.is_regular_file()) continue;
                auto path = e.path().string();
                if (path.find(".manifest.json") != std::string::npos) continue;
                std::ifstream is(path);
                std::string first;
                if (!std::getline(is, first) || first.rfind("# {", 0) != 0) continue;
                int64_t n = 0;
                std::string l;
                while (std::getline(is, l)) ++n;
                lines.push_back(e.path().filename().string() + "," + std::to_string(n) + "," +
                                first.substr(2));
            }
            RunManifest m;
            m.subcommand = "report";
            m.flags = flags_joined;
            m.wall_seconds = wall();
            emit(c, m, lines);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const RunawayGuard& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const MemoryGuard& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const MethodDisagreement& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const CriticalityViolation& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
