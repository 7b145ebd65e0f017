#include "loopgas/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "loopgas/errors.hpp"
#include "loopgas/quadrature.hpp"
#include "loopgas/resolvent.hpp"
#include "loopgas/special.hpp"

namespace loopgas {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(FkMethod m) {
    switch (m) {
        case FkMethod::o2_closed_form: return "o2_closed_form";
        case FkMethod::rho_moments: return "rho_moments";
        case FkMethod::circle_series: return "circle_series";
    }
    return "?";
}

double o2_sk(const CriticalParams& p, int64_t k, const std::vector<double>& c2m) {
    if (!p.is_o2()) throw NotO2("o2_sk requires n = 2");
    const double g = p.g, h = p.h;
    if (k == 0) return 1.0;
    if (k == 1) return (h * (9.0 * kPi * kPi - 72.0) - 16.0 * g) / (36.0 * kPi * kPi * h * h);
    if (k == 2) return (g * (80.0 - 9.0 * kPi * kPi) + 8.0 * h) / (36.0 * kPi * kPi * h * h);
    auto c = [&](int64_t m) { return c2m[static_cast<size_t>(m)]; };
    const double dk = static_cast<double>(k);
    double Tg = c(k + 2) / (2.0 * dk + 4.0) - c(k - 2) / (2.0 * dk - 4.0) -
                2.0 / (2.0 * dk + 3.0) + 2.0 / (2.0 * dk - 3.0) -
                (2.0 / 3.0) * (1.0 / (2.0 * dk + 1.0) - 1.0 / (2.0 * dk - 1.0));
    double T1 = -c(k + 1) / (2.0 * dk + 2.0) + c(k - 1) / (2.0 * dk - 2.0) +
                2.0 / (2.0 * dk + 1.0) - 2.0 / (2.0 * dk - 1.0);
    return (g / (h * h) * Tg + T1 / h) / (kPi * kPi);
}

std::vector<double> o2_sk_range(const CriticalParams& p, int64_t K) {
    auto c2m = odd_harmonic_table(K + 2);
    std::vector<double> s(static_cast<size_t>(K) + 1);
    for (int64_t k = 0; k <= K; ++k) s[static_cast<size_t>(k)] = o2_sk(p, k, c2m);
    return s;
}

double circle_series_sk(const CriticalParams& p, int64_t k, int grid, double delta) {
    // s_k = (1/N) sum_j W(xi_j) xi_j (xi_j/gamma)^{2k},  xi_j on |xi| = gamma(1+delta).
    // delta <= 0 picks a radius where (r/gamma)^{2k} stays ~ e^6, keeping the
    // rounding noise of W from being amplified into the small coefficients.
    const double gam = p.gamma;
    if (delta <= 0.0) delta = std::min(0.25, 3.0 / (static_cast<double>(k) + 1.0));
    const double r = gam * (1.0 + delta);
    std::complex<double> acc = 0.0;
    for (int j = 0; j < grid; ++j) {
        double th = 2.0 * kPi * (j + 0.5) / grid;
        std::complex<double> xi = std::polar(r, th);
        std::complex<double> scaled = std::pow(xi / gam, 2.0 * static_cast<double>(k));
        acc += resolvent_w(p, xi) * xi * scaled;
    }
    return acc.real() / grid;
}

namespace {

void build_rho_nodes(PartitionTable& t) {
    static const TanhSinhRule rule(10, 6.8);
    const double gam = t.params.gamma;
    t.qu.clear();
    t.qdu.clear();
    t.qw.clear();
    t.qrho.clear();
    const double c = gam / 2.0, r = gam / 2.0;
    for (size_t i = 0; i < rule.x.size(); ++i) {
        double u = c + r * rule.x[i];
        // distance to the nearer endpoint, exact via the complement
        double du_right = (rule.x[i] > 0.0) ? r * rule.xc[i] : gam - u;
        if (!(u > 0.0) || !(du_right > 0.0)) continue;
        t.qu.push_back(u);
        t.qdu.push_back(du_right);
        t.qw.push_back(rule.w[i] * r);
        double rho = (du_right < 1e-8 * gam) ? spectral_density_edge(t.params, du_right)
                                             : spectral_density(t.params, u);
        t.qrho.push_back(rho);
    }
}

std::vector<double> moments_from_rho(const PartitionTable& t, int64_t K) {
    // s_k = 2 int_0^gamma rho(u) (u/gamma)^{2k} du; node-cached power iteration
    const double gam = t.params.gamma;
    const size_t m = t.qu.size();
    std::vector<double> pw(m), base(m);
    for (size_t i = 0; i < m; ++i) {
        double ratio = t.qu[i] / gam;
        base[i] = ratio * ratio;
        pw[i] = 1.0;
    }
    std::vector<double> s(static_cast<size_t>(K) + 1);
    for (int64_t k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (size_t i = 0; i < m; ++i) {
            acc += t.qw[i] * t.qrho[i] * pw[i];
            pw[i] *= base[i];
        }
        s[static_cast<size_t>(k)] = 2.0 * acc;
    }
    return s;
}

void fit_tail_constant(PartitionTable& t) {
    // average of s_k k^{alpha+1/2} / (ln k)^{caseB} over the last decade
    const double a = t.params.alpha + 0.5;
    const bool logf = t.params.case_tag == CaseTag::B;
    int64_t lo = std::max<int64_t>(2, t.K_max / 10), hi = t.K_max;
    double acc = 0.0;
    int64_t cnt = 0;
    for (int64_t k = lo; k <= hi; k += std::max<int64_t>(1, (hi - lo) / 512)) {
        double dk = static_cast<double>(k);
        double v = t.s[static_cast<size_t>(k)] * std::pow(dk, a);
        if (logf) v /= std::log(dk);
        acc += v;
        ++cnt;
    }
    t.tail_constant = acc / static_cast<double>(cnt);
}

}  // namespace

double PartitionTable::sk(int64_t k) const {
    if (k < 0) throw TableTooSmall("sk: negative index");
    if (k <= K_max) return s[static_cast<size_t>(k)];
    double dk = static_cast<double>(k);
    double v = tail_constant * std::pow(dk, -(params.alpha + 0.5));
    if (params.case_tag == CaseTag::B) v *= std::log(dk);
    return v;
}

double PartitionTable::vbar(int64_t p) const {
    if (p == 0) return 0.0;
    return 1.0 / sk(p);
}

PartitionTable fk_table(const CriticalParams& p, int64_t K_max, FkMethod method,
                        bool cross_check) {
    if (K_max < 2) throw ConfigError("fk_table: K_max >= 2 required");
    PartitionTable t;
    t.params = p;
    t.K_max = K_max;
    t.method = method;
    build_rho_nodes(t);
    switch (method) {
        case FkMethod::o2_closed_form:
            if (!p.is_o2()) throw NotO2("o2_closed_form requires n = 2");
            t.s = o2_sk_range(p, K_max);
            break;
        case FkMethod::rho_moments:
            t.s = moments_from_rho(t, K_max);
            break;
        case FkMethod::circle_series: {
            t.s.resize(static_cast<size_t>(K_max) + 1);
            for (int64_t k = 0; k <= K_max; ++k)
                t.s[static_cast<size_t>(k)] = circle_series_sk(p, k);
            break;
        }
    }
    if (cross_check) {
        // independent second route for k <= 50
        const int64_t kc = std::min<int64_t>(50, K_max);
        std::vector<double> ref;
        if (method == FkMethod::rho_moments) {
            if (p.is_o2()) {
                ref = o2_sk_range(p, kc);
            } else {
                ref.resize(static_cast<size_t>(kc) + 1);
                for (int64_t k = 0; k <= kc; ++k)
                    ref[static_cast<size_t>(k)] = circle_series_sk(p, k);
            }
        } else {
            ref = moments_from_rho(t, kc);
        }
        double worst = 0.0;
        for (int64_t k = 1; k <= kc; ++k) {
            double a = t.s[static_cast<size_t>(k)];
            double r = ref[static_cast<size_t>(k)];
            worst = std::max(worst, std::fabs(a - r) / std::max(std::fabs(r), 1e-300));
        }
        t.cross_check_rel = worst;
        if (worst > 1e-6)
            throw MethodDisagreement("fk_table: methods differ by " + std::to_string(worst));
    }
    fit_tail_constant(t);
    // positivity is part of the table contract
    for (int64_t k = 1; k <= K_max; ++k)
        if (!(t.s[static_cast<size_t>(k)] > 0.0))
            throw MethodDisagreement("fk_table: nonpositive s_k at k=" + std::to_string(k));
    return t;
}

// ---- offspring law ----

OffspringLaw::OffspringLaw(const CriticalParams& params, const PartitionTable& table)
    : params_(params) {
    const double n = params.n, g = params.g, h = params.h;
    const int64_t K = table.K_max;
    head_.assign(static_cast<size_t>(K) + 1, 0.0);
    head_[0] = 4.0 * h;
    for (int64_t k = 1; k <= K; ++k) {
        // mu(k) = C(2k-1,k-1) ghat_k (4h)^{1-k} = 2 C(2k,k) 4^{-k} n h s_k [+ g term at k=2]
        double v = 2.0 * central_binomial_4k(k) * n * h * table.s[static_cast<size_t>(k)];
        if (k == 2) v += 3.0 * g / (4.0 * h);
        head_[static_cast<size_t>(k)] = v;
    }
    long double mass = 0.0L, mean = 0.0L;
    for (int64_t k = 0; k <= K; ++k) {
        mass += head_[static_cast<size_t>(k)];
        mean += static_cast<long double>(k) * head_[static_cast<size_t>(k)];
    }
    head_mass_ = static_cast<double>(mass);
    const double target_mass = 1.0 - head_mass_;
    const double target_mean = 1.0 - static_cast<double>(mean);
    if (target_mass <= 0.0)
        throw CriticalityViolation("offspring_law: head mass >= 1; bad table");

    tail_.exponent = params.alpha + 1.0;
    tail_.log_factor = params.case_tag == CaseTag::B;
    tail_.kmin = K + 1;
    tail_.mass = target_mass;
    tail_.mean = target_mean;
    const int j = tail_.log_factor ? 1 : 0;
    const double N = static_cast<double>(K);
    double S0a = power_log_tail_sum(params.alpha + 1.0, j, N);
    double S0b = power_log_tail_sum(params.alpha + 2.0, j, N);
    double S1a = power_log_tail_sum(params.alpha, j, N);
    double S1b = S0a;
    // [S0a S0b; S1a S1b] [A B]^T = [mass mean]^T
    double det = S0a * S1b - S0b * S1a;
    tail_.A = (target_mass * S1b - S0b * target_mean) / det;
    tail_.B = (S0a * target_mean - target_mass * S1a) / det;
    if (tail_.A <= 0.0 || tail_.A + tail_.B / static_cast<double>(tail_.kmin) <= 0.0)
        throw CriticalityViolation("offspring_law: tail matching produced a nonpositive tail");
    mean_ = static_cast<double>(mean) + tail_.A * S1a + tail_.B * S1b;

    // pure single-term fit over the last decade: diagnostic for table quality
    {
        int64_t lo = std::max<int64_t>(2, K / 10);
        double acc = 0.0;
        int64_t cnt = 0;
        for (int64_t k = lo; k <= K; k += std::max<int64_t>(1, (K - lo) / 256)) {
            double dk = static_cast<double>(k);
            double v = head_[static_cast<size_t>(k)] * std::pow(dk, params.alpha + 1.0);
            if (tail_.log_factor) v /= std::log(dk);
            acc += v;
            ++cnt;
        }
        double c_fit = acc / static_cast<double>(cnt);
        double fit_mean = static_cast<double>(mean) + c_fit * S1a;
        fit_mean_residual_ = std::fabs(fit_mean - 1.0);
        if (fit_mean_residual_ > 1e-4)
            throw CriticalityViolation("offspring_law: fitted-tail mean residual " +
                                       std::to_string(fit_mean_residual_));
    }

    // Vose alias table over 0..K plus the tail slot at index K+1
    const size_t m = static_cast<size_t>(K) + 2;
    std::vector<double> scaled(m);
    for (size_t i = 0; i + 1 < m; ++i) scaled[i] = head_[i] * static_cast<double>(m);
    scaled[m - 1] = tail_.mass * static_cast<double>(m);
    alias_prob_.assign(m, 0.0);
    alias_idx_.assign(m, 0);
    std::vector<uint32_t> small, large;
    small.reserve(m);
    large.reserve(m);
    for (size_t i = 0; i < m; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<uint32_t>(i));
    while (!small.empty() && !large.empty()) {
        uint32_t s = small.back();
        small.pop_back();
        uint32_t l = large.back();
        alias_prob_[s] = scaled[s];
        alias_idx_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (uint32_t i : large) alias_prob_[i] = 1.0;
    for (uint32_t i : small) alias_prob_[i] = 1.0;
}

double OffspringLaw::pmf(int64_t k) const {
    if (k < 0) return 0.0;
    if (k < static_cast<int64_t>(head_.size())) return head_[static_cast<size_t>(k)];
    double dk = static_cast<double>(k);
    double lw = tail_.log_factor ? std::log(dk) : 1.0;
    return lw * std::pow(dk, -tail_.exponent) * (tail_.A + tail_.B / dk);
}

int64_t OffspringLaw::sample(Rng& rng) const {
    const size_t m = alias_prob_.size();
    size_t i = static_cast<size_t>(rng.below(m));
    if (rng.uniform() >= alias_prob_[i]) i = alias_idx_[i];
    if (i + 1 < m) return static_cast<int64_t>(i);
    // tail slot: continuous power-law surrogate with two-term correction
    const double s = tail_.exponent;
    const double x0 = static_cast<double>(tail_.kmin) - 0.5;
    const double ratio_bound = tail_.A + std::max(tail_.B, 0.0) / static_cast<double>(tail_.kmin);
    for (;;) {
        double x;
        double accept;
        if (!tail_.log_factor) {
            x = x0 * std::pow(rng.uniform(), -1.0 / (s - 1.0));
            accept = (tail_.A + tail_.B / x) / ratio_bound;
        } else {
            // envelope exponent s - 0.2 dominates x^{-s} ln x
            const double sp = s - 0.2;
            x = x0 * std::pow(rng.uniform(), -1.0 / (sp - 1.0));
            double xstar = std::max(x0, std::exp(5.0));
            double fmax = std::pow(xstar / x0, -0.2) * std::log(xstar);
            accept = std::pow(x / x0, -0.2) * std::log(x) / fmax *
                     (tail_.A + tail_.B / x) / ratio_bound;
        }
        if (rng.uniform() < accept) {
            double r = std::round(x);
            if (r >= static_cast<double>(tail_.kmin)) return static_cast<int64_t>(r);
        }
    }
}

// ---- identities ----

CriticalityPair criticality_integral(const CriticalParams& p, const PartitionTable& t) {
    // n h^2 int rho u^2 (1-hu^2)^{-3/2} du = n h int rho y (1-y)^{-3/2},  y = h u^2
    double I = t.rho_integral([](double y, double omy) { return y / (omy * std::sqrt(omy)); });
    double lhs = p.n * p.h * I;
    double rhs = 1.0 - 1.5 * p.g / p.h;
    return {lhs, rhs};
}

double nu_total_mass(const CriticalParams& p, const PartitionTable& t) {
    // sum_{m>=1} s_m = int rho y/(1-y)
    double I1 = t.rho_integral([](double y, double omy) { return y / omy; });
    return 2.0 * p.h * (1.0 + I1) + p.n * p.h * I1 + p.g / p.h;
}

double fixed_point_residual(const CriticalParams& p, const PartitionTable& t) {
    double I = t.rho_integral([](double, double omy) { return 1.0 / std::sqrt(omy) - 1.0; });
    double lhs = 1.0 + 3.0 * p.g / (16.0 * p.h * p.h) + 0.5 * p.n * I;
    double rhs = 1.0 / (4.0 * p.h);
    return std::fabs(lhs - rhs) / rhs;
}

std::vector<double> harmonicity_check(const CriticalParams& p, const PartitionTable& t,
                                      int l_max) {
    std::vector<double> res;
    res.reserve(static_cast<size_t>(l_max));
    // h_up(j) for j = 0..l_max+64
    std::vector<double> hup(static_cast<size_t>(l_max) + 80);
    for (size_t j = 0; j < hup.size(); ++j) hup[j] = h_up(static_cast<int64_t>(j));
    for (int l = 1; l <= l_max; ++l) {
        // sum_{m>=1} h_up(l-1+m) y^m : series for y <= 1/2, closed form above
        auto Sl = [&](double y, double omy) -> double {
            if (y < 0.5) {
                double acc = 0.0, pw = y;
                for (int m = 1; m < 400; ++m) {
                    int64_t j = l - 1 + m;
                    double term = h_up(j) * pw;
                    acc += term;
                    pw *= y;
                    if (term < 1e-18 * (acc + 1e-300) && m > 4) break;
                }
                return acc;
            }
            // y^{1-l} ( y(1-y)^{-3/2} - sum_{j<l} h_up(j) y^j )
            double H = y / (omy * std::sqrt(omy));
            double part = 0.0, pw = 1.0;
            for (int j = 0; j < l; ++j) {
                part += hup[static_cast<size_t>(j)] * pw;
                pw *= y;
            }
            return std::pow(y, 1.0 - static_cast<double>(l)) * (H - part);
        };
        double R = t.rho_integral(Sl);
        double neg = 0.0;
        for (int j = 0; j <= l - 2; ++j)
            neg += 2.0 * p.h * t.s[static_cast<size_t>(j)] * hup[static_cast<size_t>(l - 1 - j)];
        double total = neg + p.g / p.h * hup[static_cast<size_t>(l + 1)] + p.n * p.h * R;
        res.push_back(std::fabs(total - hup[static_cast<size_t>(l)]) / hup[static_cast<size_t>(l)]);
    }
    return res;
}

// ---- cache file ----

void write_fk_csv(const std::string& path, const PartitionTable& t,
                  const std::string& manifest_json) {
    std::ofstream os(path);
    if (!os) throw ConfigError("write_fk_csv: cannot open " + path);
    os << "# " << manifest_json << "\n";
    os << "k,s_k\n";
    os.precision(17);
    for (int64_t k = 0; k <= t.K_max; ++k) os << k << "," << t.s[static_cast<size_t>(k)] << "\n";
}

PartitionTable read_fk_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("read_fk_csv: cannot open " + path);
    std::string line;
    std::getline(is, line);  // metadata
    if (line.empty() || line[0] != '#') throw ConfigError("read_fk_csv: missing metadata line");
    std::string meta = line;
    std::getline(is, line);  // header
    PartitionTable t;
    // parse params back out of the metadata JSON (flat, written by us)
    auto grab = [&](const std::string& key) -> double {
        auto pos = meta.find("\"" + key + "\":");
        if (pos == std::string::npos) throw ConfigError("read_fk_csv: missing key " + key);
        return std::stod(meta.substr(pos + key.size() + 3));
    };
    double n = grab("n"), h = grab("h");
    if (std::fabs(n - 2.0) < 1e-14) {
        t.params = derive_params(2.0, O2Sel{h});
    } else {
        auto dil = derive_params(n, DiluteSel{});
        t.params = (std::fabs(dil.h - h) < 1e-10 * h) ? dil : derive_params(n, DenseSel{h});
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        t.s.push_back(std::stod(line.substr(comma + 1)));
    }
    t.K_max = static_cast<int64_t>(t.s.size()) - 1;
    build_rho_nodes(t);
    fit_tail_constant(t);
    return t;
}

}  // namespace loopgas
