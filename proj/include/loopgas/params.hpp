#pragma once

#include <cstdint>
#include <string>

namespace loopgas {

enum class Regime { dense, dilute, o2_boundary, o2_sub };
enum class CaseTag { A, B };

std::string to_string(Regime r);
std::string to_string(CaseTag c);

// Non-generic critical parameter point of the rigid loop-O(n) quadrangulation
// model. Immutable after construction; safe to share across threads.
struct CriticalParams {
    double n = 0.0;
    double h = 0.0;   // crossed-face weight
    double g = 0.0;   // empty-face weight
    double b = 0.0;   // arccos(n/2)/pi
    double alpha = 0.0;
    double theta_alpha = 0.0;
    double beta_alpha = 0.0;
    double gamma = 0.0;  // 1/sqrt(h)
    Regime regime = Regime::dilute;
    CaseTag case_tag = CaseTag::A;

    bool is_o2() const { return regime == Regime::o2_boundary || regime == Regime::o2_sub; }
    std::string to_json() const;
    // stable identifier for cache keys
    uint64_t hash() const;
};

struct DiluteSel {};
struct DenseSel { double h; };
struct O2Sel { double h; };

CriticalParams derive_params(double n, DiluteSel);
CriticalParams derive_params(double n, DenseSel sel);
CriticalParams derive_params(double n, O2Sel sel);

// residual of the defining critical-line equation at (g,h); relative
double line_residual(const CriticalParams& p);

}  // namespace loopgas
