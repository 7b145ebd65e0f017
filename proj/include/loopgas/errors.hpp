#pragma once

#include <stdexcept>
#include <string>

namespace loopgas {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error("ConfigError: " + m) {}
};
struct OutOfPhase : std::runtime_error {
    explicit OutOfPhase(const std::string& m) : std::runtime_error("OutOfPhase: " + m) {}
};
struct DegenerateWeight : std::runtime_error {
    explicit DegenerateWeight(const std::string& m) : std::runtime_error("DegenerateWeight: " + m) {}
};
struct NotO2 : std::runtime_error {
    explicit NotO2(const std::string& m) : std::runtime_error("NotO2: " + m) {}
};
struct OnCut : std::runtime_error {
    explicit OnCut(const std::string& m) : std::runtime_error("OnCut: " + m) {}
};
struct MethodDisagreement : std::runtime_error {
    explicit MethodDisagreement(const std::string& m) : std::runtime_error("MethodDisagreement: " + m) {}
};
struct CriticalityViolation : std::runtime_error {
    explicit CriticalityViolation(const std::string& m) : std::runtime_error("CriticalityViolation: " + m) {}
};
struct QuadratureNonConvergence : std::runtime_error {
    explicit QuadratureNonConvergence(const std::string& m) : std::runtime_error("QuadratureNonConvergence: " + m) {}
};
struct TableTooSmall : std::runtime_error {
    explicit TableTooSmall(const std::string& m) : std::runtime_error("TableTooSmall: " + m) {}
};
struct RunawayGuard : std::runtime_error {
    explicit RunawayGuard(const std::string& m) : std::runtime_error("RunawayGuard: " + m) {}
};
struct MemoryGuard : std::runtime_error {
    explicit MemoryGuard(const std::string& m) : std::runtime_error("MemoryGuard: " + m) {}
};
struct KernelDegenerate : std::runtime_error {
    explicit KernelDegenerate(const std::string& m) : std::runtime_error("KernelDegenerate: " + m) {}
};
struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& m) : std::runtime_error("InsufficientData: " + m) {}
};

}  // namespace loopgas
