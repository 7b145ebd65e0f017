#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "loopgas/params.hpp"
#include "loopgas/rng.hpp"

namespace loopgas {

inline constexpr const char* kToolVersion = "0.1.0";

// numeric literals in flags accept simple constant expressions with pi,
// e.g. "4/(3pi^2)", "2/pi^2", "sqrt(2)"
double parse_numeric(const std::string& expr);

// run manifest; the core (everything except wall time) is the first line of
// every data file
struct RunManifest {
    std::string subcommand;
    std::string params_json;  // empty when no params apply
    std::string flags;
    uint64_t master_seed = 0;
    int64_t replicas = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> cache_files;

    std::string core_json() const;  // deterministic, no wall time
    std::string full_json() const;
};

// derived per-replica stream: documented rule, splitmix64 avalanche of
// (master, index)
inline Rng replica_stream(uint64_t master, uint64_t index) {
    return Rng::stream(master, index);
}

// run f(replica_index, rng) over a bounded pool; results must be written to
// per-replica slots by the caller. Rethrows the first worker exception.
void parallel_replicas(int64_t n, uint64_t master_seed, int threads,
                       const std::function<void(int64_t, Rng&)>& f);

int hardware_threads();

// file helpers: every output starts with "# <manifest core json>"
void write_lines(const std::string& path, const RunManifest& m,
                 const std::vector<std::string>& lines);

uint64_t fnv1a_file_hash(const std::string& path);

}  // namespace loopgas
