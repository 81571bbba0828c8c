#pragma once

#include "kap/kernels.hpp"
#include "kap/sieve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kap {

enum class CheckpointPolicy { LogGrid, Explicit };

struct RunConfig {
    unsigned precision_digits = 50;
    std::uint64_t sieve_limit = 10'000'000;
    std::uint64_t segment_size = 1ull << 22;
    unsigned threads = 0;  // 0 means use hardware concurrency
    CheckpointPolicy checkpoint_policy = CheckpointPolicy::LogGrid;
    unsigned points_per_decade = 16;
    std::vector<std::uint64_t> explicit_checkpoints;
    std::string cache_dir = "cache";
    std::string output_dir = "out";
    std::string data_dir = KAP_DATA_DIR;
    unsigned k_max = 8;
    SimdMode simd = SimdMode::Auto;

    void validate() const;  // throws std::invalid_argument
    unsigned resolved_threads() const;

    // Resolved checkpoint grid: the policy's points, the bound-sensitive
    // special x values, and the limit itself; sorted, unique, within
    // [2, limit].
    std::vector<std::uint64_t> checkpoints() const;

    SieveConfig sieve_config() const;

    // Hash over the result-determining fields only (digits, limit, k_max,
    // checkpoints). Threads and SIMD mode never change any output byte, and
    // segmentation is excluded too: the ledger cache is keyed on the same
    // fields, so reruns reuse the first sieve's bytes no matter how later
    // invocations are segmented.
    std::string hash() const;
};

// Key-value config file: one `key = value` per line, '#' comments. The same
// keys the CLI flags use; flags override file values.
RunConfig load_config_file(const std::string& path);
void apply_config_override(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace kap
