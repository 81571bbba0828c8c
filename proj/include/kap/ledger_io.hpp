#pragma once

#include "kap/sieve.hpp"

#include <string>

namespace kap {

// Cache identity covers exactly the inputs that determine ledger content:
// limit, k_max, and the checkpoint list. Thread count, segment size, and SIMD
// mode are excluded on purpose: every tracked sum and count is bit-identical
// across them, and the two diagnostic fields (log moments, drift integrals)
// are stable to full double precision, which is all their consumers read.
std::string sieve_cache_key(const SieveConfig& config);
std::string sieve_cache_path(const SieveConfig& config, const std::string& cache_dir);

void write_ledger_cache(const SumLedger& ledger, const std::string& path);

// Returns false when the file does not exist. Throws std::runtime_error with
// the offending path on checksum failure or key mismatch.
bool load_ledger_cache(SumLedger& out, const SieveConfig& want, const std::string& path);

// Loads the ledger for `config` from cache_dir, or sieves and stores it.
SumLedger accumulate_cached(const SieveConfig& config, const std::string& cache_dir);

// One row per (checkpoint, k):  x,k,N_k,R_k,S_k,R2_star,T,E
void write_ledger_csv(const SumLedger& ledger, const Real& beta, const std::string& path,
                      const std::string& config_hash);

}  // namespace kap
