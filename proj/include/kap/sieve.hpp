#pragma once

#include "kap/dd.hpp"
#include "kap/kernels.hpp"
#include "kap/real.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace kap {

struct SieveConfig {
    std::uint64_t limit = 0;
    std::uint64_t segment_size = 1ull << 22;
    unsigned thread_count = 1;
    std::vector<std::uint64_t> checkpoints;  // sorted, strictly increasing, last == limit
    unsigned k_max = 8;
    SimdMode simd = SimdMode::Auto;

    void validate() const;  // throws std::invalid_argument on any violation
};

// Factorization data for the integer range [base, base+len).
struct OmegaSegment {
    std::uint64_t base = 0;
    std::vector<std::uint8_t> omega;        // Omega(base+i)
    std::vector<std::uint8_t> squarefree;   // 0/1 flags
    std::vector<std::uint64_t> denom_fact;  // prod e_i! over factorization exponents
};

// Saturation marker for denom_fact once the true product leaves u64 range
// (only reachable for Omega >= 21, far above any tracked k).
inline constexpr std::uint64_t kDenomSaturated = ~0ull;

// Ordered prime factorization count f(n) = Omega(n)!/prod e_i!.
std::uint64_t ordered_factorizations(std::uint8_t omega, std::uint64_t denom_fact);

OmegaSegment sieve_segment(std::uint64_t base, std::uint64_t len,
                           const std::vector<std::uint64_t>& base_primes);

inline constexpr unsigned kMomentOrder = 6;

// Accumulator snapshot at n = x inclusive. All sums are triple-double: exact
// enough for 30+ digits at x = 1e9 (see the dd.hpp budget) and bit-identical
// across runs and thread counts.
struct CheckpointRow {
    std::uint64_t x = 0;
    std::vector<std::uint64_t> N;  // counts of {n <= x: Omega(n) = k}, k = 0..k_max
    std::uint64_t N_over = 0;      // count with Omega > k_max
    std::vector<TD> R;             // sum 1/n over Omega(n) = k
    std::vector<TD> S;             // sum f(n)/n over Omega(n) = k
    TD R_over{};                   // sum 1/n over Omega(n) > k_max
    TD R2_star{};                  // sum 1/n over squarefree semiprimes
    TD T{};                        // sum of prime reciprocals (== R[1])
    std::array<TD, kMomentOrder + 1> logp_moments{};  // [j] = sum log^j p / p, j >= 1
    // [j] = integral_2^x (T(t) - loglog t)(log t)^{j-1} dt/t for j = 1..3,
    // computed exactly piecewise between primes (beta is subtracted later,
    // analytically, by the gamma_j consumer).
    std::array<double, 4> drift_integral{};
};

struct SumLedger {
    SieveConfig config;
    std::vector<CheckpointRow> rows;  // one per checkpoint, ascending x

    const CheckpointRow& at(std::uint64_t x) const;  // throws if x not a checkpoint
};

// Lossless widening of a triple-double sum into the working precision.
inline Real td_real(const TD& t) { return Real(t.t0) + Real(t.t1) + Real(t.t2); }

struct ErrorSample {
    std::uint64_t x;
    Real E;  // T(x) - loglog x - beta
};

SumLedger accumulate(const SieveConfig& config);
std::vector<ErrorSample> error_samples(const SumLedger& ledger, const Real& beta);

// P_k(x): sum of 1/n over Omega(n) = k with largest prime factor <= x, via the
// complete-homogeneous recurrence h_k = (1/k) sum_j pi_j h_{k-j} over
// truncated prime zeta values pi_j = sum_{p<=x} p^{-j}.
Real smooth_reciprocal(unsigned k, std::uint64_t x, Precision prec);

}  // namespace kap
