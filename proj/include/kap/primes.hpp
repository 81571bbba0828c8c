#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace kap {

// Odd-only bitset sieve over [2, n]; calls visit(p) for each prime ascending.
// Memory: n/16 bytes, so 1e8 costs ~6 MB.
void for_each_prime(std::uint64_t n, const std::function<void(std::uint64_t)>& visit);

// All primes <= n, ascending. Empty for n < 2.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Moebius function on [0, n] (mu[0] unused, set to 0).
std::vector<std::int8_t> mobius_up_to(std::uint32_t n);

// Trial-division primality for small arguments (config validation only).
bool is_prime_u64(std::uint64_t n);

}  // namespace kap
