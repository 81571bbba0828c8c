#include "kap/primes.hpp"

#include <cmath>

namespace kap {

void for_each_prime(std::uint64_t n, const std::function<void(std::uint64_t)>& visit) {
    if (n < 2) return;
    visit(2);
    if (n < 3) return;
    // bit i represents the odd number 2i+1; index 0 (the unit 1) stays unset.
    std::uint64_t nbits = (n - 1) / 2 + 1;
    std::vector<std::uint64_t> composite((nbits + 63) / 64, 0);
    auto test = [&](std::uint64_t i) { return (composite[i >> 6] >> (i & 63)) & 1u; };
    auto set = [&](std::uint64_t i) { composite[i >> 6] |= std::uint64_t(1) << (i & 63); };
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= n; ++i) {
        if (test(i)) continue;
        std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j < nbits; j += p) set(j);
    }
    for (std::uint64_t i = 1; i < nbits; ++i)
        if (!test(i)) visit(2 * i + 1);
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n > 100) out.reserve(static_cast<std::size_t>(1.2 * double(n) / std::log(double(n))));
    for_each_prime(n, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::vector<std::int8_t> mobius_up_to(std::uint32_t n) {
    std::vector<std::int8_t> mu(n + 1, 1);
    std::vector<std::uint32_t> lp(n + 1, 0);  // least prime factor
    mu[0] = 0;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (lp[i] == 0) {
            for (std::uint64_t j = i; j <= n; j += i)
                if (lp[j] == 0) lp[static_cast<std::uint32_t>(j)] = i;
        }
    }
    for (std::uint32_t i = 2; i <= n; ++i) {
        std::uint32_t p = lp[i];
        std::uint32_t q = i / p;
        mu[i] = (q % p == 0) ? 0 : static_cast<std::int8_t>(-mu[q]);
    }
    return mu;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace kap
