#pragma once

#include "kap/real.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace kap {

struct ConstantsOptions {
    Precision prec;
    unsigned k_max = 40;                     // range of c_j, nu_k, nu*_k, d_k, a_j
    unsigned beta_p_max = 7;                 // Euler-product constants for primes <= this
    std::uint64_t euler_cutoff = 1'000'000;  // head/tail split of the prime products
};

// Every scalar constant family, built eagerly at a fixed precision and then
// immutable (safe to share across threads). Indexing follows the math: c[j]
// for j >= 1 (c[0] unused), nu[k] for k >= 0, zeta[j]/prime_zeta[j] for j >= 2.
struct ConstantsTable {
    ConstantsOptions opt;

    Real gamma;
    Real beta;
    std::vector<Real> zeta;
    std::vector<Real> prime_zeta;
    std::vector<Real> c, c_star;
    std::vector<Real> nu, nu_star;
    std::vector<Real> d;
    std::vector<Real> inv_gamma_g;  // Taylor coefficients g_m of 1/Gamma(z+1)
    std::vector<Real> qihu_a;
    std::map<unsigned, Real> beta_p;
    std::map<unsigned, Real> delta_p;
    Real alpha1;

    // e^{(beta-gamma)z}/Gamma(z+1); exact factorial path at nonnegative
    // integers, truncated Taylor series on the base window (0,1] with the
    // recurrence Gamma(z+1) = z*Gamma(z) reaching everything else. Returns 0
    // at the poles z = -1, -2, ...
    Real G_eval(const Real& z) const;

    // Coefficient of X^j in the degree-k ordered-factorization polynomial:
    // sum_m multinomial(k; m, j, k-m-j) (beta-gamma)^{k-m-j} (1/Gamma)^(m)(1).
    Real tenenbaum_lambda(unsigned j, unsigned k) const;

    // Partition-sum routes, used as independent oracles for the recurrences.
    Real nu_via_partitions(unsigned k) const;
    Real nu_star_via_partitions(unsigned k) const;
    Real d_via_partitions(unsigned k) const;
};

ConstantsTable build_constants(const ConstantsOptions& opt);

// Standalone operations (the table builder uses the same code paths).
Real zeta_int(unsigned j, Precision prec);
Real prime_zeta(unsigned j, Precision prec);
Real mertens_beta(Precision prec);

// zeta at a real argument t > 1 (library evaluation, correctly rounded at the
// current default precision).
Real zeta_real(const Real& t);

// n! as a Real at current precision.
Real fact_real(unsigned n);

}  // namespace kap
