#include "kap/constants.hpp"

#include "kap/partitions.hpp"
#include "kap/primes.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kap {

namespace {

constexpr double kBitsPerDigit = 3.3219280948873623;

// Number of 2^{-m} sized terms needed before a series tail clears the
// absolute tolerance 10^{-(digits+5)}, plus a guard.
unsigned dyadic_terms(unsigned decimal_digits, unsigned guard) {
    return static_cast<unsigned>((decimal_digits + 5) * kBitsPerDigit) + guard;
}

Real ipow(const Real& base, unsigned e) {
    Real r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

// P(j) = sum_n mu(n)/n * log zeta(nj). log zeta(t) < 2^{1-t} for t >= 2, so
// truncating at n with (n+1)j > bits leaves a tail below 2^{1-bits}.
Real prime_zeta_moebius(unsigned j, double bits, const std::vector<std::int8_t>& mu,
                        const std::vector<Real>* zeta_cache) {
    unsigned nmax = static_cast<unsigned>(bits / j) + 2;
    Real acc = 0;
    for (unsigned n = 1; n <= nmax; ++n) {
        if (mu[n] == 0) continue;
        Real z = (zeta_cache && n * j < zeta_cache->size()) ? (*zeta_cache)[n * j]
                                                           : riemann_zeta_ui(n * j);
        Real term = log(z) / n;
        if (mu[n] > 0) acc += term; else acc -= term;
    }
    return acc;
}

std::vector<std::int8_t> moebius_for(double bits) {
    return mobius_up_to(static_cast<std::uint32_t>(bits / 2) + 3);
}

// -zeta'(t)/zeta(t) = sum_n Lambda(n) n^{-t}, with the derivative taken by a
// central difference at raised precision. Truncation error is
// |zeta'''| h^2/6 <= 2^{-t} 10^{-2h_digits}/2 and the rounding error after
// dividing by 2h is 10^{-(E - h_digits)}; both sit far below the series
// tolerance for E = 3w/2 + 18, h_digits = w/2 + 8 at working digits w.
Real lambda_sum(unsigned t, unsigned work_digits) {
    unsigned h_digits = work_digits / 2 + 8;
    ScopedDigits raise(3 * work_digits / 2 + 18);
    Real h = pow10_int(-static_cast<long>(h_digits));
    Real tt(t);
    Real deriv = (zeta_real(tt + h) - zeta_real(tt - h)) / (2 * h);
    return -deriv / riemann_zeta_ui(t);
}

}  // namespace

Real zeta_real(const Real& t) {
    Real r;
    mpfr_zeta(r.backend().data(), t.backend().data(), MPFR_RNDN);
    return r;
}

Real fact_real(unsigned n) {
    Real f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

Real zeta_int(unsigned j, Precision prec) {
    if (j < 2) throw std::domain_error("zeta_int: argument must be >= 2");
    ScopedDigits scope(prec.work_digits());
    return riemann_zeta_ui(j);
}

Real prime_zeta(unsigned j, Precision prec) {
    if (j < 2) throw std::domain_error("prime_zeta: argument must be >= 2");
    ScopedDigits scope(prec.work_digits());
    double bits = (prec.decimal_digits + 5) * kBitsPerDigit + 4;
    return prime_zeta_moebius(j, bits, moebius_for(bits), nullptr);
}

Real mertens_beta(Precision prec) {
    ScopedDigits scope(prec.work_digits());
    unsigned M = dyadic_terms(prec.decimal_digits, 6);
    double bits = (prec.decimal_digits + 5) * kBitsPerDigit + 4;
    auto mu = moebius_for(bits);
    Real b = euler_gamma();
    for (unsigned m = 2; m <= M; ++m)
        b -= prime_zeta_moebius(m, bits, mu, nullptr) / m;
    return b;
}

ConstantsTable build_constants(const ConstantsOptions& opt) {
    ConstantsTable t;
    t.opt = opt;
    ScopedDigits scope(opt.prec.work_digits());
    const unsigned digits = opt.prec.decimal_digits;
    const unsigned K = opt.k_max;

    // Dyadic series cutoff; also the upper index of the zeta / prime zeta
    // caches. Everything consuming index j <= K must have K <= M.
    const unsigned M = dyadic_terms(digits, 6);
    if (K > M) throw std::invalid_argument("build_constants: k_max exceeds series range");
    if (digits > 110)
        throw std::invalid_argument("build_constants: decimal_digits above 110 is not supported");

    t.gamma = euler_gamma();

    const unsigned g_top = M + 16;  // 1/Gamma Taylor range, also needs zeta
    t.zeta.assign(g_top + 1, Real(0));
    for (unsigned j = 2; j <= g_top; ++j) t.zeta[j] = riemann_zeta_ui(j);

    const double bits = (digits + 5) * kBitsPerDigit + 4;
    auto mu = moebius_for(bits);
    t.prime_zeta.assign(M + 1, Real(0));
    for (unsigned j = 2; j <= M; ++j)
        t.prime_zeta[j] = prime_zeta_moebius(j, bits, mu, &t.zeta);

    // beta = gamma - sum_{m>=2} P(m)/m, tail below 3*2^{-M}/M.
    t.beta = t.gamma;
    for (unsigned m = 2; m <= M; ++m) t.beta -= t.prime_zeta[m] / m;

    // Log-derivative coefficients of nu(z) and nu*(z).
    t.c.assign(K + 1, Real(0));
    t.c_star.assign(K + 1, Real(0));
    if (K >= 1) {
        t.c[1] = t.beta;
        t.c_star[1] = t.beta;
    }
    for (unsigned j = 2; j <= K; ++j) {
        if (j % 2 == 0) {
            t.c[j] = t.prime_zeta[j] - t.zeta[j];
            t.c_star[j] = -(t.prime_zeta[j] + t.zeta[j]);
        } else {
            t.c[j] = t.prime_zeta[j] + t.zeta[j];
            t.c_star[j] = t.prime_zeta[j] + t.zeta[j];
        }
    }

    t.nu.assign(K + 1, Real(0));
    t.nu_star.assign(K + 1, Real(0));
    t.nu[0] = 1;
    t.nu_star[0] = 1;
    for (unsigned k = 1; k <= K; ++k) {
        Real s = 0, s2 = 0;
        for (unsigned j = 1; j <= k; ++j) {
            s += t.c[j] * t.nu[k - j];
            s2 += t.c_star[j] * t.nu_star[k - j];
        }
        t.nu[k] = s / k;
        t.nu_star[k] = s2 / k;
    }

    // Squarefull densities: d_0 = 1, d_1 = 0 (no singleton parts).
    t.d.assign(K + 1, Real(0));
    t.d[0] = 1;
    for (unsigned k = 2; k <= K; ++k) {
        Real s = 0;
        for (unsigned j = 2; j <= k; ++j) s += t.prime_zeta[j] * t.d[k - j];
        t.d[k] = s / k;
    }

    // Taylor coefficients of 1/Gamma(z+1) from its logarithm
    // gamma z - sum_{i>=2} zeta(i)(-z)^i / i: m g_m = sum_i s_i g_{m-i} with
    // s_1 = gamma, s_i = (-1)^{i+1} zeta(i).
    t.inv_gamma_g.assign(g_top + 1, Real(0));
    t.inv_gamma_g[0] = 1;
    {
        std::vector<Real> s(g_top + 1, Real(0));
        s[1] = t.gamma;
        for (unsigned i = 2; i <= g_top; ++i)
            s[i] = (i % 2 == 1) ? t.zeta[i] : -t.zeta[i];
        for (unsigned m = 1; m <= g_top; ++m) {
            Real acc = 0;
            for (unsigned i = 1; i <= m; ++i) acc += s[i] * t.inv_gamma_g[m - i];
            t.inv_gamma_g[m] = acc / m;
        }
    }

    // a_0 = 1, a_1 = 0, a_j = sum_{i=1}^{j-1} (-1)^i C(j-1,i) i! zeta(i+1) a_{j-1-i}.
    t.qihu_a.assign(K + 1, Real(0));
    t.qihu_a[0] = 1;
    for (unsigned j = 2; j <= K; ++j) {
        Real acc = 0;
        Real binom = 1, fact = 1;
        for (unsigned i = 1; i <= j - 1; ++i) {
            binom = binom * (j - i) / i;  // C(j-1, i)
            fact *= i;
            Real term = binom * fact * t.zeta[i + 1] * t.qihu_a[j - 1 - i];
            if (i % 2 == 1) acc -= term; else acc += term;
        }
        t.qihu_a[j] = acc;
    }

    // Euler-product constants beta_p and delta_p, head over primes <= X0 and
    // prime zeta tails for the remainder:
    //   log[(1-p/p')^{-1}(1-1/p')^p] = sum_{m>=2} (p^m - p)/m * p'^{-m}
    //   log[(1-p/p')^{-1}e^{-p/p'}]  = sum_{m>=2}  p^m     /m * p'^{-m}
    // Factors with p' < p are negative, so the head product carries the sign
    // (-1)^{pi(p-1)} and the tail only rescales it.
    {
        const std::uint64_t X0 = opt.euler_cutoff;
        unsigned m_all = 2;
        {
            double lt = -static_cast<double>(digits + 7);  // log10 of tolerance
            double lp = std::log10(static_cast<double>(opt.beta_p_max));
            double lx = std::log10(static_cast<double>(X0));
            while (m_all < 64 && m_all * lp - (m_all - 1.0) * lx > lt) ++m_all;
        }

        std::vector<Real> headP(m_all + 1, Real(0));
        Real s_inv = 0;
        std::vector<std::uint64_t> ps = primes_up_to(X0);
        std::vector<Real> invs;
        invs.reserve(ps.size());
        for (std::uint64_t q : ps) {
            Real inv = Real(1) / Real(q);
            s_inv += inv;
            Real w = inv;
            for (unsigned m = 2; m <= m_all; ++m) {
                w *= inv;
                headP[m] += w;
            }
            invs.push_back(inv);
        }

        for (std::uint64_t pu = 2; pu <= opt.beta_p_max; ++pu) {
            if (!is_prime_u64(pu)) continue;
            unsigned p = static_cast<unsigned>(pu);
            Real rp(p);
            Real prod_v = 1;   // prod (1 - p/p')^{-1}
            Real prod_up = 1;  // prod (1 - 1/p')^p
            for (std::size_t i = 0; i < ps.size(); ++i) {
                if (ps[i] == pu) continue;
                const Real& inv = invs[i];
                prod_v /= 1 - rp * inv;
                prod_up *= ipow(1 - inv, p);
            }
            Real t_beta = 0, t_delta = 0;
            Real pm = rp;
            for (unsigned m = 2; m <= m_all; ++m) {
                pm *= rp;
                Real tail = t.prime_zeta[m] - headP[m];
                t_beta += (pm - rp) / m * tail;
                t_delta += pm / m * tail;
            }
            Real head_b = ipow(1 - 1 / rp, p) / fact_real(p);
            t.beta_p[p] = head_b * prod_up * prod_v * exp(t_beta);
            t.delta_p[p] = exp(-1 - rp * (s_inv - 1 / rp)) * prod_v * exp(t_delta);
        }
    }

    // alpha_1 = gamma + sum_{m>=2} sum_p log(p) p^{-m}. The inner prime sum
    // comes from Moebius inversion of -zeta'/zeta for small m and collapses
    // to primes <= 101 once m >= 60 (the p = 103 term is below 103^{-60},
    // which is why decimal_digits is capped at 110 above). The log-derivative
    // values are cached by argument; distinct arguments across all (m, k)
    // pairs stay within the series range.
    {
        Real a = t.gamma;
        const unsigned wd = opt.prec.work_digits();
        const unsigned t_top = static_cast<unsigned>((digits + 5) * kBitsPerDigit) + 5;
        std::map<unsigned, Real> nl_cache;
        auto nl = [&](unsigned arg) -> const Real& {
            auto it = nl_cache.find(arg);
            if (it == nl_cache.end())
                it = nl_cache.emplace(arg, lambda_sum(arg, wd)).first;
            return it->second;
        };
        for (unsigned m = 2; m < 60 && m <= M; ++m) {
            Real lp = 0;
            for (unsigned k = 1; k * m <= t_top && k < mu.size(); ++k) {
                if (mu[k] == 0) continue;
                if (mu[k] > 0) lp += nl(k * m); else lp -= nl(k * m);
            }
            a += lp;
        }
        if (M >= 60) {
            std::vector<std::uint64_t> small = primes_up_to(101);
            std::vector<Real> lg, pw;
            for (std::uint64_t q : small) {
                lg.push_back(log(Real(q)));
                Real inv = Real(1) / Real(q);
                pw.push_back(ipow(inv, 59));
            }
            for (unsigned m = 60; m <= M; ++m) {
                Real lp = 0;
                for (std::size_t i = 0; i < small.size(); ++i) {
                    pw[i] /= Real(small[i]);
                    lp += lg[i] * pw[i];
                }
                a += lp;
            }
        }
        t.alpha1 = a;
    }

    return t;
}

Real ConstantsTable::G_eval(const Real& z) const {
    Real bg = beta - gamma;
    if (z == floor(z)) {
        long n = z.convert_to<long>();
        if (n < 0) return Real(0);
        return exp(bg * z) / fact_real(static_cast<unsigned>(n));
    }
    // Walk 1/Gamma(w+1) into the base window w in (0,1) using
    // 1/Gamma(z+1) = (1/z) * 1/Gamma(z) and its inverse.
    Real w = z;
    Real adjust = 1;
    int guard = 0;
    while (w > 1) {
        adjust /= w;
        w -= 1;
        if (++guard > 100000) throw std::invalid_argument("G_eval: argument too large");
    }
    while (w < 0) {
        adjust *= w + 1;
        w += 1;
        if (++guard > 100000) throw std::invalid_argument("G_eval: argument too large");
    }
    Real s = 0;
    for (std::size_t m = inv_gamma_g.size(); m-- > 0;) s = s * w + inv_gamma_g[m];
    return exp(bg * z) * adjust * s;
}

Real ConstantsTable::tenenbaum_lambda(unsigned j, unsigned k) const {
    if (j > k) throw std::domain_error("tenenbaum_lambda: need j <= k");
    if (k >= inv_gamma_g.size())
        throw std::domain_error("tenenbaum_lambda: k beyond table range");
    Real bg = beta - gamma;
    std::vector<Real> bgpow(k - j + 1, Real(1));
    for (unsigned i = 1; i <= k - j; ++i) bgpow[i] = bgpow[i - 1] * bg;
    Real s = 0;
    for (unsigned m = 0; m <= k - j; ++m)
        s += inv_gamma_g[m] * bgpow[k - j - m] / fact_real(k - j - m);
    return fact_real(k) / fact_real(j) * s;
}

namespace {

// Shared partition-sum kernel: sum over partitions of k (parts >= min_part)
// of prod_j (coef[j]/j)^{n_j} / n_j!.
Real partition_sum(unsigned k, unsigned min_part, const std::vector<Real>& coef) {
    Real total = 0;
    for_each_partition(k, min_part, [&](const std::vector<unsigned>& mult) {
        Real term = 1;
        for (unsigned j = 1; j <= k; ++j) {
            if (mult[j] == 0) continue;
            term *= ipow(coef[j] / j, mult[j]) / fact_real(mult[j]);
        }
        total += term;
    });
    return total;
}

}  // namespace

Real ConstantsTable::nu_via_partitions(unsigned k) const {
    if (k >= c.size()) throw std::domain_error("nu_via_partitions: k beyond table range");
    return partition_sum(k, 1, c);
}

Real ConstantsTable::nu_star_via_partitions(unsigned k) const {
    if (k >= c_star.size())
        throw std::domain_error("nu_star_via_partitions: k beyond table range");
    return partition_sum(k, 1, c_star);
}

Real ConstantsTable::d_via_partitions(unsigned k) const {
    if (k == 0) return Real(1);
    if (k >= prime_zeta.size())
        throw std::domain_error("d_via_partitions: k beyond table range");
    return partition_sum(k, 2, prime_zeta);
}

}  // namespace kap
