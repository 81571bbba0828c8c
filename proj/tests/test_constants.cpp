#include "kap/constants.hpp"
#include "kap/primes.hpp"

#include <cstdio>
#include <cstdint>

using namespace kap;

static int failures = 0;

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            std::printf("FAIL %s:%d  %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                 \
        }                                                               \
    } while (0)

#define CHECK_NEAR(a, b, tol) CHECK(abs((a) - (b)) < (tol))

static const ConstantsTable& table() {
    static ConstantsTable t = build_constants(ConstantsOptions{});
    return t;
}

static Real tol(int e) { return pow10_int(e); }

static void classic_constants() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    CHECK_NEAR(t.gamma, Real("0.57721566490153286060651209008240243104215933593992"), tol(-45));
    CHECK_NEAR(t.zeta[2], Real("1.6449340668482264364724151666460251892189499012068"), tol(-45));
    CHECK_NEAR(t.zeta[3], Real("1.2020569031595942853997381615114499907649862923405"), tol(-45));
    CHECK_NEAR(t.zeta[4], Real("1.0823232337111381915160036965411679027747509519187"), tol(-45));
}

// Independent oracle for the prime zeta values: a direct prime sum plus a
// certified tail interval, sum_{p>X} p^-j < X^{1-j} / ((j-1) ln X).
static void prime_zeta_interval() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    {
        // j = 3 at X = 3e7: tail < 3.3e-17, so this pins 15+ digits.
        Real head = 0;
        for_each_prime(30'000'000,
                       [&](std::uint64_t p) { head += Real(1) / (Real(p) * p * p); });
        Real bound = Real(1) / (Real(30'000'000) * 30'000'000 * 2 * log(Real(30'000'000)));
        CHECK(head < t.prime_zeta[3]);
        CHECK(t.prime_zeta[3] < head + bound);
        CHECK_NEAR(t.prime_zeta[3], head, tol(-15));
    }
    for (unsigned j : {2u, 4u, 5u, 8u}) {
        Real head = 0;
        for_each_prime(1'000'000, [&](std::uint64_t p) { head += pow(Real(p), -int(j)); });
        Real bound = pow(Real(1'000'000), 1 - int(j)) / ((j - 1) * log(Real(1'000'000)));
        CHECK(head < t.prime_zeta[j]);
        CHECK(t.prime_zeta[j] < head + bound);
    }
    // standalone entry point agrees with the table route
    CHECK_NEAR(prime_zeta(2, Precision{}), t.prime_zeta[2], tol(-45));
}

// beta = gamma + sum_p (ln(1-1/p) + 1/p); the summand is negative and the
// tail is bounded by sum_{p>X} 1/(2p(p-1)) < 1/(X ln X).
static void beta_interval() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    Real head = 0;
    for_each_prime(1'000'000,
                   [&](std::uint64_t p) { head += log(Real(1) - Real(1) / p) + Real(1) / p; });
    Real bound = Real(1) / (Real(1'000'000) * log(Real(1'000'000)));
    CHECK(t.beta < t.gamma + head);
    CHECK(t.gamma + head - bound < t.beta);
    CHECK_NEAR(mertens_beta(Precision{}), t.beta, tol(-45));
}

static void series_families() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    // c and c* in closed form against the independently checked ingredients
    CHECK_NEAR(t.c[1], t.beta, tol(-45));
    CHECK_NEAR(t.c_star[1], t.beta, tol(-45));
    CHECK_NEAR(t.c[2], t.prime_zeta[2] - t.zeta[2], tol(-45));
    CHECK_NEAR(t.c[3], t.prime_zeta[3] + t.zeta[3], tol(-45));
    CHECK_NEAR(t.c_star[2], -(t.prime_zeta[2] + t.zeta[2]), tol(-45));
    CHECK_NEAR(t.c_star[3], t.prime_zeta[3] + t.zeta[3], tol(-45));

    // nu: first values in closed form, then the table rows to printed digits
    CHECK_NEAR(t.nu[1], t.beta, tol(-45));
    CHECK_NEAR(t.nu[2], (t.prime_zeta[2] - t.zeta[2] + t.beta * t.beta) / 2, tol(-45));
    CHECK_NEAR(t.nu[2], Real("-0.562153"), tol(-6));
    CHECK_NEAR(t.nu[9], Real("1.5085e-3"), Real("1e-7"));
    CHECK_NEAR(t.nu[20], Real("1.80517e-7"), Real("1e-11"));
    CHECK(t.nu_star[0] == 1);
    CHECK_NEAR(t.nu_star[1], t.beta, tol(-45));
    CHECK_NEAR(t.nu_star[2], Real("-1.01440"), tol(-5));
    CHECK_NEAR(t.nu_star[10], Real("2.17630e-3"), Real("1e-8"));

    // d: no singleton parts, so d_1 = 0 and the first few are elementary
    CHECK(t.d[0] == 1 && t.d[1] == 0);
    CHECK_NEAR(t.d[2], t.prime_zeta[2] / 2, tol(-45));
    CHECK_NEAR(t.d[3], t.prime_zeta[3] / 3, tol(-45));
    CHECK_NEAR(t.d[4],
               t.prime_zeta[4] / 4 + t.prime_zeta[2] * t.prime_zeta[2] / 8, tol(-45));

    // alternating-series coefficients
    CHECK(t.qihu_a[0] == 1 && t.qihu_a[1] == 0);
    CHECK_NEAR(t.qihu_a[2], -t.zeta[2], tol(-45));
    CHECK_NEAR(t.qihu_a[3], 2 * t.zeta[3], tol(-45));

    // reciprocal-gamma Taylor coefficients: known heads, then rapid decay
    CHECK(t.inv_gamma_g[0] == 1);
    CHECK_NEAR(t.inv_gamma_g[1], t.gamma, tol(-45));
    CHECK_NEAR(t.inv_gamma_g[2], (t.gamma * t.gamma - t.zeta[2]) / 2, tol(-45));
    Real cap = 64;
    for (std::size_t m = 0; m < t.inv_gamma_g.size(); ++m) {
        CHECK(abs(t.inv_gamma_g[m]) < cap);
        cap /= 2;
    }
}

static void gamma_ratio_function() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    Real bg = t.beta - t.gamma;
    CHECK_NEAR(t.G_eval(Real(0)), Real(1), tol(-45));
    CHECK_NEAR(t.G_eval(Real(1)), exp(bg), tol(-44));
    CHECK_NEAR(t.G_eval(Real(3)), exp(3 * bg) / 6, tol(-44));
    CHECK(t.G_eval(Real(-1)) == 0);
    CHECK(t.G_eval(Real(-2)) == 0);
    // half-integer against Gamma(3/2) = sqrt(pi)/2
    CHECK_NEAR(t.G_eval(Real(1) / 2),
               exp(bg / 2) / Real("0.88622692545275801364908374167057259139877472806119"),
               tol(-40));

    // ordered-factorization coefficients: monic, and the subleading one is
    // k * beta
    for (unsigned k = 1; k <= 6; ++k) {
        CHECK_NEAR(t.tenenbaum_lambda(k, k), Real(1), tol(-45));
        CHECK_NEAR(t.tenenbaum_lambda(k - 1, k), k * t.beta, tol(-44));
    }
}

// The recurrences and the partition sums are fully independent routes.
static void partition_routes() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    for (unsigned k = 0; k <= 12; ++k) {
        CHECK_NEAR(t.nu[k], t.nu_via_partitions(k), tol(-45));
        CHECK_NEAR(t.nu_star[k], t.nu_star_via_partitions(k), tol(-45));
        CHECK_NEAR(t.d[k], t.d_via_partitions(k), tol(-45));
    }
}

static void euler_products() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    CHECK_NEAR(t.beta_p.at(2), Real("0.1893475"), Real("5e-7"));
    for (unsigned p : {2u, 3u, 5u, 7u})
        CHECK_NEAR(t.delta_p.at(p) * t.G_eval(Real(p)), t.beta_p.at(p), tol(-20));
    // signed factors: beta_3 carries the sign of (1 - 3/2)^{-1}
    CHECK(t.beta_p.at(3) < 0);
}

static void alpha1_value() {
    ScopedDigits scope(Precision{}.work_digits());
    CHECK_NEAR(table().alpha1, Real("1.332582"), tol(-5));
    // truncation monotonicity: lower precisions agree on shared digits
    ConstantsOptions lo;
    lo.prec.decimal_digits = 15;
    lo.k_max = 4;
    ConstantsOptions mid;
    mid.prec.decimal_digits = 30;
    mid.k_max = 4;
    Real a15 = build_constants(lo).alpha1;
    Real a30 = build_constants(mid).alpha1;
    CHECK_NEAR(a15, table().alpha1, tol(-13));
    CHECK_NEAR(a30, table().alpha1, tol(-28));
}

int main() {
    classic_constants();
    prime_zeta_interval();
    beta_interval();
    series_families();
    gamma_ratio_function();
    partition_routes();
    euler_products();
    alpha1_value();
    if (failures) {
        std::printf("test_constants: %d failure(s)\n", failures);
        return 1;
    }
    std::puts("test_constants: all checks passed");
    return 0;
}
