#include "kap/poly.hpp"

#include <json.hpp>

#include <cstdio>
#include <stdexcept>

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

static void shapes_and_closed_forms() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    Real tight("1e-45");

    DensePoly s0 = build_Sk_tenenbaum(0, t);
    CHECK(s0.coeffs.size() == 1 && s0.coeffs[0] == 1);
    DensePoly s2 = build_Sk_tenenbaum(2, t);
    CHECK(s2.variable_tag == PolyVar::Y_loglog && s2.degree() == 2);
    CHECK_NEAR(s2.coeffs[2], Real(1), tight);
    CHECK_NEAR(s2.coeffs[1], 2 * t.beta, tight);
    CHECK_NEAR(s2.coeffs[0], t.beta * t.beta - t.zeta[2], tight);

    DensePoly q2 = build_Sk_qihu(2, t);
    CHECK(q2.variable_tag == PolyVar::X_loglog_plus_beta);
    CHECK_NEAR(q2.coeffs[2], Real(1), tight);
    CHECK(q2.coeffs[1] == 0);
    CHECK_NEAR(q2.coeffs[0], -t.zeta[2], tight);

    DensePoly v2 = build_Vk(2, t);
    CHECK(v2.variable_tag == PolyVar::Y_loglog && v2.degree() == 2);
    CHECK_NEAR(v2.coeffs[2], Real(1) / 2, tight);
    CHECK_NEAR(v2.coeffs[1], t.beta, tight);
    CHECK_NEAR(v2.coeffs[0], t.nu[2], tight);

    bool threw = false;
    try {
        build_Sk_tenenbaum(31, t);
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    CHECK(threw);
    threw = false;
    try {
        build_Rk_special(5, t);
    } catch (const std::domain_error&) {
        threw = true;
    }
    CHECK(threw);
}

// The two coefficient routes describe one polynomial family in different
// variables; recentering by beta must superpose them.
static void route_equivalences() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    Real tol("1e-40");
    for (unsigned k = 0; k <= 8; ++k) {
        DensePoly shifted = shift_poly(build_Sk_qihu(k, t), t.beta);
        CHECK(max_coeff_diff(shifted, build_Sk_tenenbaum(k, t)) < tol);
        CHECK(shifted.variable_tag == PolyVar::Y_loglog);
    }
    for (unsigned k = 0; k <= 12; ++k)
        CHECK(max_coeff_diff(build_Wk(k, t), build_Vk(k, t)) < Real("1e-45"));
    for (unsigned k : {2u, 3u, 4u})
        CHECK(max_coeff_diff(shift_poly(build_Rk_special(k, t), t.beta), build_Vk(k, t)) <
              Real("1e-45"));
    // spot evaluation at x = e^e (loglog x = 1)
    Real at_e = eval_poly(build_Rk_special(2, t), 1 + t.beta);
    CHECK_NEAR(at_e, (1 + t.beta) * (1 + t.beta) / 2 + (t.prime_zeta[2] - t.zeta[2]) / 2,
               Real("1e-45"));
    CHECK_NEAR(at_e, eval_poly(build_Vk(2, t), Real(1)), Real("1e-45"));
}

static void shift_behavior() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    DensePoly p = build_Sk_tenenbaum(6, t);

    DensePoly back = shift_poly(shift_poly(p, Real(27) / 10), Real(-27) / 10);
    CHECK(max_coeff_diff(back, p) < Real("1e-42"));
    CHECK(back.variable_tag == p.variable_tag);  // two flips

    DensePoly same = shift_poly(p, Real(0));
    CHECK(same.variable_tag == p.variable_tag);
    CHECK(max_coeff_diff(same, p) == 0);

    // shift of a cubic against the hand-expanded binomials
    DensePoly cubic;
    cubic.coeffs = {Real(1), Real(2), Real(3), Real(4)};
    DensePoly sh = shift_poly(cubic, Real(2));
    // (coefficients of 1 + 2(y+2) + 3(y+2)^2 + 4(y+2)^3)
    CHECK_NEAR(sh.coeffs[0], Real(49), Real("1e-45"));
    CHECK_NEAR(sh.coeffs[1], Real(62), Real("1e-45"));
    CHECK_NEAR(sh.coeffs[2], Real(27), Real("1e-45"));
    CHECK_NEAR(sh.coeffs[3], Real(4), Real("1e-45"));
}

static void eval_and_diff() {
    DensePoly p;
    p.coeffs = {Real(1), Real(2), Real(3)};
    CHECK(eval_poly(p, Real(2)) == 17);
    DensePoly none;
    CHECK(eval_poly(none, Real(5)) == 0);

    DensePoly longer;
    longer.coeffs = {Real(1), Real(2), Real(3), Real(5)};
    CHECK(max_coeff_diff(p, longer) == 5);
    CHECK(max_coeff_diff(longer, p) == 5);
}

static void json_output() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    DensePoly v3 = build_Vk(3, t);
    std::string s1 = poly_json(v3, 30);
    CHECK(s1 == poly_json(v3, 30));

    nlohmann::json j = nlohmann::json::parse(s1);
    CHECK(j.at("variable") == "Y_loglog");
    CHECK(j.at("coeffs").size() == 4);
    for (unsigned i = 0; i <= 3; ++i) {
        Real round = parse_real(j.at("coeffs")[i].get<std::string>());
        CHECK_NEAR(round, v3.coeffs[i], Real("1e-28"));
    }
    nlohmann::json jq = nlohmann::json::parse(poly_json(build_Sk_qihu(2, t), 20));
    CHECK(jq.at("variable") == "X_loglog_plus_beta");
}

int main() {
    shapes_and_closed_forms();
    route_equivalences();
    shift_behavior();
    eval_and_diff();
    json_output();
    if (failures) {
        std::printf("test_poly: %d failure(s)\n", failures);
        return 1;
    }
    std::puts("test_poly: all checks passed");
    return 0;
}
