#include "kap/poly.hpp"

#include "kap/partitions.hpp"

#include <json.hpp>

#include <stdexcept>

namespace kap {

namespace {

constexpr unsigned kMaxDegree = 30;

void check_degree(unsigned k) {
    if (k > kMaxDegree) throw std::invalid_argument("polynomial degree above 30");
}

Real ipow(const Real& base, unsigned e) {
    Real r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

DensePoly build_Sk_tenenbaum(unsigned k, const ConstantsTable& tbl) {
    check_degree(k);
    DensePoly p;
    p.variable_tag = PolyVar::Y_loglog;
    p.coeffs.reserve(k + 1);
    for (unsigned j = 0; j <= k; ++j) p.coeffs.push_back(tbl.tenenbaum_lambda(j, k));
    return p;
}

DensePoly build_Sk_qihu(unsigned k, const ConstantsTable& tbl) {
    check_degree(k);
    if (k >= tbl.qihu_a.size())
        throw std::domain_error("build_Sk_qihu: k beyond table range");
    DensePoly p;
    p.variable_tag = PolyVar::X_loglog_plus_beta;
    p.coeffs.reserve(k + 1);
    Real binom = 1;  // (k choose j), updated incrementally
    for (unsigned j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        p.coeffs.push_back(binom * tbl.qihu_a[k - j]);
    }
    return p;
}

DensePoly build_Vk(unsigned k, const ConstantsTable& tbl) {
    check_degree(k);
    if (k >= tbl.nu.size()) throw std::domain_error("build_Vk: k beyond table range");
    DensePoly p;
    p.variable_tag = PolyVar::Y_loglog;
    p.coeffs.reserve(k + 1);
    for (unsigned j = 0; j <= k; ++j) p.coeffs.push_back(tbl.nu[k - j] / fact_real(j));
    return p;
}

DensePoly build_Wk(unsigned k, const ConstantsTable& tbl) {
    check_degree(k);
    if (k >= tbl.prime_zeta.size())
        throw std::domain_error("build_Wk: k beyond table range");
    std::vector<DensePoly> s_cache(k + 1);
    for (unsigned n = 0; n <= k; ++n) s_cache[n] = build_Sk_tenenbaum(n, tbl);

    DensePoly p;
    p.variable_tag = PolyVar::Y_loglog;
    p.coeffs.assign(k + 1, Real(0));
    for_each_partition(k, 1, [&](const std::vector<unsigned>& mult) {
        const unsigned n1 = k >= 1 ? mult[1] : 0;
        Real factor = 1 / fact_real(n1);
        for (unsigned j = 2; j <= k; ++j) {
            if (mult[j] == 0) continue;
            factor *= ipow(tbl.prime_zeta[j] / j, mult[j]) / fact_real(mult[j]);
        }
        const DensePoly& s = s_cache[n1];
        for (unsigned i = 0; i < s.coeffs.size(); ++i) p.coeffs[i] += factor * s.coeffs[i];
    });
    return p;
}

DensePoly build_Rk_special(unsigned k, const ConstantsTable& tbl) {
    const Real& p2 = tbl.prime_zeta[2];
    const Real& z2 = tbl.zeta[2];
    DensePoly p;
    p.variable_tag = PolyVar::X_loglog_plus_beta;
    switch (k) {
        case 2:
            p.coeffs = {(p2 - z2) / 2, Real(0), Real(1) / 2};
            break;
        case 3: {
            const Real& p3 = tbl.prime_zeta[3];
            const Real& z3 = tbl.zeta[3];
            p.coeffs = {(p3 + z3) / 3, (p2 - z2) / 2, Real(0), Real(1) / 6};
            break;
        }
        case 4: {
            const Real& p3 = tbl.prime_zeta[3];
            const Real& z3 = tbl.zeta[3];
            const Real& p4 = tbl.prime_zeta[4];
            const Real& z4 = tbl.zeta[4];
            Real c0 = p4 / 4 + z4 / 16 + p2 * p2 / 8 - p2 * z2 / 4;
            p.coeffs = {c0, (p3 + z3) / 3, (p2 - z2) / 4, Real(0), Real(1) / 24};
            break;
        }
        default:
            throw std::domain_error("build_Rk_special: only k in {2,3,4}");
    }
    return p;
}

DensePoly shift_poly(const DensePoly& p, const Real& s) {
    DensePoly q;
    q.coeffs.assign(p.coeffs.size(), Real(0));
    q.variable_tag = p.variable_tag;
    if (s != 0)
        q.variable_tag = p.variable_tag == PolyVar::X_loglog_plus_beta
                             ? PolyVar::Y_loglog
                             : PolyVar::X_loglog_plus_beta;
    // q_j = sum_{i>=j} p_i (i choose j) s^{i-j}
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        Real term = p.coeffs[i];  // p_i (i choose j) s^{i-j}, walked down from j=i
        q.coeffs[i] += term;
        for (std::size_t j = i; j-- > 0;) {
            term = term * s * static_cast<unsigned>(j + 1) / static_cast<unsigned>(i - j);
            q.coeffs[j] += term;
        }
    }
    return q;
}

Real eval_poly(const DensePoly& p, const Real& y) {
    Real r = 0;
    for (std::size_t i = p.coeffs.size(); i-- > 0;) r = r * y + p.coeffs[i];
    return r;
}

Real max_coeff_diff(const DensePoly& a, const DensePoly& b) {
    Real m = 0;
    const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
        Real av = i < a.coeffs.size() ? a.coeffs[i] : Real(0);
        Real bv = i < b.coeffs.size() ? b.coeffs[i] : Real(0);
        Real d = abs(av - bv);
        if (d > m) m = d;
    }
    return m;
}

std::string poly_json(const DensePoly& p, unsigned digits) {
    nlohmann::json j;
    j["variable"] =
        p.variable_tag == PolyVar::X_loglog_plus_beta ? "X_loglog_plus_beta" : "Y_loglog";
    nlohmann::json arr = nlohmann::json::array();
    for (const Real& c : p.coeffs) arr.push_back(dec_str(c, digits));
    j["coeffs"] = arr;
    return j.dump(2);
}

}  // namespace kap
