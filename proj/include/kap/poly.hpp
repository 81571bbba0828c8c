#pragma once

#include "kap/constants.hpp"
#include "kap/real.hpp"

#include <string>
#include <vector>

namespace kap {

// Which quantity the indeterminate stands for. X is loglog x + beta, Y is
// plain loglog x; a nonzero shift re-expresses one in the other, so
// shift_poly flips the tag.
enum class PolyVar { X_loglog_plus_beta, Y_loglog };

struct DensePoly {
    std::vector<Real> coeffs;  // ascending degree; highest entry nonzero unless zero poly
    PolyVar variable_tag = PolyVar::Y_loglog;

    unsigned degree() const {
        return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1);
    }
};

// Ordered-factorization polynomial S_k with coefficients lambda_{j,k}; monic,
// in Y.
DensePoly build_Sk_tenenbaum(unsigned k, const ConstantsTable& tbl);

// Same polynomial family in X with coefficients (k choose j) a_{k-j}.
DensePoly build_Sk_qihu(unsigned k, const ConstantsTable& tbl);

// V_k(Y) = sum_j nu_{k-j}/j! Y^j, the expansion main term for reciprocal sums
// of numbers with k prime factors.
DensePoly build_Vk(unsigned k, const ConstantsTable& tbl);

// W_k(Y) = sum over partitions of k of S_{n_1}(Y)/n_1! prod_{j>=2}(P(j)/j)^{n_j}/n_j!;
// equals V_k coefficientwise.
DensePoly build_Wk(unsigned k, const ConstantsTable& tbl);

// Hard-coded closed forms of the k = 2, 3, 4 main terms in X, kept
// independent of the recurrences for regression.
DensePoly build_Rk_special(unsigned k, const ConstantsTable& tbl);

// q with q(Y) = p(Y+s).
DensePoly shift_poly(const DensePoly& p, const Real& s);

Real eval_poly(const DensePoly& p, const Real& y);

// max_j |a_j - b_j| (absolute, over the longer coefficient list).
Real max_coeff_diff(const DensePoly& a, const DensePoly& b);

std::string poly_json(const DensePoly& p, unsigned digits);

}  // namespace kap
