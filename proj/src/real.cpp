#include "kap/real.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace kap {

Real Precision::series_abs_tol() const {
    return pow10_int(-static_cast<long>(decimal_digits) - 5);
}

Real euler_gamma() {
    Real g;
    mpfr_const_euler(g.backend().data(), MPFR_RNDN);
    return g;
}

Real riemann_zeta_ui(unsigned j) {
    if (j < 2) throw std::domain_error("riemann_zeta_ui: j must be >= 2");
    Real z;
    mpfr_zeta_ui(z.backend().data(), j, MPFR_RNDN);
    return z;
}

Real pow10_int(long e) {
    return pow(Real(10), static_cast<int>(e));
}

std::string dec_str(const Real& v, unsigned digits) {
    return v.str(digits, std::ios_base::scientific);
}

Real parse_real(const std::string& s) {
    return Real(s);
}

}  // namespace kap
