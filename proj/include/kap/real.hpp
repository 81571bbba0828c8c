#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace kap {

// Arbitrary-precision real. Dynamic precision backend: the number of decimal
// digits is a runtime knob (config), so fixed-width typedefs are not an option.
using Real = boost::multiprecision::mpfr_float;

// Precision request for the constants engine. series_abs_tol is the absolute
// truncation budget every series/product evaluation must meet.
struct Precision {
    unsigned decimal_digits = 50;

    // 10^-(decimal_digits+5)
    Real series_abs_tol() const;

    // Internal working precision: enough guard digits that rounding noise and
    // the worst cancellation we ever hit (about 8 digits, in the Euler-product
    // tail split) stay below series_abs_tol.
    unsigned work_digits() const { return decimal_digits + 15; }
};

// RAII switch of the thread's default decimal precision for newly constructed
// Reals. Values allocated under the scope keep their precision after it ends.
class ScopedDigits {
  public:
    explicit ScopedDigits(unsigned digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~ScopedDigits() { Real::default_precision(saved_); }
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

  private:
    unsigned saved_;
};

// Euler-Mascheroni constant at the current default precision (library
// constant; correctly rounded).
Real euler_gamma();

// zeta(j) for integer j >= 2 at the current default precision (library
// evaluation; correctly rounded). Throws std::domain_error for j < 2.
Real riemann_zeta_ui(unsigned j);

// 10^e as a Real.
Real pow10_int(long e);

// Deterministic scientific-notation decimal string with the given number of
// significant digits. Single canonical formatting path for every artifact
// (cache, CSV, JSON) so that byte-identity checks are meaningful.
std::string dec_str(const Real& v, unsigned digits);

// Round-trip parse of dec_str output (also accepts plain decimal literals).
Real parse_real(const std::string& s);

}  // namespace kap
