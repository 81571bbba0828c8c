#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

// Compensated floating-point building blocks for the sieve accumulators.
//
// Terms 1/n are formed as a double-double (hi + lo) and folded into a
// triple-double running sum. Error accounting, with u = 2^-53:
//
//   term formation (dd_recip):
//     hi = fl(1/n), r = fma(-hi, n, 1). The fused multiply-add makes
//     r = 1 - n*hi EXACT: n*hi agrees with 1 in its leading ~52 bits, so the
//     difference fits in one double (standard division-residual trick; needs
//     n < 2^52, guaranteed by the sieve limit cap of 1e10).
//     lo = fl(r*hi) then differs from the ideal correction r/n by
//       |r|*|hi - 1/n| + u*|r*hi|  <=  2.01*u^2/n.
//     Summed over n <= 1e10 that is 2.01*u^2*H(1e10) < 6.2e-31 absolute.
//
//   accumulation (TdAcc::add, renorm cadence RENORM_EVERY = 1024):
//     the three two_sum steps are exact; only the two plain adds feeding t2
//     round.
//     Within one cadence window |t1| <= 2*u*S*R and |t2| <= 4*u^2*S*R^2
//     (S = magnitude of the full sum, R = 1024), so each step drops at most
//     ~u*|t2| and the total over N terms is <= 4*u^3*S*N*R^2. For S ~ 24
//     (harmonic mass at 1e10) and N = 1e10 that is < 1.3e-30; at N = 1e9,
//     < 1.4e-31. renorm() itself is a chain of exact two_sums (no loss).
//
//   Total worst case at x = 1e9: < 2.1e-31 absolute, i.e. the contracted
//   "at least 30 correct digits" with an order of magnitude to spare. For the
//   weighted sums (terms w/n) both contributions scale with the sum's own
//   magnitude, giving relative error < ~4e-32.
//
// Everything here must compile with -ffp-contract=off: an implicitly fused
// a*b+c inside two_sum would break the exactness arguments above.

namespace kap {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

struct TD {
    double t0 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
};

// Knuth's branch-free exact addition: a + b == s + err.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Exact product via fma: a*b == p + err.
inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

// 1/n as a double-double; see the error budget at the top of the file.
inline DD dd_recip(double n) {
    double hi = 1.0 / n;
    double r = std::fma(-hi, n, 1.0);
    double lo = r * hi;
    return {hi, lo};
}

// w * x for a dd reciprocal x, w an exactly representable double (integer
// weight or a log power). Error < ~3*u^2*|w*x| on top of x's own error.
inline DD dd_scale(DD x, double w) {
    double ph = w * x.hi;
    double e = std::fma(w, x.hi, -ph);
    double pl = std::fma(w, x.lo, e);
    return {ph, pl};
}

// Triple-double accumulator. add() performs a fixed sequence of IEEE ops, so
// two runs feeding identical values in identical order produce identical bits;
// the SIMD kernels replicate this exact sequence lane-wise.
class TdAcc {
  public:
    static constexpr unsigned RENORM_EVERY = 1024;

    void add(DD x) {
        DD s0 = two_sum(t0_, x.hi);
        t0_ = s0.hi;
        DD s1 = two_sum(t1_, x.lo);
        DD s2 = two_sum(s1.hi, s0.lo);
        t1_ = s2.hi;
        t2_ += s1.lo + s2.lo;
        if (++pending_ == RENORM_EVERY) renorm();
    }

    // Exact: re-expresses t0+t1+t2 with non-overlapping components.
    void renorm() {
        DD a = two_sum(t1_, t2_);
        DD b = two_sum(t0_, a.hi);
        DD c = two_sum(b.lo, a.lo);
        t0_ = b.hi;
        t1_ = c.hi;
        t2_ = c.lo;
        pending_ = 0;
    }

    TD value() {
        renorm();
        return {t0_, t1_, t2_};
    }

    void set(TD v) {
        t0_ = v.t0;
        t1_ = v.t1;
        t2_ = v.t2;
        pending_ = 0;
    }

    // Un-renormalized internal state, for handing a mid-stream accumulator
    // from one code path to another without perturbing a single bit.
    TD raw() const { return {t0_, t1_, t2_}; }
    void set_raw(TD v, unsigned pending) {
        t0_ = v.t0;
        t1_ = v.t1;
        t2_ = v.t2;
        pending_ = pending;
    }

  private:
    double t0_ = 0.0, t1_ = 0.0, t2_ = 0.0;
    unsigned pending_ = 0;
};

// Deterministic merge of two renormalized triple-doubles.
inline TD td_add(TD a, TD b) {
    TdAcc acc;
    acc.set(a);
    acc.add({b.t0, b.t1});
    acc.add({b.t2, 0.0});
    return acc.value();
}

// Nearest-double collapse (for feeding double-precision consumers).
inline double td_to_double(TD a) { return (a.t0 + a.t1) + a.t2; }

}  // namespace kap
