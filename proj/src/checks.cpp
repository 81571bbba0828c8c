#include "kap/checks.hpp"

#include "kap/ledger_io.hpp"
#include "kap/poly.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kap {

namespace {

struct Ctx {
    const RunConfig& config;
    const ConstantsTable& tbl;
    const SumLedger& ledger;
    const AlphaTable& at;
};

// Trend and window assertions are asymptotic statements; below this limit the
// grid is too short for them to be meaningful and they are skipped (noted).
constexpr std::uint64_t kTrendMinLimit = 1'000'000;

// Dual-route agreement for alpha_1 is only claimed from 1e7 up; below that
// the finite-x bracket has not converged to the claimed tolerance.
constexpr std::uint64_t kAlphaRouteMinLimit = 10'000'000;

Real max_real(const Real& a, const Real& b) { return a > b ? a : b; }

// Largest sample in [lo, limit], split at the top decade boundary.
struct TrendSup {
    Real overall = 0;
    Real before = 0;  // sup over x <= limit/10
    Real top = 0;     // sup over x > limit/10
    std::uint64_t arg = 0;

    // Non-increasing across the decade boundary, with 1% headroom for
    // normalized errors that have flattened onto their limit constant
    // (grid-level wiggle is ~3e-4 relative; a single misfit power of loglog
    // would grow ~6% per decade, so 1% still discriminates).
    bool settled() const { return !(top > before * 101 / 100); }
};

TrendSup trend_sup(const std::vector<std::pair<std::uint64_t, Real>>& samples,
                   std::uint64_t limit) {
    TrendSup t;
    for (const auto& [x, v] : samples) {
        if (v > t.overall) {
            t.overall = v;
            t.arg = x;
        }
        if (x > limit / 10) {
            t.top = max_real(t.top, v);
        } else {
            t.before = max_real(t.before, v);
        }
    }
    return t;
}

CheckReport table_check(const Ctx& c, const char* id, const std::vector<PublishedEntry>& table,
                        const std::vector<Real>& values) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = id;
    Real worst = 0;  // deviation as a fraction of the per-entry tolerance
    unsigned worst_k = 0;
    for (const PublishedEntry& e : table) {
        Real printed = parse_real(e.text);
        // Printed values are rounded from the true constants, so allow half
        // an ulp (plus 2% rounding headroom); never demand better than 1e-5
        // relative.
        Real tol = std::max(Real(printed_half_ulp(e.text) * 51 / 50),
                            Real(abs(printed) / 100000));
        Real frac = abs(values.at(e.k) - printed) / tol;
        if (frac > worst) {
            worst = frac;
            worst_k = e.k;
        }
    }
    rep.measured = worst;
    rep.bound = 1;
    rep.margin = 1 - worst;
    rep.pass = worst < 1;
    rep.note = "worst entry at k=" + std::to_string(worst_k) +
               " (deviations as fractions of printed tolerance)";
    return rep;
}

CheckReport check_beta_p(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "beta_p_value";
    Real target = Real("0.1893475");
    Real dev = abs(c.tbl.beta_p.at(2) - target);
    rep.measured = c.tbl.beta_p.at(2);
    rep.bound = Real(5) / 10'000'000;
    rep.margin = rep.bound - dev;
    rep.pass = dev < rep.bound;
    rep.note = "beta_2 vs 0.1893475, tolerance 5e-7";
    return rep;
}

CheckReport check_decay_2k(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "decay_2k";
    const Real& b2 = c.tbl.beta_p.at(2);
    const Real& b3 = c.tbl.beta_p.at(3);
    // One-term law: |nu_k 2^k - beta_2| <= C (2/3)^k over 15 <= k <= 40.
    Real p2 = pow(Real(2), 15);
    Real w32 = pow(Real(3) / 2, 15);
    Real c1 = 0;
    // Refinement over the tail half of the window: the weighted residual
    // |nu_k 2^k - beta_2| (3/2)^k must stabilize at the Euler-product |beta_3|
    // (within 5%), and subtracting beta_3 (2/3)^k must strip the 3^{-k}
    // component by at least two orders. The next weighted remainder only
    // settles at |beta_5| near k = 55 (a slow transient from the function's
    // growth on large circles dominates before that), so no 5^{-k}-rate
    // constant is asserted on this window.
    bool tail_coeff_ok = true;
    Real c2 = 0;
    for (unsigned k = 15; k <= 40; ++k) {
        Real lead = c.tbl.nu[k] * p2 - b2;
        Real w1 = abs(lead) * w32;
        c1 = max_real(c1, w1);
        if (k >= 30) {
            if (!(abs(w1 - abs(b3)) < abs(b3) / 20)) tail_coeff_ok = false;
            // (2/3)^k (3/2)^k = 1, so the weighted two-term residual is just
            // the signed weighted lead minus beta_3.
            c2 = max_real(c2, Real(abs(lead * w32 - b3)));
        }
        p2 *= 2;
        w32 = w32 * 3 / 2;
    }
    rep.measured = c1;
    rep.bound = 10;
    rep.margin = 10 - c1;
    rep.pass = c1 < 10 && tail_coeff_ok && c2 < abs(b3) / 100;
    rep.note = "one-term C = " + dec_str(c1, 4) + "; tail coefficient vs |beta_3| ok: " +
               (tail_coeff_ok ? "yes" : "NO") + "; residual after beta_3 " + dec_str(c2, 3) +
               " (< |beta_3|/100)";
    return rep;
}

CheckReport check_lemma72(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "lemma72";
    Real worst = 0;
    unsigned worst_p = 0;
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        Real dev = abs(c.tbl.delta_p.at(p) * c.tbl.G_eval(Real(p)) - c.tbl.beta_p.at(p));
        if (dev > worst) {
            worst = dev;
            worst_p = p;
        }
    }
    rep.measured = worst;
    rep.bound = pow10_int(-20);
    rep.margin = rep.bound - worst;
    rep.pass = worst < rep.bound;
    rep.note = "delta_p * G(p) vs beta_p, worst at p=" + std::to_string(worst_p);
    return rep;
}

Real identity_tol(const Ctx& c) {
    return pow10_int(25 - static_cast<long>(c.config.precision_digits));
}

CheckReport check_identity_A(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "identity_A";
    Real worst = 0;
    for (unsigned k = 0; k <= 10; ++k)
        worst = max_real(worst, max_coeff_diff(shift_poly(build_Sk_qihu(k, c.tbl), c.tbl.beta),
                                               build_Sk_tenenbaum(k, c.tbl)));
    rep.measured = worst;
    rep.bound = identity_tol(c);
    rep.margin = rep.bound - worst;
    rep.pass = worst < rep.bound;
    rep.note = "shifted alternating-series route vs derivative route, k <= 10";
    return rep;
}

CheckReport check_identity_B(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "identity_B";
    Real worst = 0;
    for (unsigned k = 0; k <= 10; ++k)
        worst = max_real(worst, max_coeff_diff(build_Wk(k, c.tbl), build_Vk(k, c.tbl)));
    // Same family of main-term equivalences: the coefficient recurrences
    // against their partition-sum forms.
    Real worst_rec = 0;
    for (unsigned k = 0; k <= 12; ++k) {
        worst_rec = max_real(worst_rec, abs(c.tbl.nu[k] - c.tbl.nu_via_partitions(k)));
        worst_rec = max_real(worst_rec, abs(c.tbl.nu_star[k] - c.tbl.nu_star_via_partitions(k)));
        worst_rec = max_real(worst_rec, abs(c.tbl.d[k] - c.tbl.d_via_partitions(k)));
    }
    rep.measured = max_real(worst, worst_rec);
    rep.bound = identity_tol(c);
    rep.margin = rep.bound - rep.measured;
    rep.pass = rep.measured < rep.bound;
    rep.note = "W_k vs V_k (k <= 10) plus recurrence-vs-partition routes (k <= 12), max dev " +
               dec_str(rep.measured, 3);
    return rep;
}

CheckReport check_identity_C(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "identity_C";
    Real worst = 0;
    for (unsigned k : {2u, 3u, 4u})
        worst = max_real(worst, max_coeff_diff(shift_poly(build_Rk_special(k, c.tbl), c.tbl.beta),
                                               build_Vk(k, c.tbl)));
    rep.measured = worst;
    rep.bound = identity_tol(c);
    rep.margin = rep.bound - worst;
    rep.pass = worst < rep.bound;
    rep.note = "closed-form R_2..R_4 recentered onto V_k";
    return rep;
}

CheckReport check_thm11_error_law(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "thm11_error_law";
    std::uint64_t limit = c.ledger.rows.back().x;
    bool ok = true;
    Real worst = 0;
    std::uint64_t worst_x = 0;
    std::ostringstream note;
    for (unsigned k : {2u, 3u, 4u}) {
        DensePoly v = build_Vk(k, c.tbl);
        std::vector<std::pair<std::uint64_t, Real>> samples;
        for (const CheckpointRow& row : c.ledger.rows) {
            if (row.x < 1000) continue;
            Real lx = log(Real(row.x));
            Real y = log(lx);
            Real err = abs(td_real(row.R[k]) - eval_poly(v, y));
            samples.emplace_back(row.x, Real(err * lx / pow(y, static_cast<int>(k) - 1)));
        }
        TrendSup t = trend_sup(samples, limit);
        if (!(t.overall < 10)) ok = false;
        bool trend_ok = true;
        if (limit >= kTrendMinLimit) {
            trend_ok = t.settled();
            if (!trend_ok) ok = false;
        }
        if (t.overall > worst) {
            worst = t.overall;
            worst_x = t.arg;
        }
        note << "k=" << k << " sup " << dec_str(t.overall, 3)
             << (trend_ok ? "" : " (growing across top decade)") << "; ";
    }
    rep.measured = worst;
    rep.bound = 10;
    rep.margin = 10 - worst;
    rep.pass = ok;
    rep.x = worst_x;
    rep.note = note.str() + "normalized |R_k - V_k| sup over [1e3, limit]";
    return rep;
}

// Rightmost root of the main-term deficit V_k(Y) - Y^k/k!, which controls
// where the lower bracket can start holding again. For k = 3, 4 the deficit
// dips negative over a middle Y-range (roughly (0.6, 3.7) and (2.1, 5.1));
// Y = 3 sits inside both dips, Y = 20 is comfortably past both exits.
Real lower_deficit_root(unsigned k, const Ctx& c) {
    DensePoly v = build_Vk(k, c.tbl);
    Real kf = fact_real(k);
    auto deficit = [&](const Real& y) { return eval_poly(v, y) - pow(y, static_cast<int>(k)) / kf; };
    Real lo = 3, hi = 20;
    if (!(deficit(lo) < 0) || !(deficit(hi) > 0))
        throw std::logic_error("lower_deficit_root: bracket assumption broke");
    for (int i = 0; i < 200; ++i) {
        Real mid = (lo + hi) / 2;
        (deficit(mid) < 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

CheckReport check_cor13_bounds(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "cor13_bounds";
    std::uint64_t limit = c.ledger.rows.back().x;
    bool ok = true;
    Real worst_margin = 1e30;
    std::uint64_t worst_x = 0;
    std::ostringstream note;
    // The bracket Y^k/k! < R_k < (Y+beta)^k/k! holds for x above a per-k
    // threshold. Only k = 2 has a desk-scale threshold (lower from 4, upper
    // from 11, crossover 10.5998). For k = 3, 4 the upper side holds from the
    // first checkpoints on, but the lower side's threshold sits where the
    // main term stops mandating failure: V_k(Y) < Y^k/k! until Y_k^*
    // (~3.66 for k=3, ~5.0 for k=4), i.e. until x ~ exp(exp(Y_k^*)), far
    // beyond any sieveable limit. Above-threshold checkpoints are then an
    // empty set; what is checkable is that failures appear exactly where the
    // deficit polynomial mandates them and nowhere past its root.
    for (unsigned k : {2u, 3u, 4u}) {
        Real kf = fact_real(k);
        std::uint64_t last_lower_fail = 0, last_upper_fail = 0;
        for (const CheckpointRow& row : c.ledger.rows) {
            Real y = log(log(Real(row.x)));
            Real rk = td_real(row.R[k]);
            Real lower = pow(y, static_cast<int>(k)) / kf;
            Real upper = pow(y + c.tbl.beta, static_cast<int>(k)) / kf;
            if (!(lower < rk)) last_lower_fail = row.x;
            if (!(rk < upper)) last_upper_fail = row.x;
            if (k == 2 && row.x >= 11) {
                Real m = std::min(Real(rk - lower), Real(upper - rk));
                if (m < worst_margin) {
                    worst_margin = m;
                    worst_x = row.x;
                }
            }
        }
        if (k == 2) {
            if (last_lower_fail >= 4 || last_upper_fail >= 11) ok = false;
            note << "k=2 windows verified (fails only at " << last_lower_fail << "/"
                 << last_upper_fail << "); ";
        } else {
            // Upper side: no failure once the grid is past x = 2.
            if (last_upper_fail > 2) ok = false;
            Real y_root = lower_deficit_root(k, c);
            Real y_top = log(log(Real(limit)));
            if (y_top < y_root) {
                // Desk regime: the deficit is still negative at the top, so
                // lower failures are mandated; just confirm the window claim
                // stays vacuous rather than contradicted.
                note << "k=" << k << " lower mandated-failing until Y*=" << dec_str(y_root, 5)
                     << " (x ~ " << dec_str(exp(exp(y_root)), 2) << "), grid top Y="
                     << dec_str(y_top, 4) << "; ";
            } else {
                // A long-enough run reaches the regime where the bracket must
                // hold; then require stability across the whole top decade.
                if (last_lower_fail > limit / 10) ok = false;
                note << "k=" << k << " lower window reached (last fail " << last_lower_fail
                     << "); ";
            }
        }
    }
    rep.measured = worst_margin;
    rep.bound = 0;
    rep.margin = worst_margin;
    rep.pass = ok;
    rep.x = worst_x;
    rep.note = note.str() + "margin is the k=2 bracket minimum over [11, limit]";
    return rep;
}

CheckReport check_thm15_decay(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "thm15_decay";
    std::uint64_t limit = c.ledger.rows.back().x;
    bool ok = true;
    Real worst = 0;
    std::ostringstream note;
    for (unsigned N = 0; N <= 2; ++N) {
        std::vector<std::pair<std::uint64_t, Real>> samples;
        for (const CheckpointRow& row : c.ledger.rows) {
            if (row.x < 1000) continue;
            Real lx = log(Real(row.x));
            Real err = abs(td_real(row.R[2]) - r2_expansion(Real(row.x), N, c.tbl, c.at));
            samples.emplace_back(row.x, Real(err * pow(lx, static_cast<int>(N) + 1)));
        }
        TrendSup t = trend_sup(samples, limit);
        worst = max_real(worst, t.overall);
        // The normalized error tends to the next expansion coefficient
        // (alpha_{N+1}); the approach is from above, so the decade sups
        // decrease once past the small-x transient.
        bool trend_ok = true;
        if (limit >= kTrendMinLimit) {
            trend_ok = t.settled();
            if (!trend_ok) ok = false;
        }
        note << "N=" << N << " sup " << dec_str(t.overall, 3) << " top " << dec_str(t.top, 3)
             << (trend_ok ? "" : " (growing)") << "; ";
    }
    rep.measured = worst;
    rep.bound = 10;
    rep.margin = rep.bound - worst;
    rep.pass = ok && worst < rep.bound;
    rep.note = note.str() + "|R_2 - expansion_N| log^{N+1} x over [1e3, limit]";
    return rep;
}

CheckReport check_thm16_explicit(const Ctx& c) {
    CheckReport rep;
    rep.check_id = "thm16_explicit";
    std::vector<BoundGridRow> rows = explicit_r2_check(c.ledger, c.tbl, c.at, false);
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    bool ok = true;
    Real worst = 0;
    std::uint64_t worst_x = 0;
    for (const BoundGridRow& r : rows) {
        if (!r.pass) ok = false;
        Real usage = r.lhs / r.bound;
        if (usage > worst) {
            worst = usage;
            worst_x = r.x;
        }
    }
    rep.measured = worst;
    rep.bound = 1;
    rep.margin = 1 - worst;
    rep.pass = ok;
    rep.x = worst_x;
    rep.note = "|R_2 - main| vs (log x)^{-3/2} at " + std::to_string(rows.size()) +
               " checkpoints; worst bound usage " + dec_str(worst, 4);
    return rep;
}

CheckReport check_cor18_windows(const Ctx& c) {
    CheckReport rep;
    rep.check_id = "cor18_windows";
    std::vector<BoundGridRow> rows = explicit_r2_check(c.ledger, c.tbl, c.at, true);
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    bool ok = true;
    Real worst = 0;
    std::uint64_t worst_x = 0;
    unsigned n_two_sided = 0, n_lower_only = 0;
    for (const BoundGridRow& r : rows) {
        if (!r.pass) ok = false;
        (r.x >= 227 ? n_two_sided : n_lower_only)++;
        Real usage = r.lhs / r.bound;
        if (usage > worst) {
            worst = usage;
            worst_x = r.x;
        }
    }
    rep.measured = worst;
    rep.bound = 1;
    rep.margin = 1 - worst;
    rep.pass = ok;
    rep.x = worst_x;
    rep.note = "squarefree variant: two-sided at " + std::to_string(n_two_sided) +
               " checkpoints >= 227, lower-only at " + std::to_string(n_lower_only) + " below";
    return rep;
}

CheckReport check_thm19_error_law(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "thm19_error_law";
    bool ok = true;
    Real worst = 0;
    std::uint64_t worst_x = 0;
    std::ostringstream note;
    for (unsigned N = 1; N <= 2; ++N) {
        Real sup = 0;
        std::uint64_t arg = 0;
        for (const CheckpointRow& row : c.ledger.rows) {
            if (row.x < 10'000) continue;
            Real x(row.x);
            Real lx = log(x);
            Real y = log(lx);
            Real denom = x * y / pow(lx, static_cast<int>(N) + 1);
            Real ratio = abs(Real(row.N[2]) - n2_expansion(x, N, c.at)) / denom;
            if (ratio > sup) {
                sup = ratio;
                arg = row.x;
            }
        }
        if (!(sup < 10)) ok = false;
        if (sup > worst) {
            worst = sup;
            worst_x = arg;
        }
        note << "N=" << N << " sup " << dec_str(sup, 3) << "; ";
    }
    rep.measured = worst;
    rep.bound = 10;
    rep.margin = 10 - worst;
    rep.pass = ok;
    rep.x = worst_x;
    rep.note = note.str() + "|N_2 - expansion| / (x loglog x / log^{N+1} x) over [1e4, limit]";
    return rep;
}

CheckReport check_alpha1_dual_route(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "alpha1_dual_route";
    std::uint64_t top = c.ledger.rows.back().x;
    Real dev = abs(c.tbl.alpha1 - alpha_j_limit(1, top, c.ledger));
    rep.x = top;
    rep.measured = dev;
    rep.bound = pow10_int(-3);
    rep.margin = rep.bound - dev;
    std::ostringstream note;
    if (top >= kAlphaRouteMinLimit) {
        rep.pass = dev < rep.bound;
        Real a2_rel = abs(alpha_j_limit(2, top, c.ledger) - c.at.alpha_j.at(2)) /
                      abs(c.at.alpha_j.at(2));
        if (!(a2_rel < Real(1) / 20)) rep.pass = false;
        note << "alpha_2 limit-vs-integral relative dev " << dec_str(a2_rel, 3) << "; ";
    } else {
        // The finite-x bracket has not converged this low; report only.
        rep.pass = true;
        note << "below the certified window (needs limit >= 1e7), measured only; ";
    }
    note << "closed form vs finite-x bracket at " << top;
    rep.note = note.str();
    return rep;
}

CheckReport check_gamma_alpha_relation(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "gamma_alpha_relation";
    bool ok = true;
    Real worst = 0;
    for (unsigned j = 1; j <= 3; ++j) {
        const ValueWithBar& g = c.at.gamma_j.at(j);
        Real dev = abs(c.at.alpha_j.at(j) - alpha_gamma_offset(j, c.tbl) - g.value);
        Real frac = dev / g.bar;
        if (!(dev < g.bar)) ok = false;
        worst = max_real(worst, frac);
    }
    rep.measured = worst;
    rep.bound = 1;
    rep.margin = 1 - worst;
    rep.pass = ok;
    rep.note = "j=1 compares independent routes (gamma_1 = " +
               dec_str(c.at.gamma_j.at(1).value, 6) + " +- " + dec_str(c.at.gamma_j.at(1).bar, 2) +
               "); j=2,3 are constructed through the relation, j=3 assumption-tagged";
    return rep;
}

CheckReport check_harmonic_partition(const Ctx& c) {
    ScopedDigits scope(Precision{c.config.precision_digits}.work_digits());
    CheckReport rep;
    rep.check_id = "harmonic_partition";
    bool counts_ok = true, bits_ok = true;
    Real worst = 0;
    std::uint64_t worst_x = 0;
    for (const CheckpointRow& row : c.ledger.rows) {
        std::uint64_t total = row.N_over;
        for (std::uint64_t nk : row.N) total += nk;
        if (total != row.x) counts_ok = false;

        Real sum = td_real(row.R_over);
        for (const TD& r : row.R) sum += td_real(r);
        Real dev = abs(sum - harmonic_number(row.x));
        if (dev > worst) {
            worst = dev;
            worst_x = row.x;
        }

        const TD &s1 = row.S[1], &r1 = row.R[1], &t = row.T;
        if (s1.t0 != r1.t0 || s1.t1 != r1.t1 || s1.t2 != r1.t2 || t.t0 != r1.t0 ||
            t.t1 != r1.t1 || t.t2 != r1.t2)
            bits_ok = false;
    }
    rep.measured = worst;
    rep.bound = pow10_int(-24);
    rep.margin = rep.bound - worst;
    rep.pass = counts_ok && bits_ok && worst < rep.bound;
    rep.x = worst_x;
    rep.note = std::string("counts sum to floor(x): ") + (counts_ok ? "yes" : "NO") +
               "; S_1 = R_1 = T bitwise: " + (bits_ok ? "yes" : "NO") +
               "; reciprocal sums vs harmonic numbers, worst dev " + dec_str(worst, 3);
    return rep;
}

}  // namespace

bool ManifestResult::all_pass() const {
    for (const CheckReport& r : reports)
        if (!r.pass) return false;
    return true;
}

const std::vector<PublishedEntry>& published_nu_table() {
    static const std::vector<PublishedEntry> t = {
        {1, "2.61497e-1"},   {2, "-5.62153e-1"},  {3, "3.05978e-1"},  {4, "2.62973e-2"},
        {5, "-6.44501e-2"},  {6, "3.64064e-2"},   {7, "-4.70865e-3"}, {8, "-4.33984e-4"},
        {9, "1.5085e-3"},    {10, "-1.83548e-4"}, {11, "1.49365e-4"}, {12, "4.99174e-5"},
        {13, "1.82657e-5"},  {14, "1.30241e-5"},  {15, "5.52779e-6"}, {16, "2.90194e-6"},
        {17, "1.45075e-6"},  {18, "7.19861e-7"},  {19, "3.61606e-7"}, {20, "1.80517e-7"},
    };
    return t;
}

const std::vector<PublishedEntry>& published_nu_star_table() {
    static const std::vector<PublishedEntry> t = {
        {0, "1"},           {1, "2.61497e-1"},  {2, "-1.01440e0"},  {3, "1.87717e-1"},
        {4, "3.44297e-1"},  {5, "-1.86153e-1"}, {6, "-1.50297e-2"}, {7, "4.29836e-2"},
        {8, "-1.30388e-2"}, {9, "-1.57532e-3"}, {10, "2.17630e-3"},
    };
    return t;
}

Real printed_half_ulp(const std::string& text) {
    std::size_t epos = text.find_first_of("eE");
    long exponent = 0;
    std::string mantissa = text;
    if (epos != std::string::npos) {
        exponent = std::stol(text.substr(epos + 1));
        mantissa = text.substr(0, epos);
    }
    long digits = 0;
    for (char ch : mantissa)
        if (ch >= '0' && ch <= '9') ++digits;
    if (digits == 0) throw std::invalid_argument("printed_half_ulp: no digits in " + text);
    // Scientific notation: one digit before the point, so the last printed
    // place sits at 10^(exponent - digits + 1).
    return Real(pow10_int(exponent - digits + 1) / 2);
}

Real harmonic_number(std::uint64_t n) {
    if (n == 0) return Real(0);
    if (n <= 10'000) {
        Real h = 0;
        for (std::uint64_t i = 1; i <= n; ++i) h += Real(1) / i;
        return h;
    }
    // ln n + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4) - 1/(252n^6) + 1/(240n^8);
    // the first omitted term is below 1/(132 n^10) < 1e-42 for n > 1e4.
    Real nn(n);
    Real n2 = nn * nn;
    Real n4 = n2 * n2;
    return Real(log(nn) + euler_gamma() + 1 / (2 * nn) - 1 / (12 * n2) + 1 / (120 * n4) -
                1 / (252 * n4 * n2) + 1 / (240 * n4 * n4));
}

ManifestResult run_manifest(const RunConfig& config) {
    config.validate();
    ConstantsOptions copt;
    copt.prec.decimal_digits = config.precision_digits;
    ConstantsTable tbl = build_constants(copt);
    SumLedger ledger = accumulate_cached(config.sieve_config(), config.cache_dir);
    AlphaTable at = build_alpha_table(ledger, tbl);
    Ctx c{config, tbl, ledger, at};

    ManifestResult m;
    m.reports.push_back(table_check(c, "nu_table", published_nu_table(), tbl.nu));
    m.reports.push_back(table_check(c, "nu_star_table", published_nu_star_table(), tbl.nu_star));
    m.reports.push_back(check_beta_p(c));
    m.reports.push_back(check_decay_2k(c));
    m.reports.push_back(check_lemma72(c));
    m.reports.push_back(check_identity_A(c));
    m.reports.push_back(check_identity_B(c));
    m.reports.push_back(check_identity_C(c));
    m.reports.push_back(check_thm11_error_law(c));
    m.reports.push_back(check_cor13_bounds(c));
    m.reports.push_back(check_thm15_decay(c));
    m.reports.push_back(check_thm16_explicit(c));
    m.reports.push_back(corollary_bounds_check(ledger, tbl));
    m.reports.push_back(check_cor18_windows(c));
    m.reports.push_back(check_thm19_error_law(c));
    m.reports.push_back(conjecture_ratio_check(load_alpha_data(config.data_dir)));
    m.reports.push_back(rs_dusart_check(ledger, tbl));
    m.reports.push_back(check_alpha1_dual_route(c));
    m.reports.push_back(check_gamma_alpha_relation(c));
    m.reports.push_back(check_harmonic_partition(c));
    return m;
}

void write_manifest_csv(const ManifestResult& m, const std::string& config_hash,
                        const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write manifest file: " + path);
    f << "# config " << config_hash << '\n';
    f << "check_id,x,measured,bound,margin,pass\n";
    for (const CheckReport& r : m.reports) {
        f << r.check_id << ',' << r.x << ',' << dec_str(r.measured, 17) << ','
          << dec_str(r.bound, 17) << ',' << dec_str(r.margin, 17) << ',' << (r.pass ? 1 : 0)
          << '\n';
    }
    if (!f.flush()) throw std::runtime_error("short write to manifest file: " + path);
}

void print_manifest(const ManifestResult& m, std::ostream& os) {
    for (const CheckReport& r : m.reports) {
        os << std::left << std::setw(22) << r.check_id << (r.pass ? "pass" : "FAIL")
           << "  measured " << std::setw(14) << dec_str(r.measured, 4) << " bound "
           << std::setw(14) << dec_str(r.bound, 4) << ' ' << r.note << '\n';
    }
    os << "verification manifest: " << (m.all_pass() ? "PASS" : "FAIL") << " ("
       << m.reports.size() << " checks)\n";
}

}  // namespace kap
