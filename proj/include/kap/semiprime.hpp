#pragma once

#include "kap/constants.hpp"
#include "kap/real.hpp"
#include "kap/sieve.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kap {

// How an alpha_j entry was obtained.
enum class AlphaSource { ClosedForm, LimitRoute, IntegralRoute, PublishedTable };
const char* alpha_source_name(AlphaSource s);

// A numeric result together with a certified half-width. assumption_tagged
// marks bars that rely on the error decay |E(t)| <= 0.2/log^4 t continuing
// past the last point where an explicit bound is available.
struct ValueWithBar {
    Real value;
    Real bar;
    bool assumption_tagged = false;
};

// Constants of the refined semiprime expansions: gamma_j (weighted integrals
// of the Mertens error E), alpha_j = (log 2)^j(1/j - loglog 2 - beta)/j +
// gamma_j, B_j = -j alpha_j, harmonic numbers H_n, and
// D_n = sum_{j<=n} B_j/j! - H_n.
struct AlphaTable {
    std::map<unsigned, ValueWithBar> gamma_j;
    std::map<unsigned, Real> alpha_j;
    std::map<unsigned, AlphaSource> alpha_source;
    std::map<unsigned, Real> B_j;
    std::map<unsigned, Real> D_n;
    std::map<unsigned, Real> H_n;
};

// One checkpoint of an explicit-inequality scan.
struct BoundGridRow {
    std::uint64_t x = 0;
    Real lhs;     // |R_2(x) - main terms|, windowed one-sided where applicable
    Real bound;   // (log x)^{-3/2}
    Real margin;  // bound - lhs
    bool pass = false;
};

// Uniform result record for the verification manifest.
struct CheckReport {
    std::string check_id;
    std::uint64_t x = 0;  // worst or most relevant checkpoint; 0 if global
    Real measured;
    Real bound;
    Real margin;
    bool pass = false;
    std::string note;
};

// The elementary part of alpha_j: (log 2)^j (1/j - loglog 2 - beta)/j.
Real alpha_gamma_offset(unsigned j, const ConstantsTable& tbl);

// gamma_j = integral_2^inf E(t)(log t)^{j-1} dt/t, evaluated exactly over
// [2, cutoff] from the ledger's piecewise drift integrals and bounded beyond
// cutoff via the explicit |E| estimates. j <= 3 (stored drift order); the
// j = 3 tail bar is assumption-tagged.
ValueWithBar gamma_j_integral(unsigned j, std::uint64_t cutoff, const SumLedger& ledger,
                              const ConstantsTable& tbl);

// Finite-x bracket (log^j x/j - sum_{p<=x} log^j p/p)/j. Converges slowly;
// used for cross-route consistency only. x must be a checkpoint.
Real alpha_j_limit(unsigned j, std::uint64_t x, const SumLedger& ledger);

// alpha_1 from the closed form, alpha_2 and alpha_3 through the gamma route
// at the ledger's top checkpoint, plus the derived B_j, H_n, D_n (n <= 3).
AlphaTable build_alpha_table(const SumLedger& ledger, const ConstantsTable& tbl);

// Main terms of the refined expansion:
//   (loglog x + beta)^2/2 + (P(2)-zeta(2))/2 + sum_{j<=N} alpha_j/log^j x.
// The squarefree variant replaces the constant by -(P(2)+zeta(2))/2.
Real r2_expansion(const Real& x, unsigned N, const ConstantsTable& tbl, const AlphaTable& at,
                  bool squarefree_variant = false);

// |R_2(x) - r2_expansion(x, 1)| < (log x)^{-3/2} at every checkpoint. The
// squarefree variant is two-sided from x >= 227 and lower-bound-only below.
std::vector<BoundGridRow> explicit_r2_check(const SumLedger& ledger, const ConstantsTable& tbl,
                                            const AlphaTable& at,
                                            bool squarefree_variant = false);

// (loglog x)^2/2 < R_2(x) from x >= 4 and R_2(x) < (loglog x + beta)^2/2 from
// x >= 11, with the upper bound shown to fail at x = 10 and the optimal
// crossover exp(exp(sqrt(113/90) - beta)) = 10.5998 reproduced.
CheckReport corollary_bounds_check(const SumLedger& ledger, const ConstantsTable& tbl);

// Semiprime counting main terms: (x/log x) sum_{n<N} n!(loglog x + D_n)/log^n x.
Real n2_expansion(const Real& x, unsigned N, const AlphaTable& at);

// Published alpha_j values (j = 11..20), ingested from data/alpha_table.csv.
struct PaperAlphaRow {
    unsigned j = 0;
    Real alpha;
};
std::vector<PaperAlphaRow> load_alpha_data(const std::string& data_dir);

// Recomputes the ratio column (alpha_j/alpha_{j-1})/(2(j-1)^2/j) from the
// ingested values and checks it against the published column: printed-digit
// agreement, strict monotone increase toward 1 from below.
CheckReport conjecture_ratio_check(const std::vector<PaperAlphaRow>& paper_alpha);

// Explicit Mertens-error bounds at every applicable checkpoint:
//   -1/(2 log^2 x) < E(x) < 1/log^2 x            (x > 1)
//   E(x) > 0                                     (x <= 10^8)
//   |E(x)| <= 1/(10 log^2 x) + 4/(15 log^3 x)    (x >= 10372)
//   |E(x)| <= 0.2/log^3 x                        (x >= 2278383)
CheckReport rs_dusart_check(const SumLedger& ledger, const ConstantsTable& tbl);

}  // namespace kap
