#include "kap/semiprime.hpp"

#include "kap/ledger_io.hpp"
#include "kap/poly.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

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

static const SumLedger& ledger() {
    static SumLedger led = [] {
        SieveConfig c;
        c.limit = 1'000'000;
        c.checkpoints = {2,    3,     4,     7,      10,      11,       100,
                         227,  1000,  10000, 10372,  100000,  1'000'000};
        c.k_max = 8;
        return accumulate(c);
    }();
    return led;
}

static void gamma_route() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());

    ValueWithBar g1 = gamma_j_integral(1, 1'000'000, ledger(), t);
    ValueWithBar g2 = gamma_j_integral(2, 1'000'000, ledger(), t);
    ValueWithBar g3 = gamma_j_integral(3, 1'000'000, ledger(), t);
    CHECK(!g1.assumption_tagged && !g2.assumption_tagged);
    CHECK(g3.assumption_tagged);
    CHECK(g1.bar > 0 && g2.bar > 0 && g3.bar > 0);
    CHECK_NEAR(g1.value, Real("0.56661"), Real("2e-3"));

    // the tail bar must shrink as the exact integration reaches further
    ValueWithBar g1_short = gamma_j_integral(1, 100'000, ledger(), t);
    CHECK(g1_short.bar > g1.bar);

    // the closed form for alpha_1 must land inside the certified bar of the
    // integral route; this is the honesty test for the bars
    Real via_integral = alpha_gamma_offset(1, t) + g1.value;
    CHECK(abs(t.alpha1 - via_integral) < g1.bar);

    // offset agrees with its definition
    Real l2 = log(Real(2));
    CHECK_NEAR(alpha_gamma_offset(1, t), l2 * (1 - log(l2) - t.beta), Real("1e-40"));
    CHECK_NEAR(alpha_gamma_offset(2, t),
               l2 * l2 * (Real(1) / 2 - log(l2) - t.beta) / 2, Real("1e-40"));
}

static void alpha_table_structure() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    AlphaTable at = build_alpha_table(ledger(), t);

    CHECK(at.alpha_source.at(1) == AlphaSource::ClosedForm);
    CHECK(at.alpha_source.at(2) == AlphaSource::IntegralRoute);
    CHECK(at.alpha_j.at(1) == t.alpha1);
    for (unsigned j = 1; j <= 3; ++j) {
        CHECK_NEAR(at.B_j.at(j), -Real(int(j)) * at.alpha_j.at(j), Real("1e-45"));
        CHECK(alpha_source_name(at.alpha_source.at(j)) != nullptr);
    }
    CHECK_NEAR(at.B_j.at(0), t.beta, Real("1e-45"));
    CHECK(at.H_n.at(1) == 1);
    CHECK_NEAR(at.H_n.at(2), Real(3) / 2, Real("1e-45"));
    CHECK_NEAR(at.H_n.at(3), Real(11) / 6, Real("1e-45"));
    CHECK_NEAR(at.D_n.at(1), t.beta - t.alpha1 - 1, Real("1e-40"));

    // the slow finite-x bracket agrees with the table within its known
    // convergence rate (measured at this ledger size, with 5x headroom)
    CHECK_NEAR(alpha_j_limit(1, 1'000'000, ledger()), at.alpha_j.at(1), Real("5e-3"));
    CHECK_NEAR(alpha_j_limit(2, 1'000'000, ledger()), at.alpha_j.at(2), Real("2e-2"));
    CHECK_NEAR(alpha_j_limit(3, 1'000'000, ledger()), at.alpha_j.at(3), Real("2e-1"));
    bool threw = false;
    try {
        alpha_j_limit(1, 999, ledger());  // not a checkpoint
    } catch (const std::exception&) {
        threw = true;
    }
    CHECK(threw);
}

static void expansion_values() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    AlphaTable at = build_alpha_table(ledger(), t);

    Real x = exp(exp(Real(1)));  // loglog x = 1
    Real base = (1 + t.beta) * (1 + t.beta) / 2 + (t.prime_zeta[2] - t.zeta[2]) / 2;
    CHECK_NEAR(r2_expansion(x, 0, t, at), base, Real("1e-30"));
    CHECK_NEAR(r2_expansion(x, 1, t, at) - r2_expansion(x, 0, t, at),
               at.alpha_j.at(1) / log(x), Real("1e-30"));
    Real star = (1 + t.beta) * (1 + t.beta) / 2 - (t.prime_zeta[2] + t.zeta[2]) / 2;
    CHECK_NEAR(r2_expansion(x, 0, t, at, true), star, Real("1e-30"));

    Real lx = log(x);
    CHECK_NEAR(n2_expansion(x, 1, at), x / lx * (1 + t.beta), Real("1e-25"));
    CHECK_NEAR(n2_expansion(x, 2, at) - n2_expansion(x, 1, at),
               x / lx * (1 + at.D_n.at(1)) / lx, Real("1e-25"));
}

static void bound_grids() {
    const ConstantsTable& t = table();
    ScopedDigits scope(Precision{}.work_digits());
    AlphaTable at = build_alpha_table(ledger(), t);

    std::vector<BoundGridRow> grid = explicit_r2_check(ledger(), t, at);
    CHECK(grid.size() == ledger().rows.size());
    for (const BoundGridRow& row : grid) {
        CHECK(row.pass);
        CHECK_NEAR(row.bound, pow(log(Real(row.x)), Real(-3) / 2), Real("1e-30"));
        CHECK(row.margin > 0);
    }

    std::vector<BoundGridRow> star = explicit_r2_check(ledger(), t, at, true);
    CHECK(star.size() == grid.size());
    for (const BoundGridRow& row : star) CHECK(row.pass);

    CheckReport cor = corollary_bounds_check(ledger(), t);
    CHECK(cor.pass);
    CHECK(cor.margin > 0);

    CheckReport rs = rs_dusart_check(ledger(), t);
    CHECK(rs.pass);
    CHECK(rs.margin > 0);
}

static void published_data_ingest() {
    ScopedDigits scope(Precision{}.work_digits());
    std::vector<PaperAlphaRow> rows = load_alpha_data(KAP_DATA_DIR);
    CHECK(rows.size() == 10);
    CHECK(rows.front().j == 11 && rows.back().j == 20);
    CHECK_NEAR(rows.front().alpha, Real("3.4791e8"), Real("1e4"));
    CHECK_NEAR(rows.back().alpha, Real("3.1957e21"), Real("1e17"));

    CheckReport conj = conjecture_ratio_check(rows);
    CHECK(conj.pass);
    CHECK(conj.margin > 0);

    // a 5% bump breaks the printed-digit agreement and must be flagged
    std::vector<PaperAlphaRow> bad = rows;
    bad[4].alpha *= Real(21) / 20;
    CHECK(!conjecture_ratio_check(bad).pass);

    bool threw = false;
    try {
        load_alpha_data("/nonexistent_dir_for_test");
    } catch (const std::exception&) {
        threw = true;
    }
    CHECK(threw);

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "kap_test_alpha_data";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "alpha_table.csv") << "# comment\n11,3.4791e8\n13,6.9638e9\n";
    threw = false;
    try {
        load_alpha_data(dir.string());  // j jumps from 11 to 13
    } catch (const std::exception&) {
        threw = true;
    }
    CHECK(threw);
    fs::remove_all(dir);
}

int main() {
    gamma_route();
    alpha_table_structure();
    expansion_values();
    bound_grids();
    published_data_ingest();
    if (failures) {
        std::printf("test_semiprime: %d failure(s)\n", failures);
        return 1;
    }
    std::puts("test_semiprime: all checks passed");
    return 0;
}
