#include "kap/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
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

static const char* kExpectedOrder[] = {
    "nu_table",      "nu_star_table",   "beta_p_value",      "decay_2k",
    "lemma72",       "identity_A",      "identity_B",        "identity_C",
    "thm11_error_law", "cor13_bounds",  "thm15_decay",       "thm16_explicit",
    "cor17_windows", "cor18_windows",   "thm19_error_law",   "conj_ratio",
    "rs_dusart",     "alpha1_dual_route", "gamma_alpha_relation", "harmonic_partition",
};

static RunConfig small_config(const std::string& cache_dir) {
    RunConfig cfg;
    cfg.precision_digits = 30;
    cfg.sieve_limit = 20'000;
    cfg.threads = 1;
    cfg.cache_dir = cache_dir;
    cfg.validate();
    return cfg;
}

static void config_basics() {
    RunConfig cfg = small_config("unused");
    CHECK(cfg.resolved_threads() >= 1);
    CHECK(cfg.hash() == cfg.hash());
    RunConfig other = cfg;
    other.sieve_limit = 30'000;
    CHECK(cfg.hash() != other.hash());
    RunConfig same_bytes = cfg;
    same_bytes.threads = 7;
    same_bytes.simd = SimdMode::ForceScalar;
    CHECK(cfg.hash() == same_bytes.hash());

    std::vector<std::uint64_t> cps = cfg.checkpoints();
    CHECK(std::is_sorted(cps.begin(), cps.end()));
    CHECK(std::adjacent_find(cps.begin(), cps.end()) == cps.end());
    CHECK(cps.front() >= 2 && cps.back() == cfg.sieve_limit);
    for (std::uint64_t special : {4ull, 10ull, 11ull, 227ull, 10372ull})
        CHECK(std::find(cps.begin(), cps.end(), special) != cps.end());

    RunConfig bad = cfg;
    bad.precision_digits = 5;
    bool threw = false;
    try {
        bad.validate();
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    CHECK(threw);
}

static void half_ulp_cases() {
    ScopedDigits scope(40);
    CHECK(printed_half_ulp("1") == Real(1) / 2);
    CHECK_NEAR(printed_half_ulp("2.61497e-1"), Real("5e-7"), Real("1e-20"));
    CHECK_NEAR(printed_half_ulp("-5.62153e-1"), Real("5e-7"), Real("1e-20"));
    CHECK_NEAR(printed_half_ulp("1.5085e-3"), Real("5e-8"), Real("1e-20"));
    CHECK_NEAR(printed_half_ulp("1.80517e-7"), Real("5e-13"), Real("1e-25"));
    CHECK_NEAR(printed_half_ulp("2.17630e-3"), Real("5e-9"), Real("1e-20"));
}

static void published_tables() {
    ScopedDigits scope(40);
    const std::vector<PublishedEntry>& nu = published_nu_table();
    CHECK(nu.size() == 20);
    for (std::size_t i = 0; i < nu.size(); ++i) CHECK(nu[i].k == i + 1);
    CHECK(parse_real(nu[1].text) < 0);   // k = 2 entry is negative
    CHECK(parse_real(nu[0].text) > 0);
    const std::vector<PublishedEntry>& star = published_nu_star_table();
    CHECK(star.size() == 11);
    for (std::size_t i = 0; i < star.size(); ++i) CHECK(star[i].k == i);
    CHECK(parse_real(star[0].text) == 1);
    for (const PublishedEntry& e : star) CHECK(printed_half_ulp(e.text) > 0);
}

static void harmonic_values() {
    ScopedDigits scope(45);
    CHECK(harmonic_number(1) == 1);
    CHECK_NEAR(harmonic_number(2), Real(3) / 2, Real("1e-40"));
    CHECK_NEAR(harmonic_number(4), Real(25) / 12, Real("1e-40"));
    // seam between the direct sum and the asymptotic series
    CHECK_NEAR(harmonic_number(10'001) - harmonic_number(10'000), Real(1) / 10'001,
               Real("1e-35"));
    Real direct = 0;
    for (std::uint64_t n = 20'000; n >= 1; --n) direct += Real(1) / n;
    CHECK_NEAR(harmonic_number(20'000), direct, Real("1e-35"));
    CHECK_NEAR(harmonic_number(20'000), Real("10.48072821722932757"), Real("1e-16"));
}

static void manifest_run() {
    namespace fs = std::filesystem;
    fs::path cache = fs::temp_directory_path() / "kap_test_checks_cache";
    fs::path outdir = fs::temp_directory_path() / "kap_test_checks_out";
    fs::remove_all(cache);
    fs::remove_all(outdir);
    RunConfig cfg = small_config(cache.string());

    ManifestResult m = run_manifest(cfg);
    CHECK(m.all_pass());
    CHECK(m.reports.size() == std::size(kExpectedOrder));
    for (std::size_t i = 0; i < m.reports.size(); ++i) {
        CHECK(m.reports[i].check_id == kExpectedOrder[i]);
        CHECK(m.reports[i].pass);
    }

    // second run loads the cached ledger and must reproduce every byte
    ManifestResult again = run_manifest(cfg);
    write_manifest_csv(m, cfg.hash(), (outdir / "a.csv").string());
    write_manifest_csv(again, cfg.hash(), (outdir / "b.csv").string());
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f),
                           std::istreambuf_iterator<char>());
    };
    std::string a = slurp(outdir / "a.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(outdir / "b.csv"));
    CHECK(a.rfind("# config " + cfg.hash(), 0) == 0);
    CHECK(std::count(a.begin(), a.end(), '\n') ==
          2 + static_cast<long>(std::size(kExpectedOrder)));

    std::ostringstream os;
    print_manifest(m, os);
    std::string printed = os.str();
    CHECK(printed.find("verification manifest: PASS") != std::string::npos);
    for (const char* id : kExpectedOrder)
        CHECK(printed.find(id) != std::string::npos);

    fs::remove_all(cache);
    fs::remove_all(outdir);
}

int main() {
    config_basics();
    half_ulp_cases();
    published_tables();
    harmonic_values();
    manifest_run();
    if (failures) {
        std::printf("test_checks: %d failure(s)\n", failures);
        return 1;
    }
    std::puts("test_checks: all checks passed");
    return 0;
}
