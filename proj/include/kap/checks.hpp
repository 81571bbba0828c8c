#pragma once

#include "kap/config.hpp"
#include "kap/semiprime.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kap {

struct ManifestResult {
    std::vector<CheckReport> reports;
    bool all_pass() const;
};

struct PublishedEntry {
    unsigned k;
    const char* text;
};

// Frozen decimal tables the constants engine must reproduce.
const std::vector<PublishedEntry>& published_nu_table();       // k = 1..20
const std::vector<PublishedEntry>& published_nu_star_table();  // k = 0..10

// Half an ulp in the last printed place of a decimal string such as
// "-5.62153e-1" (-> 5e-7) or "1.5085e-3" (-> 5e-8).
Real printed_half_ulp(const std::string& text);

// H_n: direct summation for small n, asymptotic series beyond (series error
// below 1e-40 everywhere it is used).
Real harmonic_number(std::uint64_t n);

// Runs every check in the fixed manifest order: constants tables, decay laws,
// polynomial identities, explicit inequalities on sieve data, cross-route
// consistency, and the ledger's own structural invariants.
ManifestResult run_manifest(const RunConfig& config);

void write_manifest_csv(const ManifestResult& m, const std::string& config_hash,
                        const std::string& path);
void print_manifest(const ManifestResult& m, std::ostream& os);

}  // namespace kap
