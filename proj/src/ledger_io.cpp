#include "kap/ledger_io.hpp"

#include "kap/fnv.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kap {

namespace {

// %.17g round-trips every finite double through decimal exactly.
std::string dstr(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

void put_td(std::ostream& os, const TD& t) {
    os << dstr(t.t0) << ' ' << dstr(t.t1) << ' ' << dstr(t.t2);
}

TD get_td(std::istream& is) {
    TD t;
    is >> t.t0 >> t.t1 >> t.t2;
    return t;
}

constexpr unsigned kCacheVersion = 1;

}  // namespace

std::string sieve_cache_key(const SieveConfig& config) {
    std::ostringstream os;
    os << "limit=" << config.limit << ";k_max=" << config.k_max << ";cp=";
    for (std::uint64_t c : config.checkpoints) os << c << ',';
    return hex64(fnv1a64(os.str()));
}

std::string sieve_cache_path(const SieveConfig& config, const std::string& cache_dir) {
    return cache_dir + "/ledger_" + sieve_cache_key(config) + ".txt";
}

void write_ledger_cache(const SumLedger& ledger, const std::string& path) {
    const SieveConfig& cfg = ledger.config;
    std::ostringstream os;
    os << "KAPLEDGER " << kCacheVersion << '\n';
    os << "key " << sieve_cache_key(cfg) << '\n';
    os << "limit " << cfg.limit << '\n';
    os << "k_max " << cfg.k_max << '\n';
    os << "checkpoints " << cfg.checkpoints.size();
    for (std::uint64_t c : cfg.checkpoints) os << ' ' << c;
    os << '\n';
    os << "rows " << ledger.rows.size() << '\n';
    for (const CheckpointRow& row : ledger.rows) {
        os << "x " << row.x << '\n';
        os << "N";
        for (std::uint64_t n : row.N) os << ' ' << n;
        os << ' ' << row.N_over << '\n';
        os << "R";
        for (const TD& t : row.R) { os << ' '; put_td(os, t); }
        os << '\n';
        os << "S";
        for (const TD& t : row.S) { os << ' '; put_td(os, t); }
        os << '\n';
        os << "extra ";
        put_td(os, row.R_over);
        os << ' ';
        put_td(os, row.R2_star);
        os << ' ';
        put_td(os, row.T);
        os << '\n';
        os << "moments";
        for (unsigned j = 1; j <= kMomentOrder; ++j) {
            os << ' ';
            put_td(os, row.logp_moments[j]);
        }
        os << '\n';
        os << "drift " << dstr(row.drift_integral[1]) << ' ' << dstr(row.drift_integral[2])
           << ' ' << dstr(row.drift_integral[3]) << '\n';
    }
    const std::string payload = os.str();

    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write cache file: " + path);
    f << payload << "checksum " << hex64(fnv1a64(payload)) << '\n';
    if (!f.flush()) throw std::runtime_error("short write to cache file: " + path);
}

bool load_ledger_cache(SumLedger& out, const SieveConfig& want, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    std::ostringstream buf;
    buf << f.rdbuf();
    const std::string all = buf.str();

    const std::size_t mark = all.rfind("checksum ");
    if (mark == std::string::npos || (mark != 0 && all[mark - 1] != '\n'))
        throw std::runtime_error("cache file corrupt (no checksum): " + path);
    const std::string payload = all.substr(0, mark);
    std::istringstream tail(all.substr(mark));
    std::string word, sum;
    tail >> word >> sum;
    if (sum != hex64(fnv1a64(payload)))
        throw std::runtime_error("cache file corrupt (checksum mismatch): " + path);

    std::istringstream is(payload);
    std::string tag;
    unsigned version = 0;
    is >> tag >> version;
    if (tag != "KAPLEDGER" || version != kCacheVersion)
        throw std::runtime_error("cache file has unknown format: " + path);
    std::string key;
    is >> tag >> key;
    if (key != sieve_cache_key(want))
        throw std::runtime_error("cache file does not match this configuration: " + path);

    SumLedger led;
    led.config = want;
    std::uint64_t limit = 0;
    unsigned k_max = 0;
    std::size_t ncp = 0, nrows = 0;
    is >> tag >> limit >> tag >> k_max;
    is >> tag >> ncp;
    std::vector<std::uint64_t> cps(ncp);
    for (auto& c : cps) is >> c;
    if (limit != want.limit || k_max != want.k_max || cps != want.checkpoints)
        throw std::runtime_error("cache file does not match this configuration: " + path);
    is >> tag >> nrows;
    led.rows.resize(nrows);
    for (CheckpointRow& row : led.rows) {
        is >> tag >> row.x;
        row.N.resize(k_max + 1);
        is >> tag;
        for (auto& n : row.N) is >> n;
        is >> row.N_over;
        row.R.resize(k_max + 1);
        row.S.resize(k_max + 1);
        is >> tag;
        for (TD& t : row.R) t = get_td(is);
        is >> tag;
        for (TD& t : row.S) t = get_td(is);
        is >> tag;
        row.R_over = get_td(is);
        row.R2_star = get_td(is);
        row.T = get_td(is);
        is >> tag;
        for (unsigned j = 1; j <= kMomentOrder; ++j) row.logp_moments[j] = get_td(is);
        is >> tag >> row.drift_integral[1] >> row.drift_integral[2] >> row.drift_integral[3];
    }
    if (!is) throw std::runtime_error("cache file truncated: " + path);
    out = std::move(led);
    return true;
}

SumLedger accumulate_cached(const SieveConfig& config, const std::string& cache_dir) {
    const std::string path = sieve_cache_path(config, cache_dir);
    SumLedger led;
    if (load_ledger_cache(led, config, path)) return led;
    led = accumulate(config);
    write_ledger_cache(led, path);
    return led;
}

void write_ledger_csv(const SumLedger& ledger, const Real& beta, const std::string& path,
                      const std::string& config_hash) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write CSV file: " + path);
    const unsigned digits = 34;  // triple-double carries ~46 digits, ~31 certified
    f << "# config " << config_hash << '\n';
    f << "x,k,N_k,R_k,S_k,R2_star,T,E\n";
    for (const CheckpointRow& row : ledger.rows) {
        const Real t = td_real(row.T);
        const Real e = t - log(log(Real(row.x))) - beta;
        const std::string r2s = dec_str(td_real(row.R2_star), digits);
        const std::string ts = dec_str(t, digits);
        const std::string es = dec_str(e, digits);
        for (std::size_t k = 0; k < row.N.size(); ++k) {
            f << row.x << ',' << k << ',' << row.N[k] << ','
              << dec_str(td_real(row.R[k]), digits) << ','
              << dec_str(td_real(row.S[k]), digits) << ',' << r2s << ',' << ts << ','
              << es << '\n';
        }
    }
    if (!f.flush()) throw std::runtime_error("short write to CSV file: " + path);
}

}  // namespace kap
