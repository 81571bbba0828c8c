#include "kap/checks.hpp"
#include "kap/ledger_io.hpp"
#include "kap/poly.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using kap::Real;
using ordered_json = nlohmann::ordered_json;  // insertion order keeps files byte-stable

void write_text_file(const std::string& path, const std::string& body) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write: " + path);
    f << body;
    if (!f.flush()) throw std::runtime_error("short write: " + path);
}

ordered_json real_map_json(const std::vector<Real>& v, unsigned lo, unsigned hi,
                           unsigned digits) {
    ordered_json out = ordered_json::object();
    for (unsigned k = lo; k <= hi && k < v.size(); ++k)
        out[std::to_string(k)] = kap::dec_str(v[k], digits);
    return out;
}

int cmd_constants(const kap::RunConfig& cfg) {
    kap::ConstantsOptions opt;
    opt.prec.decimal_digits = cfg.precision_digits;
    kap::ConstantsTable tbl = kap::build_constants(opt);
    const unsigned digits = cfg.precision_digits;

    ordered_json out;
    out["config"] = cfg.hash();
    out["digits"] = digits;
    out["gamma"] = kap::dec_str(tbl.gamma, digits);
    out["beta"] = kap::dec_str(tbl.beta, digits);
    out["alpha_1"] = kap::dec_str(tbl.alpha1, digits);
    out["nu"] = real_map_json(tbl.nu, 1, 20, digits);
    out["nu_star"] = real_map_json(tbl.nu_star, 0, 10, digits);
    ordered_json bp = ordered_json::object(), dp = ordered_json::object();
    for (const auto& [p, v] : tbl.beta_p) bp[std::to_string(p)] = kap::dec_str(v, digits);
    for (const auto& [p, v] : tbl.delta_p) dp[std::to_string(p)] = kap::dec_str(v, digits);
    out["beta_p"] = bp;
    out["delta_p"] = dp;
    out["qihu_a"] = real_map_json(tbl.qihu_a, 0, 10, digits);
    ordered_json lambda = ordered_json::object();
    for (unsigned k = 0; k <= 6; ++k) {
        ordered_json row = ordered_json::object();
        for (unsigned j = 0; j <= k; ++j)
            row[std::to_string(j)] = kap::dec_str(tbl.tenenbaum_lambda(j, k), digits);
        lambda[std::to_string(k)] = row;
    }
    out["lambda"] = lambda;

    const std::string path = cfg.output_dir + "/constants.json";
    write_text_file(path, out.dump(2) + "\n");
    std::cout << "constants written: " << path << '\n';
    return 0;
}

int cmd_sieve(const kap::RunConfig& cfg) {
    kap::SumLedger ledger = kap::accumulate_cached(cfg.sieve_config(), cfg.cache_dir);
    Real beta = kap::mertens_beta(kap::Precision{cfg.precision_digits});
    const std::string path = cfg.output_dir + "/ledger.csv";
    kap::write_ledger_csv(ledger, beta, path, cfg.hash());
    std::cout << "ledger written: " << path << " (" << ledger.rows.size() << " checkpoints, limit "
              << ledger.config.limit << ")\n";
    return 0;
}

int cmd_verify(const kap::RunConfig& cfg) {
    kap::ManifestResult m = kap::run_manifest(cfg);
    kap::print_manifest(m, std::cout);
    const std::string path = cfg.output_dir + "/manifest.csv";
    kap::write_manifest_csv(m, cfg.hash(), path);
    std::cout << "manifest written: " << path << '\n';
    return m.all_pass() ? 0 : 1;
}

// Re-emit artifacts from an existing cache without sieving: the ledger CSV
// plus the main-term polynomials as JSON.
int cmd_export(const kap::RunConfig& cfg) {
    kap::SieveConfig sc = cfg.sieve_config();
    const std::string cache_path = kap::sieve_cache_path(sc, cfg.cache_dir);
    kap::SumLedger ledger;
    if (!kap::load_ledger_cache(ledger, sc, cache_path))
        throw std::runtime_error("no cache at " + cache_path + "; run the sieve command first");

    kap::ConstantsOptions opt;
    opt.prec.decimal_digits = cfg.precision_digits;
    kap::ConstantsTable tbl = kap::build_constants(opt);
    kap::write_ledger_csv(ledger, tbl.beta, cfg.output_dir + "/ledger.csv", cfg.hash());

    const unsigned digits = cfg.precision_digits;
    ordered_json out;
    out["config"] = cfg.hash();
    ordered_json vk = ordered_json::object(), rk = ordered_json::object();
    for (unsigned k = 0; k <= cfg.k_max; ++k)
        vk[std::to_string(k)] = ordered_json::parse(kap::poly_json(kap::build_Vk(k, tbl), digits));
    for (unsigned k = 2; k <= 4; ++k)
        rk[std::to_string(k)] =
            ordered_json::parse(kap::poly_json(kap::build_Rk_special(k, tbl), digits));
    out["V"] = vk;
    out["R_special"] = rk;
    const std::string path = cfg.output_dir + "/polynomials.json";
    write_text_file(path, out.dump(2) + "\n");
    std::cout << "exported: " << cfg.output_dir << "/ledger.csv, " << path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reciprocal sums over numbers with k prime factors: "
                 "constants, sieve ledger, verification manifest"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    app.add_option("--config", config_file, "key = value config file; flags override it");

    // Each flag maps onto a config key; applied only when actually given.
    struct Flag {
        const char* key;
        std::string value;
        CLI::Option* opt = nullptr;
    };
    std::vector<Flag> flags = {
        {"limit", "", nullptr},        {"digits", "", nullptr},   {"threads", "", nullptr},
        {"segment-size", "", nullptr}, {"checkpoints", "", nullptr}, {"cache-dir", "", nullptr},
        {"out", "", nullptr},          {"data-dir", "", nullptr}, {"k-max", "", nullptr},
        {"simd", "", nullptr},
    };
    const char* help[] = {
        "sieve upper limit (default 1e7)",
        "working precision in decimal digits (default 50)",
        "worker threads, 0 = hardware (default 0)",
        "sieve segment length (default 4194304)",
        "'log:N' for N points per decade, or a comma list of x values",
        "ledger cache directory (default cache)",
        "output directory for JSON/CSV artifacts (default out)",
        "directory holding the published alpha table",
        "largest tracked factor count (default 8)",
        "kernel selection: auto|scalar|avx2",
    };
    for (std::size_t i = 0; i < flags.size(); ++i)
        flags[i].opt = app.add_option("--" + std::string(flags[i].key), flags[i].value, help[i]);

    CLI::App* sub_constants = app.add_subcommand("constants", "compute and export the constant tables");
    CLI::App* sub_sieve = app.add_subcommand("sieve", "run the sieve and write the checkpoint ledger");
    CLI::App* sub_verify = app.add_subcommand("verify", "run the full verification manifest");
    CLI::App* sub_export = app.add_subcommand("export", "re-export artifacts from an existing cache");

    CLI11_PARSE(app, argc, argv);

    try {
        kap::RunConfig cfg;
        if (!config_file.empty()) cfg = kap::load_config_file(config_file);
        for (const Flag& f : flags)
            if (f.opt->count() > 0) kap::apply_config_override(cfg, f.key, f.value);
        cfg.validate();

        if (sub_constants->parsed()) return cmd_constants(cfg);
        if (sub_sieve->parsed()) return cmd_sieve(cfg);
        if (sub_verify->parsed()) return cmd_verify(cfg);
        if (sub_export->parsed()) return cmd_export(cfg);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
