// fkey: finite-key security bound calculator for device-independent QKD.
// Subcommands: rate (optimize one N), sweep (rate table over an N grid),
// hash (two-universal privacy-amplification hash), verify (entropy lemma
// brute-force checks).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qkd/entropy_oracle.hpp"
#include "qkd/optimize.hpp"
#include "qkd/pa_hash.hpp"
#include "qkd/prng.hpp"

namespace {

struct RunOptions {
    double n_signals = 0.0;
    std::vector<double> grid;
    double qber = -1.0;  // negative means "not given"
    std::vector<double> correlators;
    double eps = 1e-5;
    double eps_ec = 1e-10;
    double f = 1.2;
    double p_a0 = -1.0;
    double p_b1 = -1.0;
    std::string out;
};

std::int64_t to_count(double v, const std::string& what) {
    if (!(v >= 1.0 && v <= 4.5e18))
        throw std::invalid_argument(what + " must be a count in [1, 4.5e18]");
    return static_cast<std::int64_t>(std::llround(v));
}

qkd::OptimizationProblem build_problem(const RunOptions& run) {
    qkd::OptimizationProblem pr;
    if (run.qber >= 0.0) pr.observation.qber = run.qber;
    if (!run.correlators.empty()) {
        if (run.correlators.size() != 4)
            throw std::invalid_argument("--correlators needs exactly four values e11,e12,e21,e22");
        pr.observation.correlators = {
            {run.correlators[0], run.correlators[1], run.correlators[2], run.correlators[3]}};
    }
    if (!pr.observation.qber && !pr.observation.correlators)
        throw std::invalid_argument("an observation is required: --qber and/or --correlators");
    pr.eps_total = run.eps;
    pr.eps_ec = run.eps_ec;
    pr.f = run.f;
    if (run.p_a0 >= 0.0) pr.fixed_p_a0 = run.p_a0;
    if (run.p_b1 >= 0.0) pr.fixed_p_b1 = run.p_b1;
    return pr;
}

nlohmann::json report_json(std::int64_t n_signals, const qkd::Optimum& opt) {
    const qkd::RateReport& r = opt.best_report;
    return nlohmann::json{{"N", n_signals},
                          {"n", r.counts.n_key},
                          {"m11", r.counts.m11},
                          {"m12", r.counts.m12},
                          {"m21", r.counts.m21},
                          {"m22", r.counts.m22},
                          {"discarded", r.counts.discarded},
                          {"C", r.chsh},
                          {"xi", r.xi_total},
                          {"s_xi", r.s_xi},
                          {"delta", r.delta},
                          {"leak", r.leak_bits},
                          {"ell", r.key_bits},
                          {"r", r.rate},
                          {"eps_pe", r.budget.eps_pe},
                          {"eps_bar", r.budget.eps_bar},
                          {"eps_ec", r.budget.eps_ec},
                          {"eps_pa", r.budget.eps_pa},
                          {"p_a0", r.config.p_a0},
                          {"p_b1", r.config.p_b1},
                          {"probes", opt.probes},
                          {"converged", opt.converged}};
}

int cmd_rate(const RunOptions& run) {
    qkd::OptimizationProblem pr = build_problem(run);
    pr.n_signals = to_count(run.n_signals, "--n-signals");
    const qkd::Optimum opt = qkd::optimize_rate(pr);
    const qkd::RateReport& r = opt.best_report;

    std::printf("N            %lld\n", static_cast<long long>(pr.n_signals));
    std::printf("C            %.10g\n", r.chsh);
    std::printf("n_key        %lld\n", static_cast<long long>(r.counts.n_key));
    std::printf("m_ij         %lld %lld %lld %lld (discarded %lld)\n",
                static_cast<long long>(r.counts.m11), static_cast<long long>(r.counts.m12),
                static_cast<long long>(r.counts.m21), static_cast<long long>(r.counts.m22),
                static_cast<long long>(r.counts.discarded));
    std::printf("p_a0, p_b1   %.10g %.10g\n", r.config.p_a0, r.config.p_b1);
    std::printf("xi           %.10g\n", r.xi_total);
    std::printf("S_xi         %.10g\n", r.s_xi);
    std::printf("delta        %.10g\n", r.delta);
    std::printf("leak         %.10g bits\n", r.leak_bits);
    std::printf("eps split    PE %.6g / bar %.6g / EC %.6g / PA %.6g\n", r.budget.eps_pe,
                r.budget.eps_bar, r.budget.eps_ec, r.budget.eps_pa);
    std::printf("ell          %lld bits\n", static_cast<long long>(r.key_bits));
    std::printf("rate         %.12g\n", r.rate);
    std::printf("probes       %lld, converged %s\n", static_cast<long long>(opt.probes),
                opt.converged ? "yes" : "no");
    if (r.key_bits == 0)
        std::printf("no key extractable at these parameters (key length clamped)\n");

    if (!run.out.empty()) {
        std::ofstream os(run.out);
        if (!os) throw std::runtime_error("cannot open output file " + run.out);
        os << report_json(pr.n_signals, opt).dump(2) << '\n';
    }
    return 0;
}

int cmd_sweep(const RunOptions& run) {
    qkd::OptimizationProblem pr = build_problem(run);
    std::vector<std::int64_t> grid;
    grid.reserve(run.grid.size());
    for (double v : run.grid) grid.push_back(to_count(v, "--grid entry"));
    pr.n_signals = grid.front();

    const std::vector<qkd::Optimum> results = qkd::sweep(pr, grid);

    std::string table = "N,r,p_a0,p_b1,eps_pe,eps_bar,eps_pa,xi,delta,leak,ell\n";
    char row[512];
    for (std::size_t i = 0; i < results.size(); ++i) {
        const qkd::RateReport& r = results[i].best_report;
        std::snprintf(row, sizeof row,
                      "%lld,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%lld\n",
                      static_cast<long long>(grid[i]), r.rate, r.config.p_a0, r.config.p_b1,
                      r.budget.eps_pe, r.budget.eps_bar, r.budget.eps_pa, r.xi_total, r.delta,
                      r.leak_bits, static_cast<long long>(r.key_bits));
        table += row;
    }
    if (run.out.empty()) {
        std::fputs(table.c_str(), stdout);
    } else {
        std::ofstream os(run.out);
        if (!os) throw std::runtime_error("cannot open output file " + run.out);
        os << table;
    }
    return 0;
}

int cmd_hash(const std::string& input, std::size_t degree, const std::string& seed_hex,
             std::size_t ell) {
    if (!qkd::modulus_table_contains(degree))
        throw std::invalid_argument("unsupported degree " + std::to_string(degree) +
                                    " (supported: 1..64, 127, 128, 256, 521, 1024)");
    std::ifstream is(input, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file " + input);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());
    if (8 * bytes.size() > degree)
        throw std::invalid_argument("input is " + std::to_string(8 * bytes.size()) +
                                    " bits, longer than the field degree");

    const qkd::BinaryField field = qkd::select_modulus(degree);
    const qkd::BitVec x = qkd::BitVec::from_bytes_msb(bytes, degree);
    const qkd::BitVec r = qkd::BitVec::from_hex(seed_hex, degree);
    const qkd::BitVec digest = qkd::hash_two_universal(x, r, ell, field);
    std::printf("%s\n", digest.to_hex().c_str());
    return 0;
}

int cmd_verify(std::int64_t count, std::uint64_t seed) {
    qkd::SplitMix64 rng(seed);
    std::int64_t leak_pass = 0, symm_pass = 0;
    double leak_min_slack = 1e300, symm_min_slack = 1e300;
    for (std::int64_t i = 0; i < count; ++i) {
        const auto dist = qkd::oracle::random_leakage_instance(rng);
        const auto lv = qkd::oracle::check_lemma_leakage(dist);
        leak_pass += lv.pass ? 1 : 0;
        leak_min_slack = std::min(leak_min_slack, lv.slack);

        const auto inst = qkd::oracle::random_symmetrization_instance(rng);
        const auto sv = qkd::oracle::check_lemma_symmetrization(inst.dist, inst.family);
        symm_pass += sv.pass ? 1 : 0;
        symm_min_slack = std::min(symm_min_slack, sv.slack);
    }
    std::printf("leakage lemma:        %lld/%lld passed, min slack %.6e\n",
                static_cast<long long>(leak_pass), static_cast<long long>(count),
                leak_min_slack);
    std::printf("symmetrization lemma: %lld/%lld passed, min slack %.6e\n",
                static_cast<long long>(symm_pass), static_cast<long long>(count),
                symm_min_slack);
    const bool ok = leak_pass == count && symm_pass == count;
    if (!ok) std::printf("LEMMA VIOLATION: this is an implementation bug\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-key security bounds for device-independent QKD"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a flat key=value file");
    std::string dump_config;
    app.add_option("--dump-config", dump_config,
                   "Write the effective configuration to a file and continue")
        ->configurable(false);

    RunOptions run;
    auto add_shared = [&run](CLI::App* cmd) {
        cmd->add_option("--qber", run.qber, "Observed error rate Q in [0, 1/2]");
        cmd->add_option("--correlators", run.correlators,
                        "CHSH correlators e11,e12,e21,e22")
            ->delimiter(',');
        cmd->add_option("--eps", run.eps, "Total security parameter")
            ->capture_default_str();
        cmd->add_option("--eps-ec", run.eps_ec, "Error-correction failure probability")
            ->capture_default_str();
        cmd->add_option("--ec-efficiency", run.f, "Error-correction inefficiency f >= 1")
            ->capture_default_str();
        cmd->add_option("--p-a0", run.p_a0, "Fix Alice's key-setting probability");
        cmd->add_option("--p-b1", run.p_b1, "Fix Bob's B1 probability");
        cmd->add_option("--out", run.out, "Write machine-readable output here");
    };

    CLI::App* rate = app.add_subcommand("rate", "Optimized rate report for one N");
    rate->configurable();
    rate->add_option("--n-signals", run.n_signals, "Number of exchanged quantum signals N")
        ->required();
    add_shared(rate);

    CLI::App* sweepc = app.add_subcommand("sweep", "Rate table over a grid of N values");
    sweepc->configurable();
    sweepc->add_option("--grid", run.grid, "Ascending N values, comma separated")
        ->delimiter(',')
        ->required();
    add_shared(sweepc);

    std::string hash_input, seed_hex;
    std::size_t degree = 0, ell = 0;
    CLI::App* hashc = app.add_subcommand("hash", "Two-universal hash of a file");
    hashc->configurable();
    hashc->add_option("input", hash_input, "File holding the raw bytes to hash")->required();
    hashc->add_option("--degree", degree, "Field degree n of GF(2^n)")->required();
    hashc->add_option("--seed-hex", seed_hex, "Multiplier r as a hex string")->required();
    hashc->add_option("--ell", ell, "Output length in bits")->required();

    std::int64_t verify_count = 0;
    std::uint64_t verify_seed = 1;
    CLI::App* verifyc = app.add_subcommand("verify", "Brute-force entropy lemma checks");
    verifyc->configurable();
    verifyc->add_option("--count", verify_count, "Random instances per lemma")
        ->required()
        ->check(CLI::PositiveNumber);
    verifyc->add_option("--seed", verify_seed, "Deterministic seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!dump_config.empty()) {
            std::ofstream os(dump_config);
            if (!os) throw std::runtime_error("cannot open config dump file " + dump_config);
            os << app.config_to_str(false, true);  // only options that were set
        }
        if (rate->parsed()) return cmd_rate(run);
        if (sweepc->parsed()) return cmd_sweep(run);
        if (hashc->parsed()) return cmd_hash(hash_input, degree, seed_hex, ell);
        if (verifyc->parsed()) return cmd_verify(verify_count, verify_seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
