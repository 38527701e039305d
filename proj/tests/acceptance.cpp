// Acceptance suite: end-to-end checks of the headline behaviors, one
// PASS/FAIL line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qkd/entropy_oracle.hpp"
#include "qkd/optimize.hpp"
#include "qkd/pa_hash.hpp"
#include "qkd/prng.hpp"

using namespace qkd;

namespace {

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OptimizationProblem baseline_problem(double q) {
    OptimizationProblem pr;
    pr.n_signals = 1;
    pr.observation.qber = q;
    pr.eps_total = 1e-5;
    pr.eps_ec = 1e-10;
    pr.f = 1.2;
    return pr;
}

const std::vector<std::int64_t> kDecades = {
    10'000,         100'000,         1'000'000,         10'000'000,
    100'000'000,    1'000'000'000,   10'000'000'000,    100'000'000'000,
    1'000'000'000'000, 10'000'000'000'000, 100'000'000'000'000, 1'000'000'000'000'000};

}  // namespace

int main() {
    // Decade sweeps at both error rates; reused by several criteria below.
    const auto t_sweep = std::chrono::steady_clock::now();
    const std::vector<Optimum> sweep02 = sweep(baseline_problem(0.02), kDecades);
    const double sweep02_s = seconds_since(t_sweep);
    const std::vector<Optimum> sweep05 = sweep(baseline_problem(0.05), kDecades);

    {
        const double r_1e4 = sweep02.front().best_report.rate;
        const double r_1e7 = sweep02[3].best_report.rate;
        const bool pass = r_1e4 == 0.0 && r_1e7 > 0.0 && sweep02_s < 60.0;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "rate(1e4) = %g, rate(1e7) = %g, decade sweep took %.1f s (< 60 s)",
                      r_1e4, r_1e7, sweep02_s);
        report(pass, "threshold (Q = 2%)", buf);
    }

    {
        bool pass = true;
        std::string detail;
        const std::vector<const std::vector<Optimum>*> sweeps = {&sweep02, &sweep05};
        const double qs[2] = {0.02, 0.05};
        for (int i = 0; i < 2; ++i) {
            const double rate = sweeps[i]->back().best_report.rate;
            const double limit = static_cast<double>(
                oracles::asymptotic_rate_ld(static_cast<long double>(qs[i]), 1.2L));
            pass = pass && rate >= 0.95 * limit && rate <= limit;
            char buf[96];
            std::snprintf(buf, sizeof buf, "%sQ = %g%%: rate %.6f vs limit %.6f",
                          i ? "; " : "", 100 * qs[i], rate, limit);
            detail += buf;
        }
        report(pass, "asymptote at N = 1e15 (within 5%)", detail);
    }

    {
        bool pass = true;
        std::string detail;
        for (const auto* sw : {&sweep02, &sweep05}) {
            const RateReport& r = sw->back().best_report;
            pass = pass && r.config.p_a0 >= 0.99 && r.config.p_b1 >= 0.99;
            char buf[96];
            std::snprintf(buf, sizeof buf, "%sp_a0 = %.6f, p_b1 = %.6f",
                          detail.empty() ? "" : "; ", r.config.p_a0, r.config.p_b1);
            detail += buf;
        }
        report(pass, "optimal sampling bias at N = 1e15", detail);
    }

    {
        const double c02 = chsh_from_qber(0.02);
        const double c05 = chsh_from_qber(0.05);
        const bool pass = std::fabs(c02 - 2.715) < 0.001 && std::fabs(c05 - 2.546) < 0.001;
        char buf[96];
        std::snprintf(buf, sizeof buf, "C(2%%) = %.4f, C(5%%) = %.4f", c02, c05);
        report(pass, "CHSH values from the QBER relation", buf);
    }

    {
        bool pass = true;
        const BinaryField f3 = select_modulus(3);
        for (std::size_t ell = 0; ell <= 3 && pass; ++ell)
            for (std::uint64_t a = 0; a < 8 && pass; ++a)
                for (std::uint64_t b = 0; b < 8; ++b) {
                    if (a == b) continue;
                    const CollisionCount cc = collision_probability_exhaustive(
                        f3, ell, element_from_u64(f3, a), element_from_u64(f3, b));
                    if (cc.collisions != (std::uint64_t{8} >> ell)) {
                        pass = false;
                        break;
                    }
                }
        const BinaryField f8 = select_modulus(8);
        SplitMix64 rng(2026);
        int checked = 0;
        for (int i = 0; i < 100; ++i) {
            const std::uint64_t a = rng.bounded(256);
            std::uint64_t b = rng.bounded(256);
            if (b == a) b = (b + 1) % 256;
            const CollisionCount cc = collision_probability_exhaustive(
                f8, 4, element_from_u64(f8, a), element_from_u64(f8, b));
            if (cc.collisions * 16 != cc.multipliers) pass = false;
            ++checked;
        }
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "all GF(2^3) pairs at ell = 0..3 and %d GF(2^8) pairs collide at "
                      "exactly 2^-ell",
                      checked);
        report(pass, "two-universality with equality", buf);
    }

    {
        const auto t0 = std::chrono::steady_clock::now();
        SplitMix64 rng(20260810);
        bool pass = true;
        double min_slack = 1e300;
        for (int i = 0; i < 1000; ++i) {
            const auto lv = oracle::check_lemma_leakage(oracle::random_leakage_instance(rng));
            const auto inst = oracle::random_symmetrization_instance(rng);
            const auto sv = oracle::check_lemma_symmetrization(inst.dist, inst.family);
            pass = pass && lv.pass && sv.pass;
            min_slack = std::min({min_slack, lv.slack, sv.slack});
        }
        const double dt = seconds_since(t0);
        pass = pass && dt < 30.0;
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "1000 instances per lemma, min slack %.3e, %.1f s (< 30 s)", min_slack,
                      dt);
        report(pass, "entropy lemma suite", buf);
    }

    {
        SplitMix64 rng(424242);
        bool pass = true;
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double eps = std::pow(10.0, -15.0 * rng.uniform01());
            const auto n =
                static_cast<std::int64_t>(std::pow(10.0, 12.0 * rng.uniform01())) + 1;
            const double d1 = delta_smoothing(eps, n);
            const long double d1r = oracles::delta_ld(eps, static_cast<long double>(n));
            worst = std::max(worst,
                             static_cast<double>(std::fabs(d1 - d1r) / std::fabs(d1r)));

            const int d = 2 + static_cast<int>(rng.bounded(7));
            const double x1 = xi_deviation(n, d, eps);
            const long double x1r = oracles::xi_ld(static_cast<long double>(n), d, eps);
            worst = std::max(worst,
                             static_cast<double>(std::fabs(x1 - x1r) / std::fabs(x1r)));

            const double f = 1.0 + rng.uniform01();
            const double h = rng.uniform01();
            const double l1 = ec_leakage(n, {f, h}, eps);
            const long double l1r = oracles::leak_ld(static_cast<long double>(n), f, h, eps);
            worst = std::max(worst,
                             static_cast<double>(std::fabs(l1 - l1r) / std::fabs(l1r)));

            const double gap = 1e-3 + (2.0 * std::numbers::sqrt2 - 2.0 - 1e-3) * rng.uniform01();
            const double xi = 0.5 * rng.uniform01();
            const double s1 = di_entropy_bound(2.0 + gap + xi, xi);
            const long double s1r = oracles::s_xi_ld(2.0 + gap + xi, xi);
            worst = std::max(worst,
                             static_cast<double>(std::fabs(s1 - s1r) / std::fabs(s1r)));
        }
        pass = worst <= 1e-10;
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "10^4 inputs per formula, worst relative error %.2e (<= 1e-10)", worst);
        report(pass, "formula oracle suite", buf);
    }

    {
        bool pass = true;
        std::string detail;

        // rate nondecreasing in N along both sweeps
        for (const auto* sw : {&sweep02, &sweep05})
            for (std::size_t i = 1; i < sw->size(); ++i)
                pass = pass && (*sw)[i - 1].best_report.rate <=
                                   (*sw)[i].best_report.rate + 1e-9;
        detail += "rate monotone in N";

        // rate nonincreasing in Q at fixed parameters
        double prev = 2.0;
        for (int i = 1; i <= 7; ++i) {
            const double q = 0.01 * i;
            ChannelObservation obs;
            obs.qber = q;
            DiProtocolConfig cfg;
            cfg.n_signals = 100'000'000;
            cfg.p_a0 = 0.9;
            cfg.p_b1 = 0.9;
            cfg.leak_model = {1.2, binary_entropy(q)};
            const double rem = (1e-5 - 1e-10) / 3.0;
            const RateReport rep = di_rate(cfg, obs, {1e-5, rem, rem, 1e-10, rem});
            pass = pass && rep.rate <= prev;
            prev = rep.rate;
        }
        detail += "; rate nonincreasing in Q";

        // entropy bound monotone on a 100x100 grid
        const double c_hi = 2.0 * std::numbers::sqrt2;
        for (int i = 0; i < 100; ++i) {
            const double c = 2.0 + (c_hi - 2.0) * i / 99.0;
            double prev_s = 2.0;
            for (int j = 0; j < 100; ++j) {
                const double xi = 1.0 * j / 99.0;
                const double s = di_entropy_bound(c, xi);
                pass = pass && s <= prev_s && s >= 0.0 && s <= 1.0;
                prev_s = s;
            }
            if (i > 0)
                pass = pass && di_entropy_bound(c, 0.0) >=
                                   di_entropy_bound(2.0 + (c_hi - 2.0) * (i - 1) / 99.0, 0.0);
        }
        detail += "; S_xi monotone in (C, xi)";

        // key length monotone in each argument
        SplitMix64 rng(31415);
        for (int i = 0; i < 10000; ++i) {
            KeyLengthInputs in;
            in.n = 1 + static_cast<std::int64_t>(rng.bounded(1'000'000'000));
            in.s_xi = rng.uniform01();
            in.delta = 2.0 * rng.uniform01();
            in.leak_bits = rng.uniform01() * static_cast<double>(in.n);
            in.eps_pa = std::pow(10.0, -12.0 * rng.uniform01());
            const std::int64_t ell = key_length(in);
            KeyLengthInputs up = in;
            up.n += 1 + static_cast<std::int64_t>(rng.bounded(1000));
            pass = pass && key_length(up) >= ell;
            up = in;
            up.s_xi = in.s_xi + (1.0 - in.s_xi) * rng.uniform01();
            pass = pass && key_length(up) >= ell;
            up = in;
            up.eps_pa = in.eps_pa + (1.0 - in.eps_pa) * rng.uniform01();
            pass = pass && key_length(up) >= ell;
            up = in;
            up.delta = in.delta + rng.uniform01();
            pass = pass && key_length(up) <= ell;
            up = in;
            up.leak_bits = in.leak_bits + 1e6 * rng.uniform01();
            pass = pass && key_length(up) <= ell;
        }
        detail += "; key length monotone in each argument";

        report(pass, "monotonicity properties", detail);
    }

    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
