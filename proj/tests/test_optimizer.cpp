#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "qkd/optimize.hpp"

using namespace qkd;

namespace {

OptimizationProblem baseline_problem(std::int64_t n_signals, double q) {
    OptimizationProblem pr;
    pr.n_signals = n_signals;
    pr.observation.qber = q;
    pr.eps_total = 1e-5;
    pr.eps_ec = 1e-10;
    pr.f = 1.2;
    return pr;
}

}  // namespace

TEST_CASE("optimize: no key at N = 1e4") {
    const Optimum opt = optimize_rate(baseline_problem(10'000, 0.02));
    CHECK(opt.best_report.rate == 0.0);
    CHECK(opt.best_report.key_bits == 0);
    CHECK(opt.probes > 0);
    CHECK(opt.converged);
}

TEST_CASE("optimize: asymptote at N = 1e15, both error rates") {
    for (double q : {0.02, 0.05}) {
        const Optimum opt = optimize_rate(baseline_problem(1'000'000'000'000'000, q));
        const double limit = static_cast<double>(
            oracles::asymptotic_rate_ld(static_cast<long double>(q), 1.2L));
        CHECK(opt.best_report.rate > 0.95 * limit);
        CHECK(opt.best_report.rate <= limit);
        CHECK(opt.best_report.config.p_a0 >= 0.99);
        CHECK(opt.best_report.config.p_b1 >= 0.99);
    }
}

TEST_CASE("optimize: deterministic across runs") {
    const Optimum a = optimize_rate(baseline_problem(1'000'000, 0.02));
    const Optimum b = optimize_rate(baseline_problem(1'000'000, 0.02));
    CHECK(a.best_report.rate == b.best_report.rate);
    CHECK(a.best_report.key_bits == b.best_report.key_bits);
    CHECK(a.best_report.config.p_a0 == b.best_report.config.p_a0);
    CHECK(a.best_report.config.p_b1 == b.best_report.config.p_b1);
    CHECK(a.best_report.budget.eps_pe == b.best_report.budget.eps_pe);
    CHECK(a.best_report.budget.eps_bar == b.best_report.budget.eps_bar);
    CHECK(a.best_report.budget.eps_pa == b.best_report.budget.eps_pa);
    CHECK(a.probes == b.probes);
}

TEST_CASE("optimize: budget of the optimum is feasible by construction") {
    const Optimum opt = optimize_rate(baseline_problem(100'000'000, 0.02));
    const EpsilonBudget& b = opt.best_report.budget;
    CHECK_NOTHROW(b.validate());
    const double sum = b.eps_pe + b.eps_bar + b.eps_ec + b.eps_pa;
    CHECK(std::fabs(sum - 1e-5) <= 1e-17);
    CHECK(b.eps_ec == 1e-10);
}

TEST_CASE("optimize: ten-percent perturbations do not beat the optimum") {
    for (std::int64_t n : {std::int64_t{1'000'000}, std::int64_t{100'000'000}}) {
        const OptimizationProblem pr = baseline_problem(n, 0.02);
        const Optimum opt = optimize_rate(pr);
        const RateReport& best = opt.best_report;

        auto rate_at = [&](double pa, double pb, double wpe, double wbar, double wpa) {
            DiProtocolConfig cfg = best.config;
            cfg.p_a0 = std::clamp(pa, 1e-9, 1.0 - 1e-9);
            cfg.p_b1 = std::clamp(pb, 1e-9, 1.0 - 1e-9);
            const double rem = pr.eps_total - pr.eps_ec;
            const double w = wpe + wbar + wpa;
            EpsilonBudget bud{pr.eps_total, wpe / w * rem, wbar / w * rem, pr.eps_ec,
                              wpa / w * rem};
            try {
                return di_rate(cfg, pr.observation, bud).rate;
            } catch (const EstimationError&) {
                return 0.0;
            }
        };

        const double pa = best.config.p_a0, pb = best.config.p_b1;
        const double we = best.budget.eps_pe, wb = best.budget.eps_bar,
                     wp = best.budget.eps_pa;
        for (double s : {0.9, 1.1}) {
            CHECK(rate_at(pa * s, pb, we, wb, wp) <= best.rate + 1e-4);
            CHECK(rate_at(pa, pb * s, we, wb, wp) <= best.rate + 1e-4);
            CHECK(rate_at(pa, pb, we * s, wb, wp) <= best.rate + 1e-4);
            CHECK(rate_at(pa, pb, we, wb * s, wp) <= best.rate + 1e-4);
            CHECK(rate_at(pa, pb, we, wb, wp * s) <= best.rate + 1e-4);
        }
    }
}

TEST_CASE("optimize: fixed sampling probabilities are honored") {
    OptimizationProblem pr = baseline_problem(100'000'000, 0.02);
    pr.fixed_p_a0 = 0.7;
    pr.fixed_p_b1 = 0.6;
    const Optimum opt = optimize_rate(pr);
    CHECK(opt.best_report.config.p_a0 == 0.7);
    CHECK(opt.best_report.config.p_b1 == 0.6);
    // the free optimum can only be better
    const Optimum free_opt = optimize_rate(baseline_problem(100'000'000, 0.02));
    CHECK(free_opt.best_report.rate >= opt.best_report.rate);
}

TEST_CASE("optimize: infeasible epsilon configuration") {
    OptimizationProblem pr = baseline_problem(1'000'000, 0.02);
    pr.eps_ec = 2e-5;  // exceeds eps_total
    CHECK_THROWS_AS(optimize_rate(pr), std::invalid_argument);
    pr.eps_ec = 1e-5;  // equal is still infeasible
    CHECK_THROWS_AS(optimize_rate(pr), std::invalid_argument);
}

TEST_CASE("optimize: lower error rate never hurts") {
    const Optimum low = optimize_rate(baseline_problem(1'000'000, 0.02));
    const Optimum high = optimize_rate(baseline_problem(1'000'000, 0.05));
    CHECK(low.best_report.rate >= high.best_report.rate);
}

TEST_CASE("sweep: single-point grid matches optimize_rate") {
    const Optimum direct = optimize_rate(baseline_problem(1'000'000, 0.02));
    const auto swept = sweep(baseline_problem(1, 0.02), {1'000'000});
    REQUIRE(swept.size() == 1);
    CHECK(swept[0].best_report.rate == direct.best_report.rate);
    CHECK(swept[0].best_report.key_bits == direct.best_report.key_bits);
    CHECK(swept[0].best_report.config.p_a0 == direct.best_report.config.p_a0);
    CHECK(swept[0].best_report.budget.eps_pe == direct.best_report.budget.eps_pe);
}

TEST_CASE("sweep: rates are monotone over a short grid") {
    const auto swept = sweep(baseline_problem(1, 0.02),
                             {100'000, 1'000'000, 10'000'000, 100'000'000});
    REQUIRE(swept.size() == 4);
    for (std::size_t i = 1; i < swept.size(); ++i)
        CHECK(swept[i - 1].best_report.rate <= swept[i].best_report.rate + 1e-9);
}

TEST_CASE("sweep: grid validation") {
    CHECK_THROWS_AS(sweep(baseline_problem(1, 0.02), {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(baseline_problem(1, 0.02), {1000, 1000}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(baseline_problem(1, 0.02), {2000, 1000}), std::invalid_argument);
}
