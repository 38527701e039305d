#include "qkd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkd {

namespace {

// Free parameters of the search: the two sampling probabilities and the
// log10 weights that define the epsilon split (renormalized, so only the
// weight ratios matter).
struct ParamPoint {
    double p_a0 = 0.0;
    double p_b1 = 0.0;
    double lw[3] = {0.0, 0.0, 0.0};  // eps_pe, eps_bar, eps_pa
};

EpsilonBudget split_budget(const OptimizationProblem& pr, const double lw[3]) {
    const double w0 = std::pow(10.0, lw[0]);
    const double w1 = std::pow(10.0, lw[1]);
    const double w2 = std::pow(10.0, lw[2]);
    const double total_w = w0 + w1 + w2;
    const double rem = pr.eps_total - pr.eps_ec;
    EpsilonBudget b;
    b.eps_total = pr.eps_total;
    b.eps_pe = w0 / total_w * rem;
    b.eps_bar = w1 / total_w * rem;
    b.eps_ec = pr.eps_ec;
    b.eps_pa = w2 / total_w * rem;
    return b;
}

DiProtocolConfig make_config(const OptimizationProblem& pr, double p_a0, double p_b1) {
    DiProtocolConfig cfg;
    cfg.n_signals = pr.n_signals;
    cfg.p_a0 = p_a0;
    cfg.p_b1 = p_b1;
    cfg.leak_model = {pr.f, binary_entropy(pr.observation.effective_qber())};
    cfg.pe_union_bound = pr.pe_union_bound;
    return cfg;
}

RateReport evaluate(const OptimizationProblem& pr, const ParamPoint& q,
                    std::int64_t& probes) {
    ++probes;
    const DiProtocolConfig cfg = make_config(pr, q.p_a0, q.p_b1);
    const EpsilonBudget budget = split_budget(pr, q.lw);
    try {
        return di_rate(cfg, pr.observation, budget);
    } catch (const EstimationError&) {
        // A correlator has no samples at this parameter point: no certified
        // key, treated as a zero-rate probe.
        RateReport rep;
        rep.config = cfg;
        rep.budget = budget;
        rep.counts = sampling_counts(cfg);
        rep.chsh = pr.observation.chsh_value();
        return rep;
    }
}

struct SearchState {
    ParamPoint params;
    RateReport report;
};

// Coordinate refinement with interval halving. Step sizes start at the grid
// spacing and are halved whenever a full round over all free coordinates
// improves the rate by less than rel_improvement_tol (relative); the search
// ends when the steps have shrunk past machine-level resolution or the round
// budget is exhausted.
bool refine(const OptimizationProblem& pr, SearchState& best, std::int64_t& probes) {
    const OptimizerSettings& st = pr.settings;
    const double p_lo = st.prob_margin;
    const double p_hi = 1.0 - st.prob_margin;
    const double p_step0 = 1.0 / (st.prob_grid_points + 1);
    const double lw_step0 = 2.0 / (st.eps_grid_points - 1);

    struct Coord {
        double* value;
        double step0, lo, hi;
    };
    std::vector<Coord> coords;
    if (!pr.fixed_p_a0) coords.push_back({&best.params.p_a0, p_step0, p_lo, p_hi});
    if (!pr.fixed_p_b1) coords.push_back({&best.params.p_b1, p_step0, p_lo, p_hi});
    for (double& w : best.params.lw)
        coords.push_back({&w, lw_step0, st.log_weight_floor, 0.0});

    double scale = 1.0;
    for (int round = 0; round < st.max_refine_rounds; ++round) {
        const double before = best.report.rate;
        for (const Coord& c : coords) {
            for (double dir : {1.0, -1.0}) {
                const double cur = *c.value;
                const double cand = std::clamp(cur + dir * c.step0 * scale, c.lo, c.hi);
                if (cand == cur) continue;
                *c.value = cand;
                RateReport rep = evaluate(pr, best.params, probes);
                if (rep.rate > best.report.rate)
                    best.report = rep;
                else
                    *c.value = cur;
            }
        }
        const double gain = best.report.rate - before;
        if (gain <= st.rel_improvement_tol * std::max(best.report.rate, 1e-300)) {
            scale *= 0.5;
            if (scale < 1e-13) return true;
        }
    }
    return false;
}

SearchState grid_scan(const OptimizationProblem& pr, std::int64_t& probes) {
    const OptimizerSettings& st = pr.settings;

    std::vector<double> pa_grid, pb_grid, lw_grid;
    if (pr.fixed_p_a0)
        pa_grid.push_back(*pr.fixed_p_a0);
    else
        for (int i = 1; i <= st.prob_grid_points; ++i)
            pa_grid.push_back(static_cast<double>(i) / (st.prob_grid_points + 1));
    if (pr.fixed_p_b1)
        pb_grid.push_back(*pr.fixed_p_b1);
    else
        for (int i = 1; i <= st.prob_grid_points; ++i)
            pb_grid.push_back(static_cast<double>(i) / (st.prob_grid_points + 1));
    // log10 weights spanning [1e-2, 1] before renormalization
    for (int j = 0; j < st.eps_grid_points; ++j)
        lw_grid.push_back(-2.0 + 2.0 * j / (st.eps_grid_points - 1));

    SearchState best;
    bool have_best = false;
    ParamPoint q;
    // lexicographic scan with strict improvement: ties keep the lowest tuple
    for (double pa : pa_grid) {
        q.p_a0 = pa;
        for (double pb : pb_grid) {
            q.p_b1 = pb;
            for (double l0 : lw_grid) {
                q.lw[0] = l0;
                for (double l1 : lw_grid) {
                    q.lw[1] = l1;
                    for (double l2 : lw_grid) {
                        q.lw[2] = l2;
                        RateReport rep = evaluate(pr, q, probes);
                        if (!have_best || rep.rate > best.report.rate) {
                            best = {q, rep};
                            have_best = true;
                        }
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace

void OptimizationProblem::validate() const {
    if (n_signals < 1) throw std::invalid_argument("optimization: N must be >= 1");
    observation.validate();
    if (!(eps_total > 0.0 && eps_total <= 1.0))
        throw std::invalid_argument("optimization: eps_total must lie in (0, 1]");
    if (!(eps_ec > 0.0 && eps_ec < eps_total))
        throw std::invalid_argument("optimization: need 0 < eps_ec < eps_total");
    if (!(f >= 1.0)) throw std::invalid_argument("optimization: f must be >= 1");
    for (const auto& p : {fixed_p_a0, fixed_p_b1})
        if (p && !(*p > 0.0 && *p < 1.0))
            throw std::invalid_argument("optimization: fixed probabilities must lie in (0, 1)");
    if (settings.eps_grid_points < 2 || settings.prob_grid_points < 1)
        throw std::invalid_argument("optimization: grid settings too small");
}

Optimum optimize_rate(const OptimizationProblem& problem) {
    problem.validate();
    std::int64_t probes = 0;
    SearchState best = grid_scan(problem, probes);
    const bool converged = refine(problem, best, probes);
    return {best.report, probes, converged};
}

std::vector<Optimum> sweep(const OptimizationProblem& problem_template,
                           const std::vector<std::int64_t>& n_grid) {
    if (n_grid.empty()) throw std::invalid_argument("sweep: empty N grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("sweep: N grid must be strictly ascending");

    std::vector<Optimum> out;
    out.reserve(n_grid.size());
    ParamPoint prev_params;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        OptimizationProblem pr = problem_template;
        pr.n_signals = n_grid[i];
        Optimum opt = optimize_rate(pr);
        if (i > 0) {
            // warm start: refine from the previous optimum's parameters, which
            // keeps the rates monotone along the grid
            std::int64_t probes = 0;
            SearchState warm{prev_params, evaluate(pr, prev_params, probes)};
            const bool wconv = refine(pr, warm, probes);
            if (warm.report.rate > opt.best_report.rate)
                opt = {warm.report, opt.probes + probes, wconv};
            else
                opt.probes += probes;
        }
        prev_params = {opt.best_report.config.p_a0, opt.best_report.config.p_b1, {}};
        // recover the log weights from the chosen split (ratios are what matter)
        const EpsilonBudget& b = opt.best_report.budget;
        const double rem = b.eps_pe + b.eps_bar + b.eps_pa;
        prev_params.lw[0] = std::log10(b.eps_pe / rem);
        prev_params.lw[1] = std::log10(b.eps_bar / rem);
        prev_params.lw[2] = std::log10(b.eps_pa / rem);
        out.push_back(std::move(opt));
    }
    return out;
}

}  // namespace qkd
