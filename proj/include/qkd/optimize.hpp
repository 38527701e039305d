#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qkd/di_chsh.hpp"

namespace qkd {

struct OptimizerSettings {
    int eps_grid_points = 7;    // per epsilon-weight dimension, log spaced
    int prob_grid_points = 19;  // per sampling-probability dimension
    double rel_improvement_tol = 1e-6;
    int max_refine_rounds = 200;
    double prob_margin = 1e-9;       // p_a0, p_b1 confined to [margin, 1-margin]
    double log_weight_floor = -6.0;  // log10 lower bound for epsilon-split weights
};

struct OptimizationProblem {
    std::int64_t n_signals = 0;
    ChannelObservation observation;
    double eps_total = 0.0;
    double eps_ec = 0.0;  // fixed by the error-correction scheme
    double f = 1.2;       // error-correction inefficiency
    std::optional<double> fixed_p_a0;
    std::optional<double> fixed_p_b1;
    bool pe_union_bound = false;
    OptimizerSettings settings;

    void validate() const;
};

struct Optimum {
    RateReport best_report;
    std::int64_t probes = 0;  // objective evaluations
    bool converged = false;
};

// Maximize the finite-key rate over (p_a0, p_b1) and the split of
// eps_total - eps_ec into (eps_pe, eps_bar, eps_pa). Deterministic: a coarse
// grid scan followed by coordinate refinement with interval halving.
Optimum optimize_rate(const OptimizationProblem& problem);

// One optimum per N in ascending n_grid. Each point is optimized from scratch
// and additionally refined from the previous optimum's parameters, so the
// returned rates are nondecreasing along the grid.
std::vector<Optimum> sweep(const OptimizationProblem& problem_template,
                           const std::vector<std::int64_t>& n_grid);

}  // namespace qkd
