#include "qkd/di_chsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qkd {

void ChannelObservation::validate() const {
    if (!qber && !correlators)
        throw std::invalid_argument("observation: need a QBER or the four CHSH correlators");
    if (qber && !(*qber >= 0.0 && *qber <= 0.5))
        throw std::invalid_argument("observation: QBER must lie in [0, 1/2]");
    if (correlators)
        for (double e : *correlators)
            if (!(std::fabs(e) <= 1.0))
                throw std::invalid_argument("observation: correlators must lie in [-1, 1]");
}

double ChannelObservation::chsh_value() const {
    if (correlators) return chsh_from_correlators(*this);
    if (qber) return chsh_from_qber(*qber);
    throw std::invalid_argument("observation: need a QBER or the four CHSH correlators");
}

double ChannelObservation::effective_qber() const {
    if (qber) return *qber;
    const double c = chsh_value();
    const double q = 0.5 * (1.0 - c / (2.0 * std::numbers::sqrt2));
    return std::clamp(q, 0.0, 0.5);
}

void DiProtocolConfig::validate() const {
    if (n_signals < 1) throw std::invalid_argument("config: N must be >= 1");
    if (!(p_a0 > 0.0 && p_a0 <= 1.0))
        throw std::invalid_argument("config: p_a0 must lie in (0, 1]");
    if (!(p_b1 > 0.0 && p_b1 <= 1.0))
        throw std::invalid_argument("config: p_b1 must lie in (0, 1]");
    if (block_size != 1)
        throw std::invalid_argument("config: only block size b = 1 is implemented");
    leak_model.validate();
}

double chsh_from_correlators(const ChannelObservation& obs) {
    if (!obs.correlators)
        throw std::invalid_argument("chsh_from_correlators: correlators missing");
    const auto& e = *obs.correlators;
    for (double v : e)
        if (!(std::fabs(v) <= 1.0))
            throw std::invalid_argument("chsh_from_correlators: correlator outside [-1, 1]");
    return e[0] + e[1] + e[2] - e[3];
}

double chsh_from_qber(double q) {
    if (!(q >= 0.0 && q <= 0.5))
        throw std::domain_error("chsh_from_qber: Q outside [0, 1/2]");
    return 2.0 * std::numbers::sqrt2 * (1.0 - 2.0 * q);
}

SamplingCounts sampling_counts(const DiProtocolConfig& config) {
    config.validate();
    const double nd = static_cast<double>(config.n_signals);
    const double pa = config.p_a0;
    const double pb1 = config.p_b1;
    const double pb2 = 1.0 - config.p_b1;

    // Floors, each capped by what is still unassigned so the partition sums
    // to N exactly even at floating-point extremes. Products of decimal
    // inputs (0.1 * 0.5 * 1e6) land a few ulps under their intended integer;
    // the nudge snaps them back before flooring.
    std::int64_t remaining = config.n_signals;
    auto take = [&remaining](double x) {
        const double snapped = x + 8.0 * std::numeric_limits<double>::epsilon() * x;
        auto v = static_cast<std::int64_t>(std::floor(snapped));
        v = std::clamp<std::int64_t>(v, 0, remaining);
        remaining -= v;
        return v;
    };

    SamplingCounts c;
    c.n_key = take(pa * pb1 * nd);
    c.m11 = take(0.5 * (1.0 - pa) * pb1 * nd);
    c.m12 = take(0.5 * (1.0 - pa) * pb2 * nd);
    c.m21 = take(0.5 * (1.0 - pa) * pb1 * nd);
    c.m22 = take(0.5 * (1.0 - pa) * pb2 * nd);
    c.discarded = remaining;
    return c;
}

double total_xi(const SamplingCounts& counts, double eps_pe, bool union_bound) {
    const std::int64_t ms[4] = {counts.m11, counts.m12, counts.m21, counts.m22};
    const double eps = union_bound ? eps_pe / 4.0 : eps_pe;
    double sum = 0.0;
    for (std::int64_t m : ms) {
        if (m < 1)
            throw EstimationError("total_xi: a CHSH correlator has no estimation events");
        sum += xi_deviation(m, 2, eps);
    }
    return sum;
}

double di_entropy_bound(double c, double xi) {
    const double z = 0.5 * (c - xi);
    if (!(z > 1.0)) return 0.0;  // at or below the classical bound
    const double u2 = (z - 1.0) * (z + 1.0);
    if (u2 >= 1.0) return 1.0;  // at or beyond the Tsirelson point
    const double u = std::sqrt(u2);
    // 1 - h((1+u)/2) rewritten as ((1+u) log2(1+u) + (1-u) log2(1-u)) / 2,
    // which stays fully accurate as u -> 0
    return 0.5 * ((1.0 + u) * std::log1p(u) + (1.0 - u) * std::log1p(-u)) /
           std::numbers::ln2;
}

RateReport di_rate(const DiProtocolConfig& config, const ChannelObservation& obs,
                   const EpsilonBudget& budget) {
    config.validate();
    obs.validate();
    budget.validate();

    RateReport rep;
    rep.config = config;
    rep.budget = budget;
    rep.counts = sampling_counts(config);
    rep.chsh = obs.chsh_value();
    rep.xi_total = total_xi(rep.counts, budget.eps_pe, config.pe_union_bound);
    rep.s_xi = di_entropy_bound(rep.chsh, rep.xi_total);

    if (rep.counts.n_key == 0) return rep;  // no raw key: nothing to distill

    rep.delta = delta_smoothing(budget.eps_bar, rep.counts.n_key);
    rep.leak_bits = ec_leakage(rep.counts.n_key, config.leak_model, budget.eps_ec);
    rep.key_bits = key_length(
        {rep.counts.n_key, rep.s_xi, rep.delta, rep.leak_bits, budget.eps_pa});
    rep.rate = static_cast<double>(rep.key_bits) / static_cast<double>(config.n_signals);
    return rep;
}

}  // namespace qkd
