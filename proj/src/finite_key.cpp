#include "qkd/finite_key.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkd {

namespace {
bool unit_prob(double e) { return e > 0.0 && e <= 1.0; }
}

void EpsilonBudget::validate() const {
    if (!unit_prob(eps_total) || !unit_prob(eps_pe) || !unit_prob(eps_bar) ||
        !unit_prob(eps_ec) || !unit_prob(eps_pa))
        throw std::invalid_argument("epsilon budget: every component must lie in (0, 1]");
    const double sum = eps_pe + eps_bar + eps_ec + eps_pa;
    if (sum > eps_total * (1.0 + 1e-12))
        throw std::invalid_argument("epsilon budget: component sum exceeds eps_total");
}

void LeakModel::validate() const {
    if (!(f >= 1.0))
        throw std::invalid_argument("leak model: f must be >= 1");
    if (!(h_per_bit >= 0.0 && h_per_bit <= 1.0))
        throw std::invalid_argument("leak model: h_per_bit must lie in [0, 1]");
}

void KeyLengthInputs::validate() const {
    if (n < 0) throw std::invalid_argument("key length: n must be >= 0");
    if (!(s_xi >= 0.0 && s_xi <= 1.0))
        throw std::invalid_argument("key length: s_xi must lie in [0, 1] for binary keys");
    if (!(delta >= 0.0)) throw std::invalid_argument("key length: delta must be >= 0");
    if (!(leak_bits >= 0.0)) throw std::invalid_argument("key length: leak_bits must be >= 0");
    if (!unit_prob(eps_pa)) throw std::invalid_argument("key length: eps_pa must lie in (0, 1]");
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary_entropy: p outside [0, 1]");
    if (p > 0.5) p = 1.0 - p;  // exact for p in (1/2, 1], keeps h(p) == h(1-p)
    if (p == 0.0) return 0.0;
    // complement term via log1p: accurate down to denormal p
    return -p * std::log2(p) - (1.0 - p) * (std::log1p(-p) / std::numbers::ln2);
}

double delta_smoothing(double eps_bar, std::int64_t n) {
    if (n < 1) throw std::domain_error("delta_smoothing: n must be >= 1");
    if (!(eps_bar > 0.0 && eps_bar < 2.0))
        throw std::domain_error("delta_smoothing: eps_bar must lie in (0, 2)");
    return 7.0 * std::sqrt(std::log2(2.0 / eps_bar) / static_cast<double>(n));
}

double xi_deviation(std::int64_t m, int d, double eps_pe) {
    if (m < 1) throw std::domain_error("xi_deviation: m must be >= 1");
    if (d < 2) throw std::domain_error("xi_deviation: d must be >= 2");
    if (!unit_prob(eps_pe)) throw std::domain_error("xi_deviation: eps_pe must lie in (0, 1]");
    const double md = static_cast<double>(m);
    // natural logarithms here, log2 everywhere else
    return std::sqrt((2.0 * std::log(1.0 / eps_pe) + d * std::log(md + 1.0)) / md);
}

double ec_leakage(std::int64_t n, const LeakModel& model, double eps_ec) {
    if (n < 0) throw std::domain_error("ec_leakage: n must be >= 0");
    model.validate();
    if (!unit_prob(eps_ec)) throw std::domain_error("ec_leakage: eps_ec must lie in (0, 1]");
    return model.f * static_cast<double>(n) * model.h_per_bit + std::log2(2.0 / eps_ec);
}

std::int64_t key_length(const KeyLengthInputs& in) {
    in.validate();
    if (in.n == 0) return 0;
    const double nd = static_cast<double>(in.n);
    // per-bit form: keeps the subtraction well conditioned for n up to ~1e15
    const double per_bit =
        (in.s_xi - in.delta) - in.leak_bits / nd - 2.0 * std::log2(1.0 / in.eps_pa) / nd;
    if (!(per_bit > 0.0)) return 0;
    const auto bits = static_cast<std::int64_t>(std::floor(per_bit * nd));
    return std::min(bits, in.n);
}

}  // namespace qkd
