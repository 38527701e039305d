#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qkd/finite_key.hpp"

namespace qkd {

// Thrown when a CHSH correlator has no estimation events (some m_ij == 0).
class EstimationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Observed channel statistics: the error rate Q and/or the four CHSH
// correlators E(A_i B_j), i,j in {1,2}, ordered {E11, E12, E21, E22}.
struct ChannelObservation {
    std::optional<double> qber;
    std::optional<std::array<double, 4>> correlators;

    void validate() const;
    // CHSH value: from the correlators when present, otherwise synthesized
    // from Q via C = 2 sqrt(2) (1 - 2Q).
    double chsh_value() const;
    // Q when present, otherwise inverted from the CHSH value through the same
    // relation (clamped to [0, 1/2]).
    double effective_qber() const;
};

struct DiProtocolConfig {
    std::int64_t n_signals = 0;  // N
    double p_a0 = 0.0;           // Alice chooses the key setting A0 with this probability
    double p_b1 = 0.0;           // Bob chooses B1 with this probability
    int block_size = 1;          // b; only b = 1 is implemented
    LeakModel leak_model;
    // Split eps_pe as eps_pe/4 per correlator (union bound) instead of using
    // the full eps_pe in each term. For sensitivity studies; off by default.
    bool pe_union_bound = false;

    void validate() const;
};

// Partition of the N signals. Always sums to N exactly.
struct SamplingCounts {
    std::int64_t n_key = 0;
    std::int64_t m11 = 0, m12 = 0, m21 = 0, m22 = 0;
    std::int64_t discarded = 0;
};

struct RateReport {
    DiProtocolConfig config;
    EpsilonBudget budget;
    SamplingCounts counts;
    double chsh = 0.0;  // C used for the entropy bound
    double xi_total = 0.0;
    double s_xi = 0.0;
    double delta = 0.0;
    double leak_bits = 0.0;
    std::int64_t key_bits = 0;
    double rate = 0.0;  // key_bits / N
};

// C = E(A1B1) + E(A1B2) + E(A2B1) - E(A2B2).
double chsh_from_correlators(const ChannelObservation& obs);

// C = 2 sqrt(2) (1 - 2q) for symmetric errors; q must lie in [0, 1/2].
double chsh_from_qber(double q);

// n_key = floor(p_a0 p_b1 N), m_ij = floor((1-p_a0)/2 p_bj N); the remainder
// is discarded, so the partition sums to N exactly.
SamplingCounts sampling_counts(const DiProtocolConfig& config);

// xi = sum over the four correlators of xi_deviation(m_ij, 2, eps_pe).
double total_xi(const SamplingCounts& counts, double eps_pe, bool union_bound = false);

// S_xi(X|E) = 1 - h((1 + sqrt(((c-xi)/2)^2 - 1)) / 2), clamped to 0 when
// c - xi <= 2 (no Bell violation certified) and to 1 beyond the Tsirelson
// point. Monotone nondecreasing in c, nonincreasing in xi.
double di_entropy_bound(double c, double xi);

// Full finite-key rate assembly for the device-independent CHSH protocol.
RateReport di_rate(const DiProtocolConfig& config, const ChannelObservation& obs,
                   const EpsilonBudget& budget);

}  // namespace qkd
