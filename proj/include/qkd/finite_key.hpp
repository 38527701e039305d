#pragma once

#include <cstdint>

namespace qkd {

// Four-way split of the security parameter of the final key:
// eps_pe + eps_bar + eps_ec + eps_pa <= eps_total.
struct EpsilonBudget {
    double eps_total = 0.0;  // security of the final key
    double eps_pe = 0.0;     // parameter-estimation failure
    double eps_bar = 0.0;    // min-entropy smoothing
    double eps_ec = 0.0;     // error-correction failure
    double eps_pa = 0.0;     // privacy-amplification failure

    void validate() const;  // throws std::invalid_argument on violation
};

// Error-correction leakage model: leak = f * n * h_per_bit + log2(2/eps_ec).
// h_per_bit is the expected syndrome cost per raw-key bit; for symmetric
// errors at rate Q it is binary_entropy(Q).
struct LeakModel {
    double f = 1.2;
    double h_per_bit = 0.0;

    void validate() const;
};

struct KeyLengthInputs {
    std::int64_t n = 0;      // raw-key length in bits
    double s_xi = 0.0;       // conditional-entropy bound, bits per raw-key bit
    double delta = 0.0;      // smoothing correction, bits per raw-key bit
    double leak_bits = 0.0;  // total error-correction leakage in bits
    double eps_pa = 1.0;

    void validate() const;
};

// h(p) = -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0.
double binary_entropy(double p);

// delta = 7 sqrt(log2(2/eps_bar) / n).
double delta_smoothing(double eps_bar, std::int64_t n);

// xi = sqrt((2 ln(1/eps_pe) + d ln(m+1)) / m) for a POVM with d outcomes
// estimated from m samples.
double xi_deviation(std::int64_t m, int d, double eps_pe);

// Total bits leaked during error correction.
double ec_leakage(std::int64_t n, const LeakModel& model, double eps_ec);

// Extractable key length: floor of max(0, n (s_xi - delta) - leak - 2 log2(1/eps_pa)).
// A negative argument means the protocol aborts; the result clamps to zero so
// that optimizers can treat the rate as a continuous objective.
std::int64_t key_length(const KeyLengthInputs& in);

}  // namespace qkd
