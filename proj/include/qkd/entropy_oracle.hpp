#pragma once

#include <cstddef>
#include <vector>

#include "qkd/prng.hpp"

namespace qkd::oracle {

// A named random variable with finite alphabet {0, .., size-1}.
struct Variable {
    char name;  // one of X, Y, E, C, R
    std::size_t size;
};

// Fully classical joint distribution over a small product alphabet; the pmf
// is stored row-major in variable order, last variable fastest.
class JointDistribution {
public:
    JointDistribution(std::vector<Variable> vars, std::vector<double> pmf);

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<double>& pmf() const { return pmf_; }
    std::size_t outcomes() const { return pmf_.size(); }

    bool has(char name) const;
    std::size_t index_of(char name) const;  // throws when absent
    // coordinate of variable var_idx inside the flat outcome index
    std::size_t coord(std::size_t flat, std::size_t var_idx) const;

private:
    std::vector<Variable> vars_;
    std::vector<double> pmf_;
    std::vector<std::size_t> strides_;
};

// log2 of the support size of the target's marginal (Renyi order-0 entropy).
double h0(const JointDistribution& dist, char target);

// Conditional min-entropy -log2 sum_z max_x p(x, z) over classical side
// information; the conditioning set may be empty.
double min_entropy_cond(const JointDistribution& dist, char target,
                        const std::vector<char>& given);

// leak = H0(C) - Hmin(C | X, Y); the number of communicated bits that are
// correlated with the raw key pair.
double leakage_of(const JointDistribution& dist);

struct LemmaVerdict {
    bool pass = false;
    double slack = 0.0;  // lhs - rhs; nonnegative when the inequality holds
    double lhs = 0.0;
    double rhs = 0.0;
};

// Hmin(X | E C) >= Hmin(X | E) - leak, for C a deterministic function of
// (X, Y). The functional dependence is validated and violations throw.
LemmaVerdict check_lemma_leakage(const JointDistribution& dist);

// Hmin(X | E) >= Hmin(f_R(X) | E R) with R uniform over the family. Each
// family member is a table of size |X| mapping symbols of X.
LemmaVerdict check_lemma_symmetrization(const JointDistribution& dist,
                                        const std::vector<std::vector<std::size_t>>& family);

// Deterministic random instances for the verifier and the test suite.
JointDistribution random_leakage_instance(SplitMix64& rng, std::size_t max_alphabet = 4);

struct SymmetrizationInstance {
    JointDistribution dist;  // over X and E
    std::vector<std::vector<std::size_t>> family;
};
SymmetrizationInstance random_symmetrization_instance(SplitMix64& rng,
                                                      std::size_t max_alphabet = 4);

}  // namespace qkd::oracle
