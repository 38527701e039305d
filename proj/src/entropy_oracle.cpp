#include "qkd/entropy_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace qkd::oracle {

namespace {
constexpr std::size_t kMaxAlphabet = 16;
constexpr double kSlackTolerance = 1e-9;  // numerical allowance on "nonnegative"
}

JointDistribution::JointDistribution(std::vector<Variable> vars, std::vector<double> pmf)
    : vars_(std::move(vars)), pmf_(std::move(pmf)) {
    if (vars_.empty()) throw std::invalid_argument("joint distribution: no variables");
    std::size_t total = 1;
    for (const Variable& v : vars_) {
        if (v.size < 1 || v.size > kMaxAlphabet)
            throw std::invalid_argument("joint distribution: alphabet size must be in [1, 16]");
        for (const Variable& w : vars_)
            if (&v != &w && v.name == w.name)
                throw std::invalid_argument("joint distribution: duplicate variable name");
        total *= v.size;
    }
    if (pmf_.size() != total)
        throw std::invalid_argument("joint distribution: pmf size mismatch");
    double sum = 0.0;
    for (double p : pmf_) {
        if (!(p >= 0.0)) throw std::invalid_argument("joint distribution: negative probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("joint distribution: probabilities must sum to 1");
    strides_.assign(vars_.size(), 1);
    for (std::size_t k = vars_.size(); k-- > 1;)
        strides_[k - 1] = strides_[k] * vars_[k].size;
}

bool JointDistribution::has(char name) const {
    for (const Variable& v : vars_)
        if (v.name == name) return true;
    return false;
}

std::size_t JointDistribution::index_of(char name) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k].name == name) return k;
    throw std::invalid_argument(std::string("joint distribution: no variable ") + name);
}

std::size_t JointDistribution::coord(std::size_t flat, std::size_t var_idx) const {
    return flat / strides_[var_idx] % vars_[var_idx].size;
}

double h0(const JointDistribution& dist, char target) {
    const std::size_t t = dist.index_of(target);
    std::vector<bool> seen(dist.variables()[t].size, false);
    for (std::size_t i = 0; i < dist.outcomes(); ++i)
        if (dist.pmf()[i] > 0.0) seen[dist.coord(i, t)] = true;
    const auto support = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
    if (support == 0) throw std::domain_error("h0: empty support");
    return std::log2(static_cast<double>(support));
}

double min_entropy_cond(const JointDistribution& dist, char target,
                        const std::vector<char>& given) {
    const std::size_t t = dist.index_of(target);
    std::vector<std::size_t> g;
    for (char name : given) g.push_back(dist.index_of(name));

    // p(x, z) marginalized over everything else, keyed by (z-index, x)
    std::size_t z_count = 1;
    for (std::size_t gi : g) z_count *= dist.variables()[gi].size;
    const std::size_t x_count = dist.variables()[t].size;
    std::vector<double> joint(z_count * x_count, 0.0);
    for (std::size_t i = 0; i < dist.outcomes(); ++i) {
        std::size_t z = 0;
        for (std::size_t gi : g) z = z * dist.variables()[gi].size + dist.coord(i, gi);
        joint[z * x_count + dist.coord(i, t)] += dist.pmf()[i];
    }

    double p_guess = 0.0;
    for (std::size_t z = 0; z < z_count; ++z) {
        double best = 0.0;
        for (std::size_t x = 0; x < x_count; ++x)
            best = std::max(best, joint[z * x_count + x]);
        p_guess += best;
    }
    return -std::log2(p_guess);
}

double leakage_of(const JointDistribution& dist) {
    for (char v : {'C', 'X', 'Y'})
        if (!dist.has(v))
            throw std::invalid_argument("leakage_of: needs variables C, X and Y");
    return std::max(0.0, h0(dist, 'C') - min_entropy_cond(dist, 'C', {'X', 'Y'}));
}

LemmaVerdict check_lemma_leakage(const JointDistribution& dist) {
    for (char v : {'X', 'Y', 'E', 'C'})
        if (!dist.has(v))
            throw std::invalid_argument("check_lemma_leakage: needs X, Y, E and C");

    // the Markov step requires C to be computed from (X, Y): for every (x, y)
    // of positive probability the support of C must be a single symbol
    const std::size_t xi = dist.index_of('X');
    const std::size_t yi = dist.index_of('Y');
    const std::size_t ci = dist.index_of('C');
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>> c_support;
    for (std::size_t i = 0; i < dist.outcomes(); ++i)
        if (dist.pmf()[i] > 0.0)
            c_support[{dist.coord(i, xi), dist.coord(i, yi)}].insert(dist.coord(i, ci));
    for (const auto& [xy, cs] : c_support)
        if (cs.size() > 1)
            throw std::invalid_argument(
                "check_lemma_leakage: C is not a deterministic function of (X, Y)");

    LemmaVerdict v;
    v.lhs = min_entropy_cond(dist, 'X', {'E', 'C'});
    v.rhs = min_entropy_cond(dist, 'X', {'E'}) - leakage_of(dist);
    v.slack = v.lhs - v.rhs;
    v.pass = v.slack >= -kSlackTolerance;
    return v;
}

LemmaVerdict check_lemma_symmetrization(
    const JointDistribution& dist, const std::vector<std::vector<std::size_t>>& family) {
    if (!dist.has('X'))
        throw std::invalid_argument("check_lemma_symmetrization: needs variable X");
    if (family.empty())
        throw std::invalid_argument("check_lemma_symmetrization: empty function family");
    if (family.size() > kMaxAlphabet)
        throw std::invalid_argument("check_lemma_symmetrization: family too large");

    const std::size_t xi = dist.index_of('X');
    const std::size_t sx = dist.variables()[xi].size;
    std::size_t sf = 1;
    for (const auto& fn : family) {
        if (fn.size() != sx)
            throw std::invalid_argument(
                "check_lemma_symmetrization: function not total on X's alphabet");
        for (std::size_t value : fn) sf = std::max(sf, value + 1);
    }
    if (sf > kMaxAlphabet)
        throw std::invalid_argument("check_lemma_symmetrization: function range too large");

    const bool have_e = dist.has('E');
    const std::size_t ei = have_e ? dist.index_of('E') : 0;
    const std::size_t se = have_e ? dist.variables()[ei].size : 1;
    const std::size_t sr = family.size();

    // joint over (X, E, R, F) with R uniform and F = f_R(X)
    std::vector<double> pmf(sx * se * sr * sf, 0.0);
    for (std::size_t i = 0; i < dist.outcomes(); ++i) {
        const double p = dist.pmf()[i];
        if (p == 0.0) continue;
        const std::size_t x = dist.coord(i, xi);
        const std::size_t e = have_e ? dist.coord(i, ei) : 0;
        for (std::size_t r = 0; r < sr; ++r) {
            const std::size_t f = family[r][x];
            pmf[((x * se + e) * sr + r) * sf + f] += p / static_cast<double>(sr);
        }
    }
    const JointDistribution extended(
        {{'X', sx}, {'E', se}, {'R', sr}, {'F', sf}}, std::move(pmf));

    LemmaVerdict v;
    v.lhs = min_entropy_cond(dist, 'X', have_e ? std::vector<char>{'E'} : std::vector<char>{});
    v.rhs = min_entropy_cond(extended, 'F', {'E', 'R'});
    v.slack = v.lhs - v.rhs;
    v.pass = v.slack >= -kSlackTolerance;
    return v;
}

namespace {

// random pmf over `cells` outcomes; roughly one cell in five is forced to
// zero so support edge cases stay exercised
std::vector<double> random_pmf(SplitMix64& rng, std::size_t cells) {
    std::vector<double> p(cells, 0.0);
    double sum = 0.0;
    for (double& v : p) {
        if (rng.bounded(5) == 0) continue;
        v = rng.uniform01() + 1e-3;
        sum += v;
    }
    if (sum == 0.0) {
        p[0] = 1.0;
        return p;
    }
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace

JointDistribution random_leakage_instance(SplitMix64& rng, std::size_t max_alphabet) {
    const std::size_t sx = 2 + rng.bounded(max_alphabet - 1);
    const std::size_t sy = 2 + rng.bounded(max_alphabet - 1);
    const std::size_t se = 2 + rng.bounded(max_alphabet - 1);
    const std::size_t sc = 1 + rng.bounded(max_alphabet);

    std::vector<std::size_t> g(sx * sy);  // C = g(X, Y)
    for (std::size_t& v : g) v = rng.bounded(sc);

    const std::vector<double> base = random_pmf(rng, sx * sy * se);
    std::vector<double> pmf(sx * sy * se * sc, 0.0);
    for (std::size_t x = 0; x < sx; ++x)
        for (std::size_t y = 0; y < sy; ++y)
            for (std::size_t e = 0; e < se; ++e) {
                const std::size_t c = g[x * sy + y];
                pmf[((x * sy + y) * se + e) * sc + c] = base[(x * sy + y) * se + e];
            }
    return JointDistribution({{'X', sx}, {'Y', sy}, {'E', se}, {'C', sc}}, std::move(pmf));
}

SymmetrizationInstance random_symmetrization_instance(SplitMix64& rng,
                                                      std::size_t max_alphabet) {
    const std::size_t sx = 2 + rng.bounded(max_alphabet - 1);
    const std::size_t se = 2 + rng.bounded(max_alphabet - 1);
    const std::size_t family_size = 1 + rng.bounded(8);

    std::vector<std::vector<std::size_t>> family(family_size, std::vector<std::size_t>(sx));
    for (auto& fn : family)
        for (std::size_t& v : fn) v = rng.bounded(sx);

    JointDistribution dist({{'X', sx}, {'E', se}}, random_pmf(rng, sx * se));
    return {std::move(dist), std::move(family)};
}

}  // namespace qkd::oracle
