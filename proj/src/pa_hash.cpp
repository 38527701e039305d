#include "qkd/pa_hash.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "qkd/prng.hpp"

namespace qkd {

namespace {

// Carry-less product; result sized a.size() + b.size().
BitVec clmul(const BitVec& a, const BitVec& b) {
    BitVec prod(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.get(i)) prod.xor_shifted(b, i);
    return prod;
}

// In-place reduction modulo a polynomial given by its bit vector.
void poly_reduce(BitVec& v, const BitVec& mod) {
    const int deg = mod.highest_set();
    for (int hs = v.highest_set(); hs >= deg; hs = v.highest_set())
        v.xor_shifted(mod, static_cast<std::size_t>(hs - deg));
}

BitVec poly_mod(const BitVec& a, const BitVec& mod) {
    BitVec v = a;
    poly_reduce(v, mod);
    return v;
}

BitVec poly_gcd(BitVec a, BitVec b) {
    while (!b.is_zero()) {
        BitVec r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

BitVec square_mod(const BitVec& a, const BitVec& mod) {
    BitVec sq = clmul(a, a);
    poly_reduce(sq, mod);
    return sq.resized(mod.size());
}

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> fs;
    for (std::size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

// x^(2^k) mod f, computed by k repeated squarings.
BitVec x_power_tower(std::size_t k, const BitVec& mod) {
    BitVec t = BitVec::from_u64(0b10, mod.size());
    poly_reduce(t, mod);
    for (std::size_t i = 0; i < k; ++i) t = square_mod(t, mod);
    return t;
}

}  // namespace

bool is_irreducible_exhaustive(const BitVec& poly) {
    const int deg = poly.highest_set();
    if (deg < 1) return false;
    if (!poly.get(0)) return deg == 1;  // divisible by x unless poly == x itself
    if (deg > 32)
        throw std::domain_error("is_irreducible_exhaustive: degree too large");
    for (int d = 1; d <= deg / 2; ++d) {
        for (std::uint64_t g = std::uint64_t{1} << d; g < (std::uint64_t{2} << d); ++g) {
            BitVec divisor = BitVec::from_u64(g, static_cast<std::size_t>(d) + 1);
            if (poly_mod(poly, divisor).is_zero()) return false;
        }
    }
    return true;
}

bool is_irreducible_rabin(const BitVec& poly) {
    const int deg = poly.highest_set();
    if (deg < 1) return false;
    if (deg == 1) return true;
    if (!poly.get(0)) return false;  // divisible by x
    const auto n = static_cast<std::size_t>(deg);
    const BitVec x = poly_mod(BitVec::from_u64(0b10, poly.size()), poly);

    // f irreducible iff x^(2^n) == x (mod f) and, for every prime p | n,
    // gcd(x^(2^(n/p)) - x, f) == 1
    if (x_power_tower(n, poly) != x) return false;
    for (std::size_t p : prime_factors(n)) {
        BitVec g = x_power_tower(n / p, poly);
        g ^= x;
        if (poly_gcd(poly, g).highest_set() != 0) return false;
    }
    return true;
}

BinaryField::BinaryField(std::size_t degree, BitVec modulus)
    : degree_(degree), modulus_(std::move(modulus)) {
    if (degree_ < 1) throw std::invalid_argument("BinaryField: degree must be >= 1");
    if (modulus_.highest_set() != static_cast<int>(degree_))
        throw std::invalid_argument("BinaryField: modulus degree mismatch");
    if (!modulus_.get(0))
        throw std::invalid_argument("BinaryField: modulus must have its constant bit set");
    const bool ok = degree_ <= 16 ? is_irreducible_exhaustive(modulus_)
                                  : is_irreducible_rabin(modulus_);
    if (!ok) throw std::invalid_argument("BinaryField: modulus is reducible");
}

FieldElement make_element(const BinaryField& field, const BitVec& bits) {
    if (bits.size() > field.degree())
        throw std::invalid_argument("FieldElement: bit length exceeds field degree");
    return {&field, bits.resized(field.degree())};
}

FieldElement element_from_u64(const BinaryField& field, std::uint64_t value) {
    return {&field, BitVec::from_u64(value, field.degree())};
}

FieldElement gf2_mul(const FieldElement& a, const FieldElement& b) {
    if (a.field == nullptr || b.field == nullptr)
        throw std::invalid_argument("gf2_mul: element without a field");
    if (!(*a.field == *b.field))
        throw std::invalid_argument("gf2_mul: elements from different fields");
    BitVec prod = clmul(a.bits, b.bits);
    poly_reduce(prod, a.field->modulus());
    return {a.field, prod.resized(a.field->degree())};
}

BitVec hash_two_universal(const BitVec& x, const BitVec& r, std::size_t ell,
                          const BinaryField& field) {
    const std::size_t n = field.degree();
    if (ell > n) throw std::domain_error("hash_two_universal: ell exceeds field degree");
    if (x.size() != n || r.size() != n)
        throw std::invalid_argument("hash_two_universal: inputs must have length n");
    const FieldElement prod = gf2_mul(make_element(field, r), make_element(field, x));
    return prod.bits.low_bits(ell);
}

CollisionCount collision_probability_exhaustive(const BinaryField& field, std::size_t ell,
                                                const FieldElement& x,
                                                const FieldElement& x2) {
    const std::size_t n = field.degree();
    if (n > 16)
        throw std::domain_error(
            "collision_probability_exhaustive: limited to degree <= 16");
    if (ell > n) throw std::domain_error("collision_probability_exhaustive: ell > degree");
    if (x.field == nullptr || !(*x.field == field) || x2.field == nullptr ||
        !(*x2.field == field))
        throw std::invalid_argument("collision_probability_exhaustive: field mismatch");

    CollisionCount cc;
    cc.multipliers = std::uint64_t{1} << n;
    for (std::uint64_t rv = 0; rv < cc.multipliers; ++rv) {
        const BitVec r = BitVec::from_u64(rv, n);
        if (hash_two_universal(x.bits, r, ell, field) ==
            hash_two_universal(x2.bits, r, ell, field))
            ++cc.collisions;
    }
    return cc;
}

BitVec apply_seeded_permutation(const BitVec& x, std::uint64_t seed) {
    const std::size_t n = x.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = n; i-- > 1;)
        std::swap(perm[i], perm[rng.bounded(i + 1)]);
    BitVec out(n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, x.get(perm[i]));
    return out;
}

}  // namespace qkd
