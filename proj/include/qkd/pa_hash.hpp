#pragma once

#include <cstddef>
#include <cstdint>

#include "qkd/bitvec.hpp"

namespace qkd {

// GF(2^n) with a fixed irreducible modulus. Immutable after construction.
class BinaryField {
public:
    // modulus must be a degree-n polynomial (bit n and bit 0 set) and
    // irreducible over GF(2). Irreducibility is verified at construction:
    // exhaustive trial division for n <= 16, a Rabin test otherwise.
    BinaryField(std::size_t degree, BitVec modulus);

    std::size_t degree() const { return degree_; }
    const BitVec& modulus() const { return modulus_; }

    bool operator==(const BinaryField& other) const = default;

private:
    std::size_t degree_;
    BitVec modulus_;
};

// A polynomial of degree < n over GF(2), tied to its field.
struct FieldElement {
    const BinaryField* field = nullptr;
    BitVec bits;  // length == field->degree()
};

FieldElement make_element(const BinaryField& field, const BitVec& bits);
FieldElement element_from_u64(const BinaryField& field, std::uint64_t value);

// Carry-less product reduced modulo the field modulus.
FieldElement gf2_mul(const FieldElement& a, const FieldElement& b);

// Fixed table of sparse irreducible moduli: every degree in [1, 64] plus
// {127, 128, 256, 521, 1024}. Each entry is the lowest-weight irreducible
// polynomial of its degree, ties broken lexicographically on the exponents.
BinaryField select_modulus(std::size_t n);
bool modulus_table_contains(std::size_t n);

// Two-universal hash: the ell least significant bits of r * x in GF(2^n).
BitVec hash_two_universal(const BitVec& x, const BitVec& r, std::size_t ell,
                          const BinaryField& field);

// Exact collision statistics over all 2^n multipliers (degree <= 16 only).
struct CollisionCount {
    std::uint64_t collisions = 0;
    std::uint64_t multipliers = 0;  // 2^degree
    double probability() const {
        return static_cast<double>(collisions) / static_cast<double>(multipliers);
    }
};
CollisionCount collision_probability_exhaustive(const BinaryField& field, std::size_t ell,
                                                const FieldElement& x,
                                                const FieldElement& x2);

// Deterministic bit reordering: a Fisher-Yates shuffle of the index array
// driven by SplitMix64(seed), drawing j = next() mod (i+1) for i = len-1..1;
// output bit i is input bit perm[i]. Same seed, same permutation.
BitVec apply_seeded_permutation(const BitVec& x, std::uint64_t seed);

// Irreducibility of a GF(2) polynomial (bit i = coefficient of x^i).
bool is_irreducible_exhaustive(const BitVec& poly);  // trial division, degree <= 32
bool is_irreducible_rabin(const BitVec& poly);       // deterministic, any degree

}  // namespace qkd
