#include <array>
#include <span>
#include <stdexcept>
#include <string>

#include "qkd/pa_hash.hpp"

namespace qkd {

namespace {

// Lowest-weight irreducible polynomial per degree: x^n + x^k + 1 with minimal
// k when an irreducible trinomial exists, otherwise x^n + x^a + x^b + x^c + 1
// with (a, b, c) minimal in lexicographic order. The degree-8 entry is the
// familiar 0x11B polynomial. Every entry is re-verified by the BinaryField
// constructor, and the generation rule is cross-checked in the test suite.
struct ModulusEntry {
    unsigned degree;
    unsigned exps[3];  // middle exponents, zero-padded
    unsigned count;    // 1 for trinomials, 3 for pentanomials
};

constexpr ModulusEntry kTable[] = {
    {1, {1, 0, 0}, 1},    {2, {1, 0, 0}, 1},    {3, {1, 0, 0}, 1},
    {4, {1, 0, 0}, 1},    {5, {2, 0, 0}, 1},    {6, {1, 0, 0}, 1},
    {7, {1, 0, 0}, 1},    {8, {4, 3, 1}, 3},    {9, {1, 0, 0}, 1},
    {10, {3, 0, 0}, 1},   {11, {2, 0, 0}, 1},   {12, {3, 0, 0}, 1},
    {13, {4, 3, 1}, 3},   {14, {5, 0, 0}, 1},   {15, {1, 0, 0}, 1},
    {16, {5, 3, 1}, 3},   {17, {3, 0, 0}, 1},   {18, {3, 0, 0}, 1},
    {19, {5, 2, 1}, 3},   {20, {3, 0, 0}, 1},   {21, {2, 0, 0}, 1},
    {22, {1, 0, 0}, 1},   {23, {5, 0, 0}, 1},   {24, {4, 3, 1}, 3},
    {25, {3, 0, 0}, 1},   {26, {4, 3, 1}, 3},   {27, {5, 2, 1}, 3},
    {28, {1, 0, 0}, 1},   {29, {2, 0, 0}, 1},   {30, {1, 0, 0}, 1},
    {31, {3, 0, 0}, 1},   {32, {7, 3, 2}, 3},   {33, {10, 0, 0}, 1},
    {34, {7, 0, 0}, 1},   {35, {2, 0, 0}, 1},   {36, {9, 0, 0}, 1},
    {37, {6, 4, 1}, 3},   {38, {6, 5, 1}, 3},   {39, {4, 0, 0}, 1},
    {40, {5, 4, 3}, 3},   {41, {3, 0, 0}, 1},   {42, {7, 0, 0}, 1},
    {43, {6, 4, 3}, 3},   {44, {5, 0, 0}, 1},   {45, {4, 3, 1}, 3},
    {46, {1, 0, 0}, 1},   {47, {5, 0, 0}, 1},   {48, {5, 3, 2}, 3},
    {49, {9, 0, 0}, 1},   {50, {4, 3, 2}, 3},   {51, {6, 3, 1}, 3},
    {52, {3, 0, 0}, 1},   {53, {6, 2, 1}, 3},   {54, {9, 0, 0}, 1},
    {55, {7, 0, 0}, 1},   {56, {7, 4, 2}, 3},   {57, {4, 0, 0}, 1},
    {58, {19, 0, 0}, 1},  {59, {7, 4, 2}, 3},   {60, {1, 0, 0}, 1},
    {61, {5, 2, 1}, 3},   {62, {29, 0, 0}, 1},  {63, {1, 0, 0}, 1},
    {64, {4, 3, 1}, 3},   {127, {1, 0, 0}, 1},  {128, {7, 2, 1}, 3},
    {256, {10, 5, 2}, 3}, {521, {32, 0, 0}, 1}, {1024, {19, 6, 1}, 3},
};

const ModulusEntry* find_entry(std::size_t n) {
    for (const ModulusEntry& e : kTable)
        if (e.degree == n) return &e;
    return nullptr;
}

}  // namespace

bool modulus_table_contains(std::size_t n) { return find_entry(n) != nullptr; }

BinaryField select_modulus(std::size_t n) {
    const ModulusEntry* e = find_entry(n);
    if (e == nullptr)
        throw std::domain_error("select_modulus: unsupported degree " + std::to_string(n) +
                                " (supported: 1..64, 127, 128, 256, 521, 1024)");
    BitVec mod(n + 1);
    mod.set(0, true);
    mod.set(n, true);
    for (unsigned i = 0; i < e->count; ++i) mod.set(e->exps[i], true);
    return BinaryField(n, mod);
}

}  // namespace qkd
