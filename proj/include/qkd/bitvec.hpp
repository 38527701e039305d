#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qkd {

// Dynamic bit string. Bit 0 is the least significant bit; for polynomials
// over GF(2) it holds the constant coefficient.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : nbits_(nbits), w_(words_for(nbits), 0) {}

    static BitVec from_u64(std::uint64_t value, std::size_t nbits) {
        BitVec v(nbits);
        if (nbits == 0) {
            if (value != 0) throw std::invalid_argument("BitVec: value does not fit");
            return v;
        }
        if (nbits < 64 && (value >> nbits) != 0)
            throw std::invalid_argument("BitVec: value does not fit");
        if (!v.w_.empty()) v.w_[0] = value;
        return v;
    }

    // Polynomial with the given exponents set (exponent list need not be sorted).
    static BitVec from_exponents(std::span<const unsigned> exps, std::size_t nbits) {
        BitVec v(nbits);
        for (unsigned e : exps) v.set(e, true);
        return v;
    }

    // Big-endian byte order: the first byte is the most significant, so bit 0
    // of the result is the least significant bit of the last byte.
    static BitVec from_bytes_msb(std::span<const std::uint8_t> bytes, std::size_t nbits) {
        BitVec v(nbits);
        const std::size_t k = bytes.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::uint8_t b = bytes[k - 1 - i];
            for (int j = 0; j < 8; ++j) {
                if ((b >> j) & 1) {
                    std::size_t pos = 8 * i + j;
                    if (pos >= nbits) throw std::invalid_argument("BitVec: value does not fit");
                    v.set(pos, true);
                }
            }
        }
        return v;
    }

    static BitVec from_hex(std::string_view hex, std::size_t nbits) {
        BitVec v(nbits);
        const std::size_t k = hex.size();
        for (std::size_t i = 0; i < k; ++i) {
            char c = hex[k - 1 - i];
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw std::invalid_argument("BitVec: invalid hex digit");
            for (int j = 0; j < 4; ++j) {
                if ((d >> j) & 1) {
                    std::size_t pos = 4 * i + j;
                    if (pos >= nbits) throw std::invalid_argument("BitVec: value does not fit");
                    v.set(pos, true);
                }
            }
        }
        return v;
    }

    std::size_t size() const { return nbits_; }

    bool get(std::size_t i) const {
        if (i >= nbits_) throw std::out_of_range("BitVec: index out of range");
        return (w_[i >> 6] >> (i & 63)) & 1;
    }

    void set(std::size_t i, bool v) {
        if (i >= nbits_) throw std::out_of_range("BitVec: index out of range");
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= mask;
        else w_[i >> 6] &= ~mask;
    }

    bool is_zero() const {
        for (std::uint64_t w : w_)
            if (w != 0) return false;
        return true;
    }

    // Index of the highest set bit, -1 when all bits are clear.
    int highest_set() const {
        for (std::size_t k = w_.size(); k-- > 0;)
            if (w_[k] != 0) return static_cast<int>(64 * k + (63 - std::countl_zero(w_[k])));
        return -1;
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (std::uint64_t w : w_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    void operator^=(const BitVec& other) {
        if (other.nbits_ != nbits_) throw std::invalid_argument("BitVec: size mismatch");
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= other.w_[k];
    }

    // this ^= (other << shift); other's set bits must land inside this vector.
    void xor_shifted(const BitVec& other, std::size_t shift) {
        const std::size_t word_shift = shift >> 6;
        const unsigned bit_shift = static_cast<unsigned>(shift & 63);
        for (std::size_t k = 0; k < other.w_.size(); ++k) {
            std::uint64_t w = other.w_[k];
            if (w == 0) continue;
            put_word(k + word_shift, w << bit_shift);
            if (bit_shift != 0) put_word(k + word_shift + 1, w >> (64 - bit_shift));
        }
    }

    BitVec low_bits(std::size_t k) const {
        if (k > nbits_) throw std::invalid_argument("BitVec: low_bits wider than value");
        BitVec out(k);
        for (std::size_t w = 0; w < out.w_.size(); ++w) out.w_[w] = w_[w];
        out.mask_top();
        return out;
    }

    // Truncates or zero-extends to nbits.
    BitVec resized(std::size_t nbits) const {
        BitVec out(nbits);
        const std::size_t n = std::min(out.w_.size(), w_.size());
        for (std::size_t k = 0; k < n; ++k) out.w_[k] = w_[k];
        out.mask_top();
        return out;
    }

    std::uint64_t to_u64() const {
        for (std::size_t k = 1; k < w_.size(); ++k)
            if (w_[k] != 0) throw std::overflow_error("BitVec: value exceeds 64 bits");
        return w_.empty() ? 0 : w_[0];
    }

    // ceil(size/4) lowercase hex digits, most significant nibble first.
    std::string to_hex() const {
        const std::size_t digits = (nbits_ + 3) / 4;
        std::string s(digits, '0');
        static const char* hexd = "0123456789abcdef";
        for (std::size_t i = 0; i < digits; ++i) {
            unsigned nib = 0;
            for (int j = 0; j < 4; ++j) {
                std::size_t pos = 4 * i + j;
                if (pos < nbits_ && get(pos)) nib |= 1u << j;
            }
            s[digits - 1 - i] = hexd[nib];
        }
        return s;
    }

    bool operator==(const BitVec& other) const = default;

private:
    static std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

    void put_word(std::size_t idx, std::uint64_t w) {
        if (w == 0) return;
        if (idx >= w_.size()) throw std::out_of_range("BitVec: shifted bits overflow vector");
        w_[idx] ^= w;
        if (idx == w_.size() - 1) check_top();
    }

    void mask_top() {
        if (nbits_ & 63) w_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
    }

    void check_top() const {
        if ((nbits_ & 63) && (w_.back() >> (nbits_ & 63)) != 0)
            throw std::out_of_range("BitVec: shifted bits overflow vector");
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace qkd
