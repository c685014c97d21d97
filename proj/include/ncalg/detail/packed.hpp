#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace ncalg::detail {

/// A word of known length packed into 64 bits, first letter most significant.
/// Letters are recoded by order weight, so for words of equal length integer
/// comparison is the deg-lex comparison.
using Packed = std::uint64_t;

/// Shifts that yield 0 for a full-width shift instead of undefined behaviour.
inline Packed shl(Packed w, unsigned n) { return n >= 64 ? 0 : w << n; }
inline Packed shr(Packed w, unsigned n) { return n >= 64 ? 0 : w >> n; }

struct Packing {
    unsigned generators = 0;
    unsigned bits = 1;

    explicit Packing(unsigned g = 1) : generators(g), bits(g <= 2 ? 1u : static_cast<unsigned>(std::bit_width(g - 1))) {}

    unsigned max_length() const { return 64 / bits; }
    Packed letter_mask() const { return (Packed{1} << bits) - 1; }
    Packed mask(unsigned len) const { return len * bits >= 64 ? ~Packed{0} : (Packed{1} << (len * bits)) - 1; }

    Packed append(Packed w, unsigned letter) const { return shl(w, bits) | letter; }
    /// Letter at position i (0-based from the left) of a word of length len.
    unsigned letter(Packed w, unsigned len, unsigned i) const {
        return static_cast<unsigned>((w >> ((len - 1 - i) * bits)) & letter_mask());
    }
    unsigned last(Packed w) const { return static_cast<unsigned>(w & letter_mask()); }
    Packed prefix(Packed w, unsigned len, unsigned plen) const { return shr(w, (len - plen) * bits); }
    Packed suffix(Packed w, unsigned slen) const { return w & mask(slen); }
    Packed concat(Packed a, Packed b, unsigned blen) const { return shl(a, blen * bits) | b; }

    Packed pack(std::span<const unsigned> letters) const {
        Packed w = 0;
        for (unsigned l : letters) w = append(w, l);
        return w;
    }
    std::vector<unsigned> unpack(Packed w, unsigned len) const {
        std::vector<unsigned> out(len);
        for (unsigned i = 0; i < len; ++i) out[i] = letter(w, len, i);
        return out;
    }
};

}  // namespace ncalg::detail
