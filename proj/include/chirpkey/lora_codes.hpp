#pragma once

#include <cstdint>
#include <optional>

// Bit-level coding primitives shared by the encoder (lora_phy) and the
// decoder (channel_rx): Gray mapping, rate-4/cr parity codes, and the
// diagonal interleaver geometry.
//
// Codeword layout for all rates: data nibble in bits 0..3, parity above.
//   cr=5: p4 (overall parity) in bit 4                     -> detect only
//   cr=6: p0,p1 in bits 4,5                                -> detect only
//   cr=7: p0,p1,p2 in bits 4..6                            -> corrects 1 bit
//   cr=8: p0..p3 in bits 4..7, distance 4                  -> corrects 1 bit,
//         detects (never miscorrects) any 2-bit error
// with p0=d0^d1^d2, p1=d1^d2^d3, p2=d0^d1^d3, p3=d0^d2^d3, p4=d0^d1^d2^d3.

namespace chirpkey::lora {

inline std::uint16_t binary_to_gray(std::uint16_t v) { return v ^ (v >> 1); }

inline std::uint16_t gray_to_binary(std::uint16_t v) {
    v ^= v >> 8;
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    return v;
}

inline std::uint8_t fec_encode_nibble(std::uint8_t nibble, int cr) {
    const std::uint8_t d0 = nibble & 1, d1 = (nibble >> 1) & 1;
    const std::uint8_t d2 = (nibble >> 2) & 1, d3 = (nibble >> 3) & 1;
    const std::uint8_t p0 = d0 ^ d1 ^ d2;
    const std::uint8_t p1 = d1 ^ d2 ^ d3;
    const std::uint8_t p2 = d0 ^ d1 ^ d3;
    const std::uint8_t p3 = d0 ^ d2 ^ d3;
    std::uint8_t cw = nibble & 0x0F;
    switch (cr) {
        case 5: cw |= static_cast<std::uint8_t>((d0 ^ d1 ^ d2 ^ d3) << 4); break;
        case 6: cw |= static_cast<std::uint8_t>((p0 << 4) | (p1 << 5)); break;
        case 7: cw |= static_cast<std::uint8_t>((p0 << 4) | (p1 << 5) | (p2 << 6)); break;
        case 8: cw |= static_cast<std::uint8_t>((p0 << 4) | (p1 << 5) | (p2 << 6) | (p3 << 7)); break;
        default: break;
    }
    return cw;
}

/// Returns the corrected nibble, or nullopt when the codeword is known bad
/// (detect-only rates with a parity mismatch, or an uncorrectable pattern).
inline std::optional<std::uint8_t> fec_decode_nibble(std::uint8_t cw, int cr) {
    const std::uint8_t data = cw & 0x0F;
    const std::uint8_t d0 = data & 1, d1 = (data >> 1) & 1;
    const std::uint8_t d2 = (data >> 2) & 1, d3 = (data >> 3) & 1;
    const std::uint8_t p0 = d0 ^ d1 ^ d2;
    const std::uint8_t p1 = d1 ^ d2 ^ d3;
    const std::uint8_t p2 = d0 ^ d1 ^ d3;
    const std::uint8_t p3 = d0 ^ d2 ^ d3;

    if (cr == 5) {
        const std::uint8_t want = d0 ^ d1 ^ d2 ^ d3;
        if (((cw >> 4) & 1) != want) return std::nullopt;
        return data;
    }
    if (cr == 6) {
        const std::uint8_t s = static_cast<std::uint8_t>((((cw >> 4) & 1) ^ p0) | ((((cw >> 5) & 1) ^ p1) << 1));
        if (s != 0) return std::nullopt;
        return data;
    }

    // cr 7/8: syndrome lookup. Data-bit syndromes (s = received^computed
    // parity pattern): d0->0b101, d1->0b111, d2->0b011, d3->0b110 plus, for
    // cr=8, the p3 contribution d0->|8, d2->|8, d3->|8.
    std::uint8_t s = static_cast<std::uint8_t>((((cw >> 4) & 1) ^ p0) |
                                               ((((cw >> 5) & 1) ^ p1) << 1) |
                                               ((((cw >> 6) & 1) ^ p2) << 2));
    if (cr == 8) s |= static_cast<std::uint8_t>((((cw >> 7) & 1) ^ p3) << 3);

    if (s == 0) return data;
    const std::uint8_t synd_d0 = cr == 8 ? 0b1101 : 0b101;
    const std::uint8_t synd_d1 = cr == 8 ? 0b0111 : 0b111;
    const std::uint8_t synd_d2 = cr == 8 ? 0b1011 : 0b011;
    const std::uint8_t synd_d3 = cr == 8 ? 0b1110 : 0b110;
    if (s == synd_d0) return data ^ 1;
    if (s == synd_d1) return data ^ 2;
    if (s == synd_d2) return data ^ 4;
    if (s == synd_d3) return data ^ 8;
    // single parity-bit errors: syndrome is one-hot, data already good
    if ((s & (s - 1)) == 0) return data;
    return std::nullopt;
}

inline int fec_bits(int cr) { return cr; }

} // namespace chirpkey::lora
