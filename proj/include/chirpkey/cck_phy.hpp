#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chirpkey/iq.hpp"

namespace chirpkey::cck {

inline constexpr double kChipRateHz = 11e6;
inline constexpr std::size_t kMaxPsduBytes = 4095;
inline constexpr std::uint8_t kDefaultScramblerSeed = 0x6C;

/// CCK phases are quantized to quarter turns: value q means q * pi/2.
using QuarterPhase = std::uint8_t;

/// Maps a radian value onto the quarter-turn grid; throws std::domain_error
/// when it is not within 1e-6 of a multiple of pi/2.
QuarterPhase quantize_phase(double radians);
double phase_radians(QuarterPhase q);

/// 8-chip spreading of (phi1..phi4) per the 11 Mbps CCK codeword form:
///  ( e^{j(p1+p2+p3+p4)}, e^{j(p1+p3+p4)}, e^{j(p1+p2+p4)}, -e^{j(p1+p4)},
///    e^{j(p1+p2+p3)},    e^{j(p1+p3)},   -e^{j(p1+p2)},     e^{j(p1)} )
/// Chips are exact: components are 0 or +/-1.
std::array<cplx, 8> cck_spread(const std::array<QuarterPhase, 4>& phases);
std::array<cplx, 8> cck_spread(const std::array<double, 4>& phases_radians);

struct CckCodeword {
    std::array<QuarterPhase, 4> phases;
    std::array<cplx, 8> chips;
};

/// All 256 codewords, ordered lexicographically over (phi1,phi2,phi3,phi4):
/// index = p1*64 + p2*16 + p3*4 + p4 in quarter turns.
const std::array<CckCodeword, 256>& codebook();

/// FNV-1a over the integer chip components; identifies the codebook in reports.
std::uint64_t codebook_digest();

enum class PreambleKind { Long, Short };

struct WifiFramePlan {
    std::vector<std::uint8_t> payload;  // 1..4095 bytes
    PreambleKind preamble_kind = PreambleKind::Short;
    bool scrambler_enabled = true;
    std::uint8_t scrambler_seed = kDefaultScramblerSeed;  // 7 bits
};

/// Differential phi1 state threaded across CCK symbols (and, for multi-frame
/// plans, across frame boundaries).
struct DqpskState {
    QuarterPhase prev_phi1 = 0;
};

/// (d0,d1) differentially encode phi1 (extra pi on odd-numbered symbols);
/// (d2,d3),(d4,d5),(d6,d7) map to phi2..phi4 via the fixed QPSK table.
/// d0 is the least significant bit of `byte`.
std::array<QuarterPhase, 4> phases_from_bits(std::uint8_t byte, bool odd_symbol,
                                             QuarterPhase prev_phi1);
std::uint8_t bits_from_phases(const std::array<QuarterPhase, 4>& phases, bool odd_symbol,
                              QuarterPhase prev_phi1);

/// Self-synchronizing LFSR scrambler, polynomial z^-4 + z^-7. Bits are one
/// per byte (0/1), seed is the 7-bit register preload.
std::vector<std::uint8_t> scramble(std::span<const std::uint8_t> bits, std::uint8_t seed);
std::vector<std::uint8_t> descramble(std::span<const std::uint8_t> bits, std::uint8_t seed);

/// Payload bytes -> (scramble) -> phases -> chips, one sample per chip at
/// 11 MHz. N bytes produce exactly 8N samples. The overload with state
/// threads phi1 across calls; symbol parity restarts at even per frame.
IqBuffer modulate_payload(const WifiFramePlan& plan);
IqBuffer modulate_payload(const WifiFramePlan& plan, DqpskState& state);

/// Barker-11 spread PLCP preamble + header waveform used as the fixed
/// distortion segment of a transmission. 192 us (Long) or 96 us (Short) at
/// 11 MHz. psdu_bytes only affects the PLCP LENGTH/CRC field contents.
IqBuffer preamble_waveform(PreambleKind kind, std::size_t psdu_bytes = kMaxPsduBytes);
std::size_t preamble_samples(PreambleKind kind);
double preamble_duration_us(PreambleKind kind);

} // namespace chirpkey::cck
