#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chirpkey/iq.hpp"

namespace chirpkey::lora {

enum class ChirpDirection { Up, Down };

/// CSS waveform parameters. cr is the coding-rate denominator (5..8 for
/// rates 4/5..4/8). sync_word holds the two symbol values sent between the
/// preamble and the downchirps.
struct LoraParams {
    int sf = 7;
    double bw_hz = 1.6e6;
    int cr = 5;
    int preamble_len = 8;
    std::array<int, 2> sync_word{0, 0};
    std::size_t payload_len = 0;

    int chips_per_symbol() const { return 1 << sf; }
    double symbol_period_s() const { return static_cast<double>(1 << sf) / bw_hz; }
    /// Samples per symbol at rate fs (nearest sample).
    std::size_t symbol_samples(double fs) const;
    /// Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

struct LoraFrame {
    LoraParams params;
    std::vector<std::uint8_t> payload;
};

/// Unit-magnitude linear chirp sweeping -BW/2 -> +BW/2 (Up) or the reverse,
/// phase continuous and zero at the first sample. fs must be >= bw.
IqBuffer base_chirp(const LoraParams& params, double fs, ChirpDirection direction);

/// Data symbol: the base up-chirp cyclically shifted by value/2^sf of the
/// symbol duration (frequency offset value*bw/2^sf with wraparound).
IqBuffer modulate_symbol(int value, const LoraParams& params, double fs);

/// Number of payload symbols produced for a given payload length: full
/// interleaver blocks of sf codewords, cr symbols each.
std::size_t payload_symbol_count(std::size_t payload_len, const LoraParams& params);

/// Hamming-family FEC per nibble -> diagonal interleave over blocks of sf
/// codewords -> Gray mapping. Symbol values are in [0, 2^sf).
std::vector<std::uint16_t> encode_payload(std::span<const std::uint8_t> payload,
                                          const LoraParams& params);

/// preamble upchirps | 2 sync symbols | 2 downchirps | 0.25 T silence |
/// payload symbols. Total duration (preamble_len + 4.25 + n_sym) * T.
IqBuffer build_frame_waveform(const LoraFrame& frame, double fs);

double frame_duration_s(const LoraParams& params);

} // namespace chirpkey::lora
