#include "chirpkey/lora_phy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chirpkey/lora_codes.hpp"

namespace chirpkey::lora {

std::size_t LoraParams::symbol_samples(double fs) const {
    return static_cast<std::size_t>(std::llround(symbol_period_s() * fs));
}

void LoraParams::validate() const {
    if (sf < 5 || sf > 12) throw std::invalid_argument("sf must be in [5, 12]");
    if (!(bw_hz > 0.0) || bw_hz > 1.6e6 + 1.0)
        throw std::invalid_argument("bw must be positive and at most 1.6 MHz");
    if (cr < 5 || cr > 8) throw std::invalid_argument("cr must be in {5, 6, 7, 8}");
    if (preamble_len < 2) throw std::invalid_argument("preamble_len must be >= 2");
    for (int s : sync_word)
        if (s < 0 || s >= chips_per_symbol())
            throw std::invalid_argument("sync word symbol out of range");
}

namespace {

void check_rate(const LoraParams& params, double fs) {
    if (fs < params.bw_hz) throw std::invalid_argument("sample rate below spreading bandwidth");
}

// Rolled view of the base up-chirp: sample n of symbol `value`, extended
// periodically so frame assembly can absorb a one-sample boundary adjustment.
struct SymbolTable {
    std::vector<cplx> up;
    std::size_t n = 0;

    cplx rolled(std::size_t shift, std::size_t i) const { return up[(i + shift) % n]; }
};

SymbolTable make_table(const LoraParams& params, double fs) {
    SymbolTable t;
    IqBuffer up = base_chirp(params, fs, ChirpDirection::Up);
    t.n = up.size();
    t.up = std::move(up.samples);
    return t;
}

std::size_t symbol_shift(int value, std::size_t n, int sf) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(value) * static_cast<double>(n) /
                                                 static_cast<double>(1 << sf))) % n;
}

} // namespace

IqBuffer base_chirp(const LoraParams& params, double fs, ChirpDirection direction) {
    params.validate();
    check_rate(params, fs);

    const double bw = params.bw_hz;
    const double T = params.symbol_period_s();
    const std::size_t n = params.symbol_samples(fs);

    IqBuffer out;
    out.sample_rate_hz = fs;
    out.samples.resize(n);
    const double sign = direction == ChirpDirection::Up ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        // f(t) = -BW/2 + (BW/T) t, phase is its integral
        const double phase = sign * 2.0 * std::numbers::pi * (-0.5 * bw * t + 0.5 * bw / T * t * t);
        out.samples[i] = std::polar(1.0, phase);
    }
    return out;
}

IqBuffer modulate_symbol(int value, const LoraParams& params, double fs) {
    params.validate();
    check_rate(params, fs);
    if (value < 0 || value >= params.chips_per_symbol())
        throw std::domain_error("symbol value out of range for sf");

    IqBuffer up = base_chirp(params, fs, ChirpDirection::Up);
    const std::size_t n = up.size();
    const std::size_t m = symbol_shift(value, n, params.sf);
    IqBuffer out;
    out.sample_rate_hz = fs;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.samples[i] = up.samples[(i + m) % n];
    return out;
}

std::size_t payload_symbol_count(std::size_t payload_len, const LoraParams& params) {
    const std::size_t nibbles = payload_len * 2;
    const std::size_t blocks = (nibbles + params.sf - 1) / params.sf;
    return blocks * static_cast<std::size_t>(params.cr);
}

std::vector<std::uint16_t> encode_payload(std::span<const std::uint8_t> payload,
                                          const LoraParams& params) {
    params.validate();
    if (payload.size() != params.payload_len)
        throw std::invalid_argument("payload length does not match params.payload_len");

    // high nibble first, zero-padded up to a whole block of sf codewords
    std::vector<std::uint8_t> nibbles;
    nibbles.reserve(payload.size() * 2);
    for (std::uint8_t b : payload) {
        nibbles.push_back(static_cast<std::uint8_t>(b >> 4));
        nibbles.push_back(static_cast<std::uint8_t>(b & 0x0F));
    }
    const std::size_t sf = static_cast<std::size_t>(params.sf);
    nibbles.resize(((nibbles.size() + sf - 1) / sf) * sf, 0);

    std::vector<std::uint16_t> symbols;
    symbols.reserve(payload_symbol_count(params.payload_len, params));
    const int cr = params.cr;
    for (std::size_t off = 0; off < nibbles.size(); off += sf) {
        std::vector<std::uint8_t> cw(sf);
        for (std::size_t m = 0; m < sf; ++m) cw[m] = fec_encode_nibble(nibbles[off + m], cr);
        // diagonal interleave: symbol k bit m <- codeword (m+k) mod sf, bit k
        for (int k = 0; k < cr; ++k) {
            std::uint16_t sym = 0;
            for (std::size_t m = 0; m < sf; ++m)
                sym |= static_cast<std::uint16_t>(((cw[(m + k) % sf] >> k) & 1) << m);
            symbols.push_back(gray_to_binary(sym));
        }
    }
    return symbols;
}

double frame_duration_s(const LoraParams& params) {
    const double n_sym = static_cast<double>(payload_symbol_count(params.payload_len, params));
    return (params.preamble_len + 4.25 + n_sym) * params.symbol_period_s();
}

IqBuffer build_frame_waveform(const LoraFrame& frame, double fs) {
    const LoraParams& p = frame.params;
    p.validate();
    check_rate(p, fs);
    if (frame.payload.size() != p.payload_len)
        throw std::invalid_argument("frame payload length does not match params");

    const SymbolTable table = make_table(p, fs);
    const double T = p.symbol_period_s();
    const std::vector<std::uint16_t> symbols = encode_payload(frame.payload, p);

    // Segment boundaries are accumulated in exact symbol time and rounded to
    // the nearest sample, so long frames stay aligned even when T*fs is not
    // an integer.
    struct Seg {
        double t_units;  // duration in symbol periods
        int kind;        // 0 chirp-up(shift), 1 chirp-down, 2 silence
        std::size_t shift;
    };
    std::vector<Seg> segs;
    for (int i = 0; i < p.preamble_len; ++i) segs.push_back({1.0, 0, 0});
    for (int s : p.sync_word) segs.push_back({1.0, 0, symbol_shift(s, table.n, p.sf)});
    segs.push_back({1.0, 1, 0});
    segs.push_back({1.0, 1, 0});
    segs.push_back({0.25, 2, 0});
    for (std::uint16_t s : symbols) segs.push_back({1.0, 0, symbol_shift(s, table.n, p.sf)});

    IqBuffer out;
    out.sample_rate_hz = fs;
    double t = 0.0;
    std::size_t b0 = 0;
    for (const Seg& s : segs) {
        t += s.t_units * T;
        const std::size_t b1 = static_cast<std::size_t>(std::llround(t * fs));
        const std::size_t len = b1 - b0;
        for (std::size_t i = 0; i < len; ++i) {
            switch (s.kind) {
                case 0: out.samples.push_back(table.rolled(s.shift, i)); break;
                case 1: out.samples.push_back(std::conj(table.up[i % table.n])); break;
                default: out.samples.push_back(cplx{0.0, 0.0}); break;
            }
        }
        b0 = b1;
    }
    return out;
}

} // namespace chirpkey::lora
