#include "chirpkey/cck_phy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chirpkey::cck {

namespace {

constexpr cplx kUnit[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

QuarterPhase dqpsk_delta(int d0, int d1) {
    // dibit (d0,d1), d0 first in time: 00->0, 01->pi/2, 11->pi, 10->3pi/2
    static constexpr QuarterPhase table[4] = {0, 1, 3, 2};  // index (d0<<1)|d1
    return table[(d0 << 1) | d1];
}

QuarterPhase qpsk_phase(int di, int dj) {
    // dibit (di,dj), di first in time: 00->0, 01->pi/2, 10->pi, 11->3pi/2
    return static_cast<QuarterPhase>((di << 1) | dj);
}

} // namespace

QuarterPhase quantize_phase(double radians) {
    const double q = radians / (std::numbers::pi / 2.0);
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-6 * 4.0)
        throw std::domain_error("phase is not a multiple of pi/2");
    const long long i = static_cast<long long>(r) % 4;
    return static_cast<QuarterPhase>((i + 4) % 4);
}

double phase_radians(QuarterPhase q) { return (q & 3) * (std::numbers::pi / 2.0); }

std::array<cplx, 8> cck_spread(const std::array<QuarterPhase, 4>& phases) {
    const int p1 = phases[0] & 3, p2 = phases[1] & 3, p3 = phases[2] & 3, p4 = phases[3] & 3;
    auto u = [](int q) { return kUnit[((q % 4) + 4) % 4]; };
    return {
        u(p1 + p2 + p3 + p4),
        u(p1 + p3 + p4),
        u(p1 + p2 + p4),
        u(p1 + p4 + 2),  // negated chip
        u(p1 + p2 + p3),
        u(p1 + p3),
        u(p1 + p2 + 2),  // negated chip
        u(p1),
    };
}

std::array<cplx, 8> cck_spread(const std::array<double, 4>& phases_radians) {
    std::array<QuarterPhase, 4> q{};
    for (int i = 0; i < 4; ++i) q[i] = quantize_phase(phases_radians[i]);
    return cck_spread(q);
}

const std::array<CckCodeword, 256>& codebook() {
    static const std::array<CckCodeword, 256> book = [] {
        std::array<CckCodeword, 256> b{};
        for (int i = 0; i < 256; ++i) {
            std::array<QuarterPhase, 4> p = {
                static_cast<QuarterPhase>((i >> 6) & 3),
                static_cast<QuarterPhase>((i >> 4) & 3),
                static_cast<QuarterPhase>((i >> 2) & 3),
                static_cast<QuarterPhase>(i & 3),
            };
            b[i] = CckCodeword{p, cck_spread(p)};
        }
        return b;
    }();
    return book;
}

std::uint64_t codebook_digest() {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](int v) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint8_t>(v));
        h *= 1099511628211ULL;
    };
    for (const CckCodeword& cw : codebook())
        for (const cplx& c : cw.chips) {
            mix(static_cast<int>(c.real()));
            mix(static_cast<int>(c.imag()));
        }
    return h;
}

std::array<QuarterPhase, 4> phases_from_bits(std::uint8_t byte, bool odd_symbol,
                                             QuarterPhase prev_phi1) {
    const int d0 = byte & 1, d1 = (byte >> 1) & 1;
    QuarterPhase delta = dqpsk_delta(d0, d1);
    if (odd_symbol) delta = static_cast<QuarterPhase>((delta + 2) & 3);
    std::array<QuarterPhase, 4> p{};
    p[0] = static_cast<QuarterPhase>((prev_phi1 + delta) & 3);
    p[1] = qpsk_phase((byte >> 2) & 1, (byte >> 3) & 1);
    p[2] = qpsk_phase((byte >> 4) & 1, (byte >> 5) & 1);
    p[3] = qpsk_phase((byte >> 6) & 1, (byte >> 7) & 1);
    return p;
}

std::uint8_t bits_from_phases(const std::array<QuarterPhase, 4>& phases, bool odd_symbol,
                              QuarterPhase prev_phi1) {
    QuarterPhase delta = static_cast<QuarterPhase>((phases[0] - prev_phi1 + 4) & 3);
    if (odd_symbol) delta = static_cast<QuarterPhase>((delta + 2) & 3);
    // invert the DQPSK Gray table
    int d0 = 0, d1 = 0;
    switch (delta) {
        case 0: d0 = 0; d1 = 0; break;
        case 1: d0 = 0; d1 = 1; break;
        case 2: d0 = 1; d1 = 1; break;
        default: d0 = 1; d1 = 0; break;
    }
    std::uint8_t byte = static_cast<std::uint8_t>(d0 | (d1 << 1));
    for (int k = 1; k < 4; ++k) {
        const int q = phases[k] & 3;
        const int di = (q >> 1) & 1, dj = q & 1;
        byte |= static_cast<std::uint8_t>((di | (dj << 1)) << (2 * k));
    }
    return byte;
}

namespace {

class Scrambler {
  public:
    explicit Scrambler(std::uint8_t seed) : state_(seed & 0x7F) {}

    std::uint8_t scramble_bit(std::uint8_t in) {
        const std::uint8_t out = (in ^ (state_ >> 3) ^ (state_ >> 6)) & 1;
        state_ = static_cast<std::uint8_t>(((state_ << 1) | out) & 0x7F);
        return out;
    }
    std::uint8_t descramble_bit(std::uint8_t in) {
        const std::uint8_t out = (in ^ (state_ >> 3) ^ (state_ >> 6)) & 1;
        state_ = static_cast<std::uint8_t>(((state_ << 1) | (in & 1)) & 0x7F);
        return out;
    }

  private:
    std::uint8_t state_;
};

} // namespace

std::vector<std::uint8_t> scramble(std::span<const std::uint8_t> bits, std::uint8_t seed) {
    Scrambler s(seed);
    std::vector<std::uint8_t> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = s.scramble_bit(bits[i] & 1);
    return out;
}

std::vector<std::uint8_t> descramble(std::span<const std::uint8_t> bits, std::uint8_t seed) {
    Scrambler s(seed);
    std::vector<std::uint8_t> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = s.descramble_bit(bits[i] & 1);
    return out;
}

IqBuffer modulate_payload(const WifiFramePlan& plan) {
    DqpskState state;
    return modulate_payload(plan, state);
}

IqBuffer modulate_payload(const WifiFramePlan& plan, DqpskState& state) {
    if (plan.payload.empty()) throw std::invalid_argument("frame payload must not be empty");
    if (plan.payload.size() > kMaxPsduBytes)
        throw std::invalid_argument("frame payload exceeds 4095 bytes");

    // bits leave each octet LSB first
    std::vector<std::uint8_t> bits;
    bits.reserve(plan.payload.size() * 8);
    for (std::uint8_t b : plan.payload)
        for (int k = 0; k < 8; ++k) bits.push_back((b >> k) & 1);
    if (plan.scrambler_enabled) bits = scramble(bits, plan.scrambler_seed);

    IqBuffer out;
    out.sample_rate_hz = kChipRateHz;
    out.samples.reserve(plan.payload.size() * 8);
    for (std::size_t i = 0; i < plan.payload.size(); ++i) {
        std::uint8_t byte = 0;
        for (int k = 0; k < 8; ++k) byte |= static_cast<std::uint8_t>(bits[i * 8 + k] << k);
        const auto phases = phases_from_bits(byte, (i & 1) != 0, state.prev_phi1);
        state.prev_phi1 = phases[0];
        for (const cplx& c : cck_spread(phases)) out.samples.push_back(c);
    }
    return out;
}

namespace {

constexpr double kBarker[11] = {1, -1, 1, 1, -1, 1, 1, 1, -1, -1, -1};

// CRC-16 for the PLCP header: x^16 + x^12 + x^5 + 1, preset ones,
// transmitted complemented.
std::uint16_t plcp_crc16(std::span<const std::uint8_t> bits) {
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t bit : bits) {
        const std::uint16_t fb = ((crc >> 15) ^ bit) & 1;
        crc = static_cast<std::uint16_t>(crc << 1);
        if (fb) crc ^= 0x1021;
    }
    return static_cast<std::uint16_t>(~crc);
}

void push_bits_lsb(std::vector<std::uint8_t>& bits, std::uint32_t value, int count) {
    for (int k = 0; k < count; ++k) bits.push_back((value >> k) & 1);
}

} // namespace

std::size_t preamble_samples(PreambleKind kind) { return kind == PreambleKind::Long ? 2112 : 1056; }

double preamble_duration_us(PreambleKind kind) { return kind == PreambleKind::Long ? 192.0 : 96.0; }

IqBuffer preamble_waveform(PreambleKind kind, std::size_t psdu_bytes) {
    const bool long_pre = kind == PreambleKind::Long;

    // SYNC + SFD
    std::vector<std::uint8_t> pre_bits;
    if (long_pre) {
        pre_bits.assign(128, 1);
        pre_bits = scramble(pre_bits, 0x6C);
        push_bits_lsb(pre_bits, 0xF3A0, 16);
    } else {
        pre_bits.assign(56, 0);
        pre_bits = scramble(pre_bits, 0x1B);
        push_bits_lsb(pre_bits, 0x05CF, 16);
    }

    // PLCP header: SIGNAL (11 Mbps), SERVICE, LENGTH in us, CRC-16
    std::vector<std::uint8_t> hdr_bits;
    push_bits_lsb(hdr_bits, 0x6E, 8);
    push_bits_lsb(hdr_bits, 0x04, 8);
    const std::uint32_t length_us =
        static_cast<std::uint32_t>((psdu_bytes * 8 + 10) / 11);
    push_bits_lsb(hdr_bits, length_us & 0xFFFF, 16);
    push_bits_lsb(hdr_bits, plcp_crc16(hdr_bits), 16);

    IqBuffer out;
    out.sample_rate_hz = kChipRateHz;
    out.samples.reserve(preamble_samples(kind));

    double phi = 0.0;
    auto emit_barker = [&out, &phi] {
        const cplx rot = std::polar(1.0, phi);
        for (double chip : kBarker) out.samples.push_back(rot * chip);
    };

    // preamble section is always DBPSK at 1 Mbps: 1 bit per Barker word
    for (std::uint8_t bit : pre_bits) {
        if (bit) phi += std::numbers::pi;
        emit_barker();
    }

    if (long_pre) {
        for (std::uint8_t bit : hdr_bits) {
            if (bit) phi += std::numbers::pi;
            emit_barker();
        }
    } else {
        // short-preamble header runs DQPSK at 2 Mbps: 2 bits per Barker word
        for (std::size_t i = 0; i < hdr_bits.size(); i += 2) {
            const int d0 = hdr_bits[i], d1 = hdr_bits[i + 1];
            phi += phase_radians(dqpsk_delta(d0, d1));
            emit_barker();
        }
    }
    return out;
}

} // namespace chirpkey::cck
