#include "rdstc/feedback.hpp"

#include <cmath>
#include <stdexcept>

#include "rdstc/errors.hpp"
#include "rdstc/receiver.hpp"

namespace rdstc {

QuantizerSpec default_quantizer_spec(int bits, double power_budget, int relays, int antennas,
                                     int slots) {
    if (bits < 1) throw std::invalid_argument("quantizer needs at least 1 bit per component");
    QuantizerSpec spec;
    spec.bits_per_component = bits;
    spec.clip_range = 2.0 * std::sqrt(power_budget / (relays * antennas * slots));
    return spec;
}

int quantize_component(double x, const QuantizerSpec& spec) {
    double c = spec.clip_range;
    double clipped = x < -c ? -c : (x > c ? c : x);
    int index = static_cast<int>(std::floor((clipped + c) / spec.step()));
    if (index < 0) index = 0;
    if (index >= spec.levels()) index = spec.levels() - 1;
    return index;
}

double dequantize_component(int index, const QuantizerSpec& spec) {
    return -spec.clip_range + (index + 0.5) * spec.step();
}

namespace {

void append_bits(BitBlock& bits, int index, int width) {
    for (int b = width - 1; b >= 0; --b)
        bits.push_back(static_cast<std::uint8_t>((index >> b) & 1));
}

int read_bits(const BitBlock& bits, std::size_t& at, int width) {
    int index = 0;
    for (int b = 0; b < width; ++b) index = (index << 1) | (bits[at++] ? 1 : 0);
    return index;
}

}  // namespace

FeedbackPacket quantize_code(const RandomizedCode& code, const QuantizerSpec& spec) {
    FeedbackPacket packet;
    packet.spec = spec;
    for (const auto& r : code.matrices) {
        for (int i = 0; i < r.size(); ++i) {
            append_bits(packet.bits, quantize_component(r[i].real(), spec),
                        spec.bits_per_component);
            append_bits(packet.bits, quantize_component(r[i].imag(), spec),
                        spec.bits_per_component);
        }
    }
    return packet;
}

RandomizedCode dequantize_code(const FeedbackPacket& packet, int relays, int antennas,
                               double power_budget) {
    std::size_t expected = static_cast<std::size_t>(relays) * antennas * antennas * 2 *
                           packet.spec.bits_per_component;
    if (packet.bits.size() != expected)
        throw MalformedPacketError("dequantize_code: packet bit length mismatch");

    RandomizedCode code;
    code.power_budget = power_budget;
    std::size_t at = 0;
    for (int k = 0; k < relays; ++k) {
        ComplexMat r(antennas, antennas);
        for (int i = 0; i < r.size(); ++i) {
            double re = dequantize_component(read_bits(packet.bits, at, packet.spec.bits_per_component),
                                             packet.spec);
            double im = dequantize_component(read_bits(packet.bits, at, packet.spec.bits_per_component),
                                             packet.spec);
            r[i] = {re, im};
        }
        code.matrices.push_back(r);
    }
    return normalize_code(code);
}

RandomizedCode feedback_roundtrip(const RandomizedCode& code, const QuantizerSpec& spec,
                                  double error_prob, RandomStream& rng) {
    FeedbackPacket packet = quantize_code(code, spec);
    packet.bits = bsc_transmit(packet.bits, error_prob, rng);
    return dequantize_code(packet, static_cast<int>(code.matrices.size()),
                           code.matrices.front().rows(), code.power_budget);
}

}  // namespace rdstc
