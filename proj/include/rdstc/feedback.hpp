#ifndef RDSTC_FEEDBACK_HPP
#define RDSTC_FEEDBACK_HPP

#include "rdstc/channel.hpp"
#include "rdstc/modem.hpp"
#include "rdstc/rng.hpp"
#include "rdstc/stc_relay.hpp"

namespace rdstc {

// Uniform midrise scalar quantizer applied separately to the real and
// imaginary part of every code entry.
struct QuantizerSpec {
    int bits_per_component = 4;
    double clip_range = 1.0;  // components clipped to [-clip_range, clip_range]

    int levels() const { return 1 << bits_per_component; }
    double step() const { return 2.0 * clip_range / levels(); }
};

// Clip range 2 * sqrt(P_R / (n_r * N * T)).
QuantizerSpec default_quantizer_spec(int bits, double power_budget, int relays, int antennas,
                                     int slots = kAlamoutiSlots);

// Bit image of a code: components serialized relay-major, then row-major
// over each N x N matrix, real part before imaginary part, natural binary
// index with the most significant bit first.
struct FeedbackPacket {
    BitBlock bits;
    QuantizerSpec spec;
};

int quantize_component(double x, const QuantizerSpec& spec);       // level index
double dequantize_component(int index, const QuantizerSpec& spec); // level value

FeedbackPacket quantize_code(const RandomizedCode& code, const QuantizerSpec& spec);

// Inverse mapping; the relay renormalizes the reconstruction to its own
// power budget, so feedback errors never violate the transmit constraint.
RandomizedCode dequantize_code(const FeedbackPacket& packet, int relays, int antennas,
                               double power_budget);

// quantize -> binary symmetric channel -> dequantize: the code the relay
// actually applies.
RandomizedCode feedback_roundtrip(const RandomizedCode& code, const QuantizerSpec& spec,
                                  double error_prob, RandomStream& rng);

}  // namespace rdstc

#endif  // RDSTC_FEEDBACK_HPP
