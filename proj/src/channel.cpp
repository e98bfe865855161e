#include "rdstc/channel.hpp"

#include <stdexcept>

namespace rdstc {

namespace {

ComplexMat draw_gain_matrix(int n, RandomStream& rng) {
    ComplexMat m(n, n);
    for (int i = 0; i < m.size(); ++i) m[i] = rng.complex_gaussian(1.0);
    return m;
}

}  // namespace

ChannelSet draw_channel_set(int antennas, int relays, RandomStream& rng) {
    if (antennas < 1 || relays < 1)
        throw std::invalid_argument("draw_channel_set: antennas and relays must be >= 1");
    ChannelSet set;
    set.source_relay.reserve(static_cast<std::size_t>(relays));
    set.relay_dest.reserve(static_cast<std::size_t>(relays));
    for (int k = 0; k < relays; ++k) set.source_relay.push_back(draw_gain_matrix(antennas, rng));
    for (int k = 0; k < relays; ++k) set.relay_dest.push_back(draw_gain_matrix(antennas, rng));
    set.source_dest = draw_gain_matrix(antennas, rng);
    return set;
}

ComplexMat add_awgn(const ComplexMat& signal, const NoiseModel& noise, RandomStream& rng) {
    if (noise.sigma2 == 0.0) return signal;
    ComplexMat out = signal;
    for (int i = 0; i < out.size(); ++i) out[i] += rng.complex_gaussian(noise.sigma2);
    return out;
}

BitBlock bsc_transmit(const BitBlock& bits, double p, RandomStream& rng) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("bsc_transmit: flip probability outside [0, 1]");
    BitBlock out = bits;
    if (p == 0.0) return out;
    for (auto& b : out) {
        bool flip = (p == 1.0) || rng.bernoulli(p);
        if (flip) b = b ? 0 : 1;
    }
    return out;
}

}  // namespace rdstc
