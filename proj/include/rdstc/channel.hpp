#ifndef RDSTC_CHANNEL_HPP
#define RDSTC_CHANNEL_HPP

#include <vector>

#include "rdstc/complex_mat.hpp"
#include "rdstc/modem.hpp"
#include "rdstc/rng.hpp"

namespace rdstc {

// One coherence-block realization of all link gains. Held fixed for a whole
// packet; treat as immutable after creation.
struct ChannelSet {
    std::vector<ComplexMat> source_relay;   // F_k, one N x N matrix per relay
    std::vector<ComplexMat> relay_dest;     // G_k, one N x N matrix per relay
    ComplexMat source_dest;                 // H, N x N
};

struct NoiseModel {
    double sigma2 = 1.0;  // noise variance per complex dimension
};

// I.i.d. CN(0,1) entries on every link (unit-variance Rayleigh fading).
ChannelSet draw_channel_set(int antennas, int relays, RandomStream& rng);

// signal + CN(0, sigma2) per entry; sigma2 == 0 is an exact passthrough.
ComplexMat add_awgn(const ComplexMat& signal, const NoiseModel& noise, RandomStream& rng);

// Binary symmetric channel: flips each bit independently with probability p.
BitBlock bsc_transmit(const BitBlock& bits, double p, RandomStream& rng);

}  // namespace rdstc

#endif  // RDSTC_CHANNEL_HPP
