#ifndef RDSTC_STC_RELAY_HPP
#define RDSTC_STC_RELAY_HPP

#include <vector>

#include "rdstc/channel.hpp"
#include "rdstc/complex_mat.hpp"
#include "rdstc/modem.hpp"
#include "rdstc/rng.hpp"

namespace rdstc {

// Per-relay randomized code matrices R_k (N x N) plus the shared transmit
// power budget. The budget is accounted on the per-symbol equivalent forms
// (block-diagonal replication of R_k over the T slots), which for this
// parameterization reduces to N * T * sum_k ||R_k||_F^2.
struct RandomizedCode {
    std::vector<ComplexMat> matrices;
    double power_budget = 0.0;
};

// Fixed amplify-and-forward gain, A_k = g * I for every relay.
struct AmplifyGain {
    double g = 1.0;
};

// g = sqrt(relay_power / (N * symbol_power + sigma2)): fixed-gain AF with the
// statistical average receive power at the relay in the denominator.
AmplifyGain default_amplify_gain(int antennas, double sigma2, double symbol_power = kSymbolPower,
                                 double relay_power = 1.0);

// Linear-dispersion description of an N x T space-time code: column t of the
// code block equals direct[t] * u + conjugate[t] * conj(u). Slots must be
// purely direct or purely conjugate so the receiver can re-linearize
// conjugate slots by conjugating the received samples.
struct DispersionCode {
    int antennas = 0;
    int slots = 0;
    std::vector<ComplexMat> direct;
    std::vector<ComplexMat> conjugate;

    bool slot_is_conjugate(int t) const;
};

// The 2 x 2 Alamouti structure: M(u) = [[u1, -u2*], [u2, u1*]].
const DispersionCode& alamouti_dispersion();

// Number of slots of the shipped code family.
inline constexpr int kAlamoutiSlots = 2;

ComplexMat alamouti_encode(const SymbolVec& s);

// N x N matrix with entries exp(j*theta), theta uniform on [0, 2*pi).
ComplexMat draw_randomized_matrix(int antennas, RandomStream& rng);

// The transmitted relay block R * M.
ComplexMat apply_randomization(const ComplexMat& randomized, const ComplexMat& code_block);

// Budget-relevant power of a code: sum over relays and symbols of the trace
// of the per-symbol equivalent Gram matrices.
double equivalent_code_power(const RandomizedCode& code);

// Fresh unit-modulus code scaled to meet the budget exactly.
RandomizedCode draw_initial_code(int antennas, int relays, double power_budget, RandomStream& rng);

// Everything the receiver needs about one coherence block: the raw link
// gains, the dispersion structure, and the derived per-symbol linear model.
// Received slot-2 samples enter the stacked vector conjugated, which makes
// the model linear in the transmitted symbols.
struct EquivalentChannel {
    int antennas = 0;  // N
    int slots = 0;     // T
    int relays = 0;    // n_r
    bool direct_link = true;
    double amplify_gain = 1.0;

    ChannelSet channels;
    DispersionCode structure;

    // B_k, (T*N) x N: maps the amplified relay-k vector to its (conjugate
    // processed) contribution at the destination, code and randomization
    // applied.
    std::vector<ComplexMat> coded_relay_channel;

    // Column j is the full per-symbol channel d_j of the stacked receive
    // vector; (T+1)N rows with the direct link, T*N without.
    ComplexMat per_symbol_channel;

    int rx_length() const { return per_symbol_channel.rows(); }

    // (T*N) x N coupling of symbol j through relay k: code, channel,
    // amplification and the j-th source column folded together. Summing the
    // product with the symbol vector over j reproduces the relay signal.
    ComplexMat symbol_coupling(int relay, int symbol) const;
};

EquivalentChannel build_equivalent_channel(const ChannelSet& channels, const RandomizedCode& code,
                                           const AmplifyGain& gain, bool direct_link);

// s_tilde = g * r_sr at relay `relay_index`.
ComplexMat amplify(const ComplexMat& r_sr, const AmplifyGain& gain, int relay_index);

// One literal pass through the signal chain: source broadcast, relay
// amplification, space-time encoding, randomization, relay-to-destination
// propagation, and stacking (with slot conjugation) at the destination.
// Relay noise and destination noise are drawn from `rng`.
ComplexMat assemble_received_vector(const ChannelSet& channels, const RandomizedCode& code,
                                    const AmplifyGain& gain, const SymbolVec& s,
                                    const NoiseModel& noise, RandomStream& rng, bool direct_link);

// Same chain with caller-supplied relay input vectors u_k (already amplified,
// noise included); used by the adaptive loop and by tests that need the map
// from code to received vector with all randomness frozen.
ComplexMat assemble_from_relay_inputs(const ChannelSet& channels, const RandomizedCode& code,
                                      const std::vector<ComplexMat>& relay_inputs,
                                      const SymbolVec& s, const ComplexMat* direct_noise,
                                      const std::vector<ComplexMat>& slot_noise, bool direct_link);

}  // namespace rdstc

#endif  // RDSTC_STC_RELAY_HPP
