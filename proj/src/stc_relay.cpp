#include "rdstc/stc_relay.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rdstc/errors.hpp"

namespace rdstc {

AmplifyGain default_amplify_gain(int antennas, double sigma2, double symbol_power,
                                 double relay_power) {
    if (antennas < 1) throw std::invalid_argument("default_amplify_gain: antennas must be >= 1");
    return AmplifyGain{std::sqrt(relay_power / (antennas * symbol_power + sigma2))};
}

bool DispersionCode::slot_is_conjugate(int t) const {
    bool has_direct = frobenius_norm(direct[static_cast<std::size_t>(t)]) > 0.0;
    bool has_conj = frobenius_norm(conjugate[static_cast<std::size_t>(t)]) > 0.0;
    if (has_direct && has_conj)
        throw UnsupportedConfigError("dispersion slot mixes direct and conjugate symbols");
    return has_conj;
}

const DispersionCode& alamouti_dispersion() {
    static const DispersionCode code = [] {
        DispersionCode c;
        c.antennas = 2;
        c.slots = 2;
        c.direct.assign(2, ComplexMat::zero(2, 2));
        c.conjugate.assign(2, ComplexMat::zero(2, 2));
        c.direct[0] = ComplexMat::identity(2);  // slot 1 carries u
        c.conjugate[1](0, 1) = -1.0;            // slot 2 carries [-u2*, u1*]
        c.conjugate[1](1, 0) = 1.0;
        return c;
    }();
    return code;
}

ComplexMat alamouti_encode(const SymbolVec& s) {
    if (s.size() != 2) throw std::invalid_argument("alamouti_encode: expects 2 symbols");
    ComplexMat m(2, 2);
    m(0, 0) = s[0];
    m(1, 0) = s[1];
    m(0, 1) = -std::conj(s[1]);
    m(1, 1) = std::conj(s[0]);
    return m;
}

ComplexMat draw_randomized_matrix(int antennas, RandomStream& rng) {
    if (antennas < 1) throw std::invalid_argument("draw_randomized_matrix: antennas must be >= 1");
    ComplexMat r(antennas, antennas);
    for (int i = 0; i < r.size(); ++i) {
        double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        r[i] = {std::cos(theta), std::sin(theta)};
    }
    return r;
}

ComplexMat apply_randomization(const ComplexMat& randomized, const ComplexMat& code_block) {
    if (randomized.rows() != randomized.cols() || randomized.cols() != code_block.rows())
        throw std::invalid_argument("apply_randomization: dimension mismatch");
    return matmul(randomized, code_block);
}

double equivalent_code_power(const RandomizedCode& code) {
    double sum = 0.0;
    for (const auto& r : code.matrices) {
        double f = frobenius_norm(r);
        // Per-symbol equivalent form is I_T (x) R_k, repeated for each of the
        // N symbols: trace contribution N * T * ||R_k||_F^2.
        sum += r.rows() * kAlamoutiSlots * f * f;
    }
    return sum;
}

RandomizedCode draw_initial_code(int antennas, int relays, double power_budget,
                                 RandomStream& rng) {
    RandomizedCode code;
    code.power_budget = power_budget;
    code.matrices.reserve(static_cast<std::size_t>(relays));
    for (int k = 0; k < relays; ++k) code.matrices.push_back(draw_randomized_matrix(antennas, rng));
    double power = equivalent_code_power(code);
    double scale = std::sqrt(power_budget / power);
    for (auto& r : code.matrices) r = scale * r;
    return code;
}

namespace {

void check_supported(const ChannelSet& channels, const RandomizedCode& code) {
    int n = channels.source_dest.rows();
    if (n != 2)
        throw UnsupportedConfigError("only the 2-antenna Alamouti configuration is supported");
    if (channels.source_relay.size() != channels.relay_dest.size() ||
        channels.source_relay.size() != code.matrices.size())
        throw std::invalid_argument("relay counts of channels and code differ");
    for (const auto& r : code.matrices)
        if (r.rows() != n || r.cols() != n)
            throw std::invalid_argument("code matrix dimensions do not match the channel");
}

// (T*N) x N map from the amplified relay vector to the conjugate-processed
// destination samples: slot t block is G*R*P_t for direct slots and
// conj(G*R*Q_t) for conjugate slots.
ComplexMat coded_channel_for(const ComplexMat& relay_dest, const ComplexMat& randomized,
                             const DispersionCode& structure) {
    std::vector<ComplexMat> blocks;
    blocks.reserve(static_cast<std::size_t>(structure.slots));
    ComplexMat gr = matmul(relay_dest, randomized);
    for (int t = 0; t < structure.slots; ++t) {
        if (structure.slot_is_conjugate(t))
            blocks.push_back(conjugate(matmul(gr, structure.conjugate[static_cast<std::size_t>(t)])));
        else
            blocks.push_back(matmul(gr, structure.direct[static_cast<std::size_t>(t)]));
    }
    return vstack(blocks);
}

}  // namespace

EquivalentChannel build_equivalent_channel(const ChannelSet& channels, const RandomizedCode& code,
                                           const AmplifyGain& gain, bool direct_link) {
    check_supported(channels, code);
    const DispersionCode& structure = alamouti_dispersion();

    EquivalentChannel eq;
    eq.antennas = structure.antennas;
    eq.slots = structure.slots;
    eq.relays = static_cast<int>(channels.source_relay.size());
    eq.direct_link = direct_link;
    eq.amplify_gain = gain.g;
    eq.channels = channels;
    eq.structure = structure;

    for (int k = 0; k < eq.relays; ++k)
        eq.coded_relay_channel.push_back(coded_channel_for(
            channels.relay_dest[static_cast<std::size_t>(k)],
            code.matrices[static_cast<std::size_t>(k)], structure));

    int n = eq.antennas;
    int rx_len = (direct_link ? (eq.slots + 1) : eq.slots) * n;
    eq.per_symbol_channel = ComplexMat(rx_len, n);
    for (int j = 0; j < n; ++j) {
        ComplexMat column(rx_len, 1);
        int at = 0;
        if (direct_link) {
            for (int r = 0; r < n; ++r) column[at + r] = channels.source_dest(r, j);
            at += n;
        }
        for (int k = 0; k < eq.relays; ++k) {
            ComplexMat fcol = channels.source_relay[static_cast<std::size_t>(k)].col(j);
            ComplexMat contrib = matmul(eq.coded_relay_channel[static_cast<std::size_t>(k)],
                                        gain.g * fcol);
            for (int r = 0; r < contrib.rows(); ++r) column[at + r] += contrib[r];
        }
        eq.per_symbol_channel.set_col(j, column);
    }
    return eq;
}

ComplexMat EquivalentChannel::symbol_coupling(int relay, int symbol) const {
    ComplexMat masked(antennas, antennas);
    for (int r = 0; r < antennas; ++r)
        masked(r, symbol) =
            amplify_gain * channels.source_relay[static_cast<std::size_t>(relay)](r, symbol);
    return matmul(coded_relay_channel[static_cast<std::size_t>(relay)], masked);
}

ComplexMat amplify(const ComplexMat& r_sr, const AmplifyGain& gain, int /*relay_index*/) {
    return gain.g * r_sr;
}

ComplexMat assemble_from_relay_inputs(const ChannelSet& channels, const RandomizedCode& code,
                                      const std::vector<ComplexMat>& relay_inputs,
                                      const SymbolVec& s, const ComplexMat* direct_noise,
                                      const std::vector<ComplexMat>& slot_noise,
                                      bool direct_link) {
    check_supported(channels, code);
    const DispersionCode& structure = alamouti_dispersion();
    int n = structure.antennas;
    int relays = static_cast<int>(channels.source_relay.size());

    // Relay transmissions, slot by slot, superposed at the destination.
    std::vector<ComplexMat> slot_rx(static_cast<std::size_t>(structure.slots),
                                    ComplexMat::zero(n, 1));
    for (int k = 0; k < relays; ++k) {
        ComplexMat block = alamouti_encode(
            {relay_inputs[static_cast<std::size_t>(k)][0], relay_inputs[static_cast<std::size_t>(k)][1]});
        ComplexMat tx = apply_randomization(code.matrices[static_cast<std::size_t>(k)], block);
        for (int t = 0; t < structure.slots; ++t) {
            ComplexMat received =
                matmul(channels.relay_dest[static_cast<std::size_t>(k)], tx.col(t));
            for (int r = 0; r < n; ++r) slot_rx[static_cast<std::size_t>(t)][r] += received[r];
        }
    }
    for (int t = 0; t < structure.slots; ++t)
        for (int r = 0; r < n; ++r)
            slot_rx[static_cast<std::size_t>(t)][r] += slot_noise[static_cast<std::size_t>(t)][r];

    std::vector<ComplexMat> parts;
    if (direct_link) {
        ComplexMat sd = matmul(channels.source_dest, ComplexMat::column(s));
        if (direct_noise != nullptr) sd = sd + *direct_noise;
        parts.push_back(sd);
    }
    for (int t = 0; t < structure.slots; ++t) {
        // Conjugate slots are conjugated at the destination so the stacked
        // vector is linear in the symbols.
        if (structure.slot_is_conjugate(t))
            parts.push_back(conjugate(slot_rx[static_cast<std::size_t>(t)]));
        else
            parts.push_back(slot_rx[static_cast<std::size_t>(t)]);
    }
    return vstack(parts);
}

ComplexMat assemble_received_vector(const ChannelSet& channels, const RandomizedCode& code,
                                    const AmplifyGain& gain, const SymbolVec& s,
                                    const NoiseModel& noise, RandomStream& rng,
                                    bool direct_link) {
    check_supported(channels, code);
    int n = static_cast<int>(s.size());
    if (n != channels.source_dest.rows())
        throw std::invalid_argument("assemble_received_vector: symbol count mismatch");
    int relays = static_cast<int>(channels.source_relay.size());

    ComplexMat svec = ComplexMat::column(s);
    std::vector<ComplexMat> relay_inputs;
    relay_inputs.reserve(static_cast<std::size_t>(relays));
    for (int k = 0; k < relays; ++k) {
        ComplexMat r_sr = add_awgn(matmul(channels.source_relay[static_cast<std::size_t>(k)], svec),
                                   noise, rng);
        relay_inputs.push_back(amplify(r_sr, gain, k));
    }

    ComplexMat zero = ComplexMat::zero(n, 1);
    ComplexMat direct_noise = direct_link ? add_awgn(zero, noise, rng) : zero;
    std::vector<ComplexMat> slot_noise;
    for (int t = 0; t < kAlamoutiSlots; ++t) slot_noise.push_back(add_awgn(zero, noise, rng));

    return assemble_from_relay_inputs(channels, code, relay_inputs, s,
                                      direct_link ? &direct_noise : nullptr, slot_noise,
                                      direct_link);
}

}  // namespace rdstc
