#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rdstc/errors.hpp"
#include "rdstc/stc_relay.hpp"

using namespace rdstc;

namespace {

RandomizedCode make_code(const ComplexMat& r, double budget) {
    RandomizedCode code;
    code.matrices.push_back(r);
    code.power_budget = budget;
    return code;
}

ChannelSet identity_channels(int relays) {
    ChannelSet set;
    for (int k = 0; k < relays; ++k) {
        set.source_relay.push_back(ComplexMat::identity(2));
        set.relay_dest.push_back(ComplexMat::identity(2));
    }
    set.source_dest = ComplexMat::identity(2);
    return set;
}

SymbolVec random_symbols(RandomStream& rng) {
    BitBlock bits(4);
    for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
    return modulate(bits);
}

double rel_diff(const ComplexMat& a, const ComplexMat& b) {
    return frobenius_norm(a - b) / (frobenius_norm(b) + 1e-300);
}

}  // namespace

TEST_CASE("amplify scales the relay input") {
    ComplexMat r(2, 1);
    r[0] = 1.0;
    r[1] = cdouble(0.0, 1.0);
    ComplexMat same = amplify(r, AmplifyGain{1.0}, 0);
    CHECK(same[0] == r[0]);
    CHECK(same[1] == r[1]);
    ComplexMat twice = amplify(r, AmplifyGain{2.0}, 0);
    CHECK(twice[0] == cdouble(2.0, 0.0));
    CHECK(twice[1] == cdouble(0.0, 2.0));
}

TEST_CASE("default gain rule hits the per-relay power target") {
    RandomStream rng(41);
    double sigma2 = 0.5;
    AmplifyGain gain = default_amplify_gain(2, sigma2);
    NoiseModel noise{sigma2};
    double power = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        ChannelSet set = draw_channel_set(2, 1, rng);
        SymbolVec s = random_symbols(rng);
        ComplexMat rx = add_awgn(matmul(set.source_relay[0], ComplexMat::column(s)), noise, rng);
        power += norm2(amplify(rx, gain, 0));
    }
    power /= draws;
    // E||s_tilde||^2 = N * relay_power under the gain rule.
    CHECK(power == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("alamouti encoder fixed blocks") {
    ComplexMat basis = alamouti_encode({1.0, 0.0});
    CHECK(basis(0, 0) == cdouble(1.0, 0.0));
    CHECK(basis(0, 1) == cdouble(0.0, 0.0));
    CHECK(basis(1, 0) == cdouble(0.0, 0.0));
    CHECK(basis(1, 1) == cdouble(1.0, 0.0));

    ComplexMat m = alamouti_encode({cdouble(1.0, 0.0), cdouble(0.0, 1.0)});
    CHECK(m(0, 0) == cdouble(1.0, 0.0));
    CHECK(m(0, 1) == cdouble(0.0, 1.0));
    CHECK(m(1, 0) == cdouble(0.0, 1.0));
    CHECK(m(1, 1) == cdouble(1.0, 0.0));

    CHECK_THROWS_AS(alamouti_encode({1.0}), std::invalid_argument);
}

TEST_CASE("alamouti orthogonality") {
    RandomStream rng(42);
    for (int i = 0; i < 50; ++i) {
        SymbolVec s = {rng.complex_gaussian(1.0), rng.complex_gaussian(1.0)};
        ComplexMat m = alamouti_encode(s);
        ComplexMat gram = matmul(m, adjoint(m));
        double energy = std::norm(s[0]) + std::norm(s[1]);
        CHECK(rel_diff(gram, energy * ComplexMat::identity(2)) < 1e-12);
    }
}

TEST_CASE("randomized matrix entries are unit modulus and zero mean") {
    RandomStream rng(43);
    cdouble mean = 0.0;
    long count = 0;
    for (int i = 0; i < 25000; ++i) {
        ComplexMat r = draw_randomized_matrix(2, rng);
        for (int e = 0; e < r.size(); ++e) {
            CHECK(std::abs(std::abs(r[e]) - 1.0) < 1e-12);
            mean += r[e];
            ++count;
        }
        double f = frobenius_norm(r);
        CHECK(f * f == doctest::Approx(4.0).epsilon(1e-12));
    }
    CHECK(std::abs(mean / static_cast<double>(count)) < 0.02);
}

TEST_CASE("apply_randomization") {
    RandomStream rng(44);
    ComplexMat m = draw_randomized_matrix(2, rng);
    CHECK(rel_diff(apply_randomization(ComplexMat::identity(2), m), m) == doctest::Approx(0.0));

    ComplexMat phase(2, 2);
    phase(0, 0) = cdouble(0.0, 1.0);
    phase(1, 1) = 1.0;
    ComplexMat rotated = apply_randomization(phase, ComplexMat::identity(2));
    CHECK(rotated(0, 0) == cdouble(0.0, 1.0));
    CHECK(rotated(1, 1) == cdouble(1.0, 0.0));

    ComplexMat a = draw_randomized_matrix(2, rng);
    ComplexMat b = draw_randomized_matrix(2, rng);
    CHECK(rel_diff(apply_randomization(a, b), matmul(a, b)) == doctest::Approx(0.0));

    CHECK_THROWS_AS(apply_randomization(ComplexMat(2, 3), ComplexMat(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("equivalent code power and initial draw meet the budget") {
    RandomStream rng(45);
    RandomizedCode code = draw_initial_code(2, 2, 4.0, rng);
    CHECK(equivalent_code_power(code) == doctest::Approx(4.0).epsilon(1e-12));
    // Unit-modulus matrices have ||R||_F^2 = 4, so power before scaling is
    // N*T*4 per relay.
    RandomizedCode raw = make_code(draw_randomized_matrix(2, rng), 4.0);
    CHECK(equivalent_code_power(raw) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("transparent chain: identity everything reproduces the code block") {
    ChannelSet set = identity_channels(1);
    RandomizedCode code = make_code(ComplexMat::identity(2), 4.0);
    AmplifyGain gain{1.0};
    RandomStream rng(46);
    SymbolVec s = {1.0, 0.0};
    ComplexMat r = assemble_received_vector(set, code, gain, s, NoiseModel{0.0}, rng, true);
    REQUIRE(r.rows() == 6);
    // Direct part H s.
    CHECK(std::abs(r[0] - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(r[1]) < 1e-15);
    // Relay part: the Alamouti block of [1, 0] column-stacked (second slot
    // conjugated) is [1, 0, 0, 1].
    CHECK(std::abs(r[2] - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(r[3]) < 1e-15);
    CHECK(std::abs(r[4]) < 1e-15);
    CHECK(std::abs(r[5] - cdouble(1.0, 0.0)) < 1e-15);
}

TEST_CASE("zero relay-destination channel annihilates the relay contribution") {
    ChannelSet set = identity_channels(1);
    set.relay_dest[0] = ComplexMat(2, 2);
    RandomStream rng(47);
    RandomizedCode code = make_code(draw_randomized_matrix(2, rng), 4.0);
    SymbolVec s = random_symbols(rng);
    ComplexMat r = assemble_received_vector(set, code, AmplifyGain{1.0}, s, NoiseModel{0.0}, rng,
                                            false);
    REQUIRE(r.rows() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(r[i]) == 0.0);
}

TEST_CASE("received vector length honours the direct-link flag") {
    RandomStream rng(48);
    ChannelSet set = draw_channel_set(2, 1, rng);
    RandomizedCode code = draw_initial_code(2, 1, 4.0, rng);
    AmplifyGain gain = default_amplify_gain(2, 1.0);
    SymbolVec s = random_symbols(rng);
    CHECK(assemble_received_vector(set, code, gain, s, NoiseModel{1.0}, rng, false).rows() == 4);
    CHECK(assemble_received_vector(set, code, gain, s, NoiseModel{1.0}, rng, true).rows() == 6);
}

TEST_CASE("equivalent model matches the literal chain") {
    RandomStream rng(49);
    for (int trial = 0; trial < 100; ++trial) {
        int relays = 1 + (trial % 2);
        ChannelSet set = draw_channel_set(2, relays, rng);
        RandomizedCode code = draw_initial_code(2, relays, 4.0, rng);
        AmplifyGain gain = default_amplify_gain(2, 0.3);
        bool direct = trial % 3 != 0;
        SymbolVec s = random_symbols(rng);

        ComplexMat literal =
            assemble_received_vector(set, code, gain, s, NoiseModel{0.0}, rng, direct);
        EquivalentChannel eq = build_equivalent_channel(set, code, gain, direct);
        ComplexMat predicted = matmul(eq.per_symbol_channel, ComplexMat::column(s));
        CHECK(rel_diff(predicted, literal) < 1e-10);
    }
}

TEST_CASE("assembled vector is linear in the symbols when noise is off") {
    RandomStream rng(50);
    ChannelSet set = draw_channel_set(2, 1, rng);
    RandomizedCode code = draw_initial_code(2, 1, 4.0, rng);
    AmplifyGain gain = default_amplify_gain(2, 0.5);
    NoiseModel quiet{0.0};

    SymbolVec s1 = {rng.complex_gaussian(1.0), rng.complex_gaussian(1.0)};
    SymbolVec s2 = {rng.complex_gaussian(1.0), rng.complex_gaussian(1.0)};
    cdouble a = rng.complex_gaussian(1.0);
    cdouble b = rng.complex_gaussian(1.0);
    SymbolVec mix = {a * s1[0] + b * s2[0], a * s1[1] + b * s2[1]};

    ComplexMat r1 = assemble_received_vector(set, code, gain, s1, quiet, rng, true);
    ComplexMat r2 = assemble_received_vector(set, code, gain, s2, quiet, rng, true);
    ComplexMat rmix = assemble_received_vector(set, code, gain, mix, quiet, rng, true);
    CHECK(rel_diff(rmix, a * r1 + b * r2) < 1e-12);
}

TEST_CASE("symbol couplings decompose the relay signal") {
    RandomStream rng(51);
    ChannelSet set = draw_channel_set(2, 2, rng);
    RandomizedCode code = draw_initial_code(2, 2, 4.0, rng);
    AmplifyGain gain = default_amplify_gain(2, 0.5);
    SymbolVec s = random_symbols(rng);
    EquivalentChannel eq = build_equivalent_channel(set, code, gain, false);

    ComplexMat total(4, 1);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            total = total + matmul(eq.symbol_coupling(k, j), ComplexMat::column(s));
    ComplexMat literal = assemble_received_vector(set, code, gain, s, NoiseModel{0.0}, rng, false);
    CHECK(rel_diff(total, literal) < 1e-10);
}

TEST_CASE("relay noise covariance matches the analytic expression") {
    RandomStream rng(52);
    ChannelSet set = draw_channel_set(2, 1, rng);
    RandomizedCode code = draw_initial_code(2, 1, 4.0, rng);
    AmplifyGain gain = default_amplify_gain(2, 1.0);
    NoiseModel noise{1.0};
    SymbolVec zero = {0.0, 0.0};

    ComplexMat sample_cov(4, 4);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        ComplexMat r = assemble_received_vector(set, code, gain, zero, noise, rng, false);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                sample_cov(a, b) += r[a] * std::conj(r[b]) / static_cast<double>(draws);
    }

    EquivalentChannel eq = build_equivalent_channel(set, code, gain, false);
    const ComplexMat& bmat = eq.coded_relay_channel[0];
    ComplexMat analytic = noise.sigma2 * ComplexMat::identity(4) +
                          (gain.g * gain.g * noise.sigma2) * matmul(bmat, adjoint(bmat));
    CHECK(frobenius_norm(sample_cov - analytic) / frobenius_norm(analytic) < 0.05);

    // Trace form: total noise power sigma^2 (T*N + g^2 ||B||_F^2).
    double f2 = frobenius_norm(bmat) * frobenius_norm(bmat);
    double expected_power = noise.sigma2 * (4.0 + gain.g * gain.g * f2);
    CHECK(trace(sample_cov).real() == doctest::Approx(expected_power).epsilon(0.05));
}

TEST_CASE("average relay block energy follows the budget bookkeeping") {
    RandomStream rng(53);
    NoiseModel noise{1.0};
    AmplifyGain gain = default_amplify_gain(2, noise.sigma2);
    double budget = 4.0;
    double energy = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        ChannelSet set = draw_channel_set(2, 1, rng);
        RandomizedCode code = draw_initial_code(2, 1, budget, rng);
        SymbolVec s = random_symbols(rng);
        ComplexMat rx = add_awgn(matmul(set.source_relay[0], ComplexMat::column(s)), noise, rng);
        ComplexMat u = amplify(rx, gain, 0);
        ComplexMat tx = apply_randomization(code.matrices[0], alamouti_encode({u[0], u[1]}));
        energy += frobenius_norm(tx) * frobenius_norm(tx);
    }
    energy /= draws;
    // The budget counts each of the N per-symbol equivalent forms, so the
    // physical block energy is P_R * relay_power / N.
    CHECK(energy == doctest::Approx(budget / 2.0).epsilon(0.05));
}

TEST_CASE("unsupported antenna counts are rejected") {
    RandomStream rng(54);
    ChannelSet set;
    set.source_relay.push_back(ComplexMat::identity(3));
    set.relay_dest.push_back(ComplexMat::identity(3));
    set.source_dest = ComplexMat::identity(3);
    RandomizedCode code = make_code(ComplexMat::identity(3), 4.0);
    CHECK_THROWS_AS(build_equivalent_channel(set, code, AmplifyGain{1.0}, true),
                    UnsupportedConfigError);
}
