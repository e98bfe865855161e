#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rdstc/channel.hpp"
#include "rdstc/rng.hpp"

using namespace rdstc;

TEST_CASE("channel entries have zero mean and unit variance") {
    RandomStream rng(31);
    cdouble mean = 0.0;
    double power = 0.0;
    long count = 0;
    while (count < 100000) {
        ChannelSet set = draw_channel_set(2, 2, rng);
        for (const auto& m : {set.source_relay[0], set.source_relay[1], set.relay_dest[0],
                              set.relay_dest[1], set.source_dest}) {
            for (int i = 0; i < m.size(); ++i) {
                mean += m[i];
                power += std::norm(m[i]);
                ++count;
            }
        }
    }
    mean /= static_cast<double>(count);
    power /= static_cast<double>(count);
    CHECK(std::abs(mean) < 0.02);
    CHECK(power == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("same seed reproduces the channel set exactly") {
    RandomStream a(32), b(32);
    ChannelSet one = draw_channel_set(2, 1, a);
    ChannelSet two = draw_channel_set(2, 1, b);
    for (int i = 0; i < 4; ++i) {
        CHECK(one.source_relay[0][i] == two.source_relay[0][i]);
        CHECK(one.relay_dest[0][i] == two.relay_dest[0][i]);
        CHECK(one.source_dest[i] == two.source_dest[i]);
    }
    CHECK_THROWS_AS(draw_channel_set(0, 1, a), std::invalid_argument);
}

TEST_CASE("add_awgn passes the signal through when sigma2 is zero") {
    RandomStream rng(33);
    ComplexMat v(3, 1);
    v[0] = cdouble(1.0, -1.0);
    v[1] = cdouble(0.5, 0.25);
    v[2] = cdouble(-2.0, 0.0);
    ComplexMat out = add_awgn(v, NoiseModel{0.0}, rng);
    for (int i = 0; i < 3; ++i) CHECK(out[i] == v[i]);
}

TEST_CASE("add_awgn noise variance matches sigma2") {
    RandomStream rng(34);
    NoiseModel noise{0.7};
    ComplexMat zero(1, 1);
    double power = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) power += std::norm(add_awgn(zero, noise, rng)[0]);
    power /= draws;
    CHECK(power == doctest::Approx(noise.sigma2).epsilon(0.03));
}

TEST_CASE("add_awgn is reproducible from the seed") {
    ComplexMat v(4, 1);
    RandomStream a(35), b(35);
    ComplexMat x = add_awgn(v, NoiseModel{1.0}, a);
    ComplexMat y = add_awgn(v, NoiseModel{1.0}, b);
    for (int i = 0; i < 4; ++i) CHECK(x[i] == y[i]);
}

TEST_CASE("bsc endpoints") {
    RandomStream rng(36);
    BitBlock bits = {1, 0, 1, 1, 0, 0, 1, 0};
    CHECK(bsc_transmit(bits, 0.0, rng) == bits);
    BitBlock flipped = bsc_transmit(bits, 1.0, rng);
    for (std::size_t i = 0; i < bits.size(); ++i) CHECK(flipped[i] == (bits[i] ? 0 : 1));
    CHECK_THROWS_AS(bsc_transmit(bits, -0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(bsc_transmit(bits, 1.1, rng), std::invalid_argument);
}

TEST_CASE("bsc flip fraction concentrates around p") {
    RandomStream rng(37);
    BitBlock bits(1000000, 0);
    BitBlock out = bsc_transmit(bits, 0.1, rng);
    long flips = 0;
    for (auto b : out) flips += b;
    double fraction = static_cast<double>(flips) / static_cast<double>(bits.size());
    CHECK(fraction > 0.097);
    CHECK(fraction < 0.103);
}
