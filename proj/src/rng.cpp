#include "rdstc/rng.hpp"

#include <cmath>
#include <numbers>

namespace rdstc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RandomStream RandomStream::child(std::uint64_t tag) const {
    return RandomStream(mix64(seed_ ^ mix64(tag ^ 0xd1b54a32d192ed03ull)));
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double RandomStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0, 1] so the log argument never vanishes.
    double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform01();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::complex<double> RandomStream::complex_gaussian(double variance) {
    double scale = std::sqrt(variance / 2.0);
    double re = gaussian();
    double im = gaussian();
    return {scale * re, scale * im};
}

bool RandomStream::bernoulli(double p) { return uniform01() < p; }

}  // namespace rdstc
