#ifndef RDSTC_RNG_HPP
#define RDSTC_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace rdstc {

// SplitMix64 finalizer; used for seed mixing and child-stream derivation.
std::uint64_t mix64(std::uint64_t x);

// Seeded random stream. Each consumer owns its stream; independent streams
// are derived with child() so that concurrent trials never share state.
// Gaussian draws use an explicit Box-Muller so the byte stream is fixed by
// the seed alone, not by the standard library's distribution internals.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    // Independent stream derived from this stream's seed and a tag.
    RandomStream child(std::uint64_t tag) const;

    std::uint64_t next_u64();
    double uniform01();                        // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();                         // N(0, 1)
    std::complex<double> complex_gaussian(double variance);  // CN(0, variance)
    bool bernoulli(double p);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace rdstc

#endif  // RDSTC_RNG_HPP
