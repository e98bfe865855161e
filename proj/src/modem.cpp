#include "rdstc/modem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdstc {

namespace {
constexpr double kHalfSqrt2 = 1.0 / std::numbers::sqrt2;
}

const std::array<cdouble, 4>& qam4_points() {
    // Index = (first bit << 1) | second bit.
    static const std::array<cdouble, 4> points = {
        cdouble{+kHalfSqrt2, +kHalfSqrt2},   // 00
        cdouble{-kHalfSqrt2, +kHalfSqrt2},   // 01
        cdouble{+kHalfSqrt2, -kHalfSqrt2},   // 10
        cdouble{-kHalfSqrt2, -kHalfSqrt2},   // 11
    };
    return points;
}

SymbolVec modulate(const BitBlock& bits) {
    if (bits.size() % 2 != 0) throw std::invalid_argument("modulate: bit count must be even");
    SymbolVec out;
    out.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        int index = (bits[i] ? 2 : 0) | (bits[i + 1] ? 1 : 0);
        out.push_back(qam4_points()[static_cast<std::size_t>(index)]);
    }
    return out;
}

cdouble hard_detect(cdouble z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("hard_detect: input not finite");
    // Quadrant decision; boundaries fall toward the positive side.
    double re = z.real() >= 0.0 ? kHalfSqrt2 : -kHalfSqrt2;
    double im = z.imag() >= 0.0 ? kHalfSqrt2 : -kHalfSqrt2;
    return {re, im};
}

BitBlock demodulate(const SymbolVec& symbols) {
    BitBlock out;
    out.reserve(symbols.size() * 2);
    for (cdouble s : symbols) {
        int index = -1;
        for (int i = 0; i < 4; ++i) {
            if (std::abs(s - qam4_points()[static_cast<std::size_t>(i)]) < 1e-9) {
                index = i;
                break;
            }
        }
        if (index < 0) throw std::invalid_argument("demodulate: symbol is not a constellation point");
        out.push_back(static_cast<std::uint8_t>((index >> 1) & 1));
        out.push_back(static_cast<std::uint8_t>(index & 1));
    }
    return out;
}

std::size_t count_bit_errors(const BitBlock& sent, const BitBlock& received) {
    if (sent.size() != received.size())
        throw std::invalid_argument("count_bit_errors: length mismatch");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i)
        if ((sent[i] != 0) != (received[i] != 0)) ++errors;
    return errors;
}

}  // namespace rdstc
