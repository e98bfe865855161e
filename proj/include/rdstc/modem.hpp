#ifndef RDSTC_MODEM_HPP
#define RDSTC_MODEM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "rdstc/complex_mat.hpp"

namespace rdstc {

using BitBlock = std::vector<std::uint8_t>;
using SymbolVec = std::vector<cdouble>;

// Unit-energy 4-QAM (QPSK) alphabet, Gray labelled:
//   00 -> (+1+j)/sqrt(2)   01 -> (-1+j)/sqrt(2)
//   11 -> (-1-j)/sqrt(2)   10 -> (+1-j)/sqrt(2)
// First bit selects the imaginary sign, second bit the real sign.
const std::array<cdouble, 4>& qam4_points();

// Average symbol energy of the alphabet (sigma_s^2).
inline constexpr double kSymbolPower = 1.0;

SymbolVec modulate(const BitBlock& bits);

// Nearest constellation point; ties resolve toward positive real, then
// positive imaginary.
cdouble hard_detect(cdouble z);

// Inverse of modulate on exact constellation points.
BitBlock demodulate(const SymbolVec& symbols);

std::size_t count_bit_errors(const BitBlock& sent, const BitBlock& received);

}  // namespace rdstc

#endif  // RDSTC_MODEM_HPP
