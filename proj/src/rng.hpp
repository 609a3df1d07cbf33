#pragma once

// Internal deterministic sampling helpers (defined in channel.cpp).

#include <complex>
#include <cstdint>
#include <random>

namespace wmra::detail {

double unit_open(std::mt19937_64& rng);
std::complex<double> standard_complex_gaussian(std::mt19937_64& rng);
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wmra::detail
