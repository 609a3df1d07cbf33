#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace wmra {

// Algorithm tag recorded with every generated matrix; bumping it marks a
// change in the sample stream.
inline constexpr const char* kChannelGenerator = "cn01/mt19937_64-boxmuller/v1";

// K x K complex gains of the full-duplex interference channel, entry
// (receiver, transmitter).
struct ChannelMatrix {
  int node_count = 0;
  std::uint64_t seed = 0;
  std::string generator;
  std::vector<std::complex<double>> gains;  // row-major, rx x tx

  std::complex<double> at(int rx, int tx) const {
    return gains[rx * node_count + tx];
  }
};

// Deterministic i.i.d. circularly-symmetric complex Gaussian entries with
// unit variance. The stream is fully pinned by (seed, generator): uniforms
// come straight from mt19937_64 words, Gaussians via Box-Muller.
ChannelMatrix gen_channel(int node_count, std::uint64_t seed);

// Gains serialize as nested arrays of [re, im] pairs.
nlohmann::json channel_to_json(const ChannelMatrix& h);
ChannelMatrix channel_from_json(const nlohmann::json& j);

}  // namespace wmra
