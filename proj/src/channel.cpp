#include "wmra/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "wmra/error.hpp"

namespace wmra {

namespace detail {

// 53-bit uniform in (0, 1]; +1 keeps log() away from zero. mt19937_64's
// output stream is pinned by the standard, so the tag in kChannelGenerator
// fully identifies the samples.
double unit_open(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> standard_complex_gaussian(std::mt19937_64& rng) {
  const double u1 = unit_open(rng);
  const double u2 = unit_open(rng);
  // |h|^2 ~ Exp(1), phase uniform: circularly symmetric with unit variance.
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

ChannelMatrix gen_channel(int node_count, std::uint64_t seed) {
  if (node_count < 1)
    fail(Errc::dimension_mismatch, "node count must be positive");
  ChannelMatrix h;
  h.node_count = node_count;
  h.seed = seed;
  h.generator = kChannelGenerator;
  h.gains.resize(static_cast<std::size_t>(node_count) * node_count);
  std::mt19937_64 rng(seed);
  for (auto& gain : h.gains) gain = detail::standard_complex_gaussian(rng);
  return h;
}

nlohmann::json channel_to_json(const ChannelMatrix& h) {
  nlohmann::json rows = nlohmann::json::array();
  for (int rx = 0; rx < h.node_count; ++rx) {
    nlohmann::json row = nlohmann::json::array();
    for (int tx = 0; tx < h.node_count; ++tx) {
      const auto gain = h.at(rx, tx);
      row.push_back({gain.real(), gain.imag()});
    }
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"K", h.node_count},
                        {"seed", h.seed},
                        {"generator", h.generator},
                        {"H", std::move(rows)}};
}

ChannelMatrix channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("H") || !j["H"].is_array())
    fail(Errc::bad_format, "expected an object with an \"H\" array");
  ChannelMatrix h;
  h.node_count = static_cast<int>(j["H"].size());
  h.seed = j.value("seed", 0ULL);
  h.generator = j.value("generator", std::string("imported"));
  h.gains.reserve(static_cast<std::size_t>(h.node_count) * h.node_count);
  for (const auto& row : j["H"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != h.node_count)
      fail(Errc::bad_format, "\"H\" must be a square matrix");
    for (const auto& pair : row) {
      if (!pair.is_array() || pair.size() != 2)
        fail(Errc::bad_format, "gains must be [re, im] pairs");
      h.gains.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return h;
}

}  // namespace wmra
