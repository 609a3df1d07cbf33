#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "wmra/array.hpp"
#include "wmra/channel.hpp"
#include "wmra/rational.hpp"

namespace wmra {

// One intermediate value scheduled for delivery in a slot. Nodes and files
// are 1-based throughout plans and reports. Under the Q = K convention the
// function index equals the intended receiver.
struct IvSpec {
  int function = 0;  // q
  int file = 0;      // n
  int intended = 0;  // receiving node, not among carriers
  // Transmitters holding the value (star in the file's row), restricted to
  // the slot's transmit set, ascending.
  std::vector<int> carriers;
  // Receivers in the slot that can neither decode nor cancel this value
  // locally; the precoder must present a null to each of them. This covers
  // every integer entry of the file's row inside the transmit set except the
  // intended receiver itself, including further occurrences of the same slot
  // index.
  std::vector<int> zero_force;

  friend bool operator==(const IvSpec&, const IvSpec&) = default;
};

// Transmission plan for one channel use: the g nodes whose columns carry the
// slot integer transmit and receive simultaneously; each of them is the
// intended receiver of exactly one item.
struct SlotPlan {
  int slot = 0;
  std::vector<int> tx_set;  // U_s, ascending
  std::vector<int> rx_set;  // R_s = U_s
  std::vector<IvSpec> items;

  friend bool operator==(const SlotPlan&, const SlotPlan&) = default;
};

// One plan per slot in [S]. Requires verify(a) to pass.
std::vector<SlotPlan> plan_slots(const WmrArray& a);

// Dense store of encoded intermediate values: (function, file) -> T complex
// symbols, with a presence mask. Functions and files are 1-based.
class IvStore {
 public:
  IvStore() = default;
  IvStore(int function_count, int file_count, int symbols);

  static IvStore random(int function_count, int file_count, int symbols,
                        std::uint64_t seed);

  int function_count() const { return function_count_; }
  int file_count() const { return file_count_; }
  int symbols() const { return symbols_; }

  bool has(int function, int file) const;
  // Throws missing_iv when the entry is absent.
  std::span<const std::complex<double>> at(int function, int file) const;
  void set(int function, int file, std::span<const std::complex<double>> v);

 private:
  std::size_t index(int function, int file) const;

  int function_count_ = 0;
  int file_count_ = 0;
  int symbols_ = 0;
  std::vector<std::complex<double>> data_;
  std::vector<std::uint8_t> present_;
};

struct PrecoderSettings {
  // Relative bound on |h . alpha| at each zero-force target.
  double zero_force_tol = 1e-10;
  // Relative floor on the effective coefficient at the intended receiver;
  // below it the channel is reported as degenerate (signal_vanished).
  double min_signal = 1e-8;
};

// Unit-norm precoding vector per item, aligned with the item's carriers.
struct PrecodedItem {
  std::vector<std::complex<double>> coefficients;
};

struct PrecodedSlot {
  int slot = 0;
  std::vector<PrecodedItem> items;
};

// Places each item's vector in the null space of the channel rows of its
// zero-force targets (smallest-index right-singular null vector of the
// target-by-carrier matrix). Items without targets transmit from their first
// carrier alone.
PrecodedSlot design_precoders(const SlotPlan& plan, const ChannelMatrix& h,
                              const PrecoderSettings& settings = {});

struct DecodeRecord {
  int slot = 0;
  int receiver = 0;
  int function = 0;  // absolute index (round-shifted when Q > K)
  int file = 0;
  // Relative L2 error of the decoded block against the store's ground truth;
  // -1 when the store has no truth entry to compare with.
  double residual = -1.0;
  double signal_coeff_abs = 0.0;
  std::vector<std::complex<double>> decoded;
};

struct SlotReport {
  int slot = 0;
  std::vector<DecodeRecord> decodes;
};

struct ShuffleReport {
  std::uint64_t seed = 0;
  std::string generator;
  int symbols = 0;
  std::optional<double> snr_db;
  Rational ndt;  // S / (N * K), exact
  double max_residual = 0.0;
  std::vector<SlotReport> slots;  // round-major when rounds > 1
};

struct SimulateOptions {
  // Absent = noiseless. Otherwise AWGN with per-symbol noise variance
  // 10^(-snr_db / 10) against unit transmit power.
  std::optional<double> snr_db;
  // Q / K repetitions of the slot plan; function indices shift by K each
  // round. The store must cover rounds * K functions.
  int rounds = 1;
  // OpenMP over (round, slot) pairs; per-slot results are assembled in slot
  // order, so the report is identical to the serial one.
  bool parallel = true;
};

// Runs the S channel uses against the given channel and store. The decode
// path touches the store only where the grid places a star (carrier reads and
// the receiver-side cancellation); ground truth for residuals is looked up
// per item and skipped when absent.
ShuffleReport simulate_shuffle(const WmrArray& a, const ChannelMatrix& h,
                               const IvStore& ivs,
                               const SimulateOptions& options = {});

// Serial reference for the OpenMP path; bit-identical output.
ShuffleReport simulate_shuffle_serial(const WmrArray& a,
                                      const ChannelMatrix& h,
                                      const IvStore& ivs,
                                      SimulateOptions options = {});

// S / (N * K) for a verified array.
Rational ndt(const WmrArray& a);

// (1 - r/K) / min{2r, K}: the one-shot linear optimum for load r.
Rational optimal_ndt(int node_count, int load);

nlohmann::json shuffle_report_to_json(const ShuffleReport& report,
                                      bool include_decoded = false);

}  // namespace wmra
