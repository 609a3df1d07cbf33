#include "wmra/shuffle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "rng.hpp"

namespace wmra {

std::vector<SlotPlan> plan_slots(const WmrArray& a) {
  if (!verify(a).passed())
    fail(Errc::invalid_array, "array fails verification; cannot plan slots");
  const int S = a.slot_count;
  std::vector<SlotPlan> plans(S);
  // occurrences of each slot, row-major
  std::vector<std::vector<std::pair<int, int>>> where(S + 1);
  for (int i = 0; i < a.file_count; ++i)
    for (int k = 0; k < a.node_count; ++k) {
      const int s = a.at(i, k).slot_index();
      if (s >= 1) where[s].emplace_back(i, k);
    }
  for (int s = 1; s <= S; ++s) {
    SlotPlan& plan = plans[s - 1];
    plan.slot = s;
    for (const auto& [i, k] : where[s]) plan.tx_set.push_back(k + 1);
    std::sort(plan.tx_set.begin(), plan.tx_set.end());
    plan.rx_set = plan.tx_set;
    for (const auto& [i, k] : where[s]) {
      IvSpec item;
      item.function = k + 1;
      item.file = i + 1;
      item.intended = k + 1;
      // Within the transmit set, the file's row splits each node into a
      // carrier (star: has the value) or a zero-force target (integer and
      // not the intended receiver: cannot cancel the term locally). Stars
      // outside the transmit set stay silent this slot.
      for (const int node : plan.tx_set) {
        const Entry e = a.at(i, node - 1);
        if (e.is_star()) item.carriers.push_back(node);
        else if (node != item.intended) item.zero_force.push_back(node);
      }
      plan.items.push_back(std::move(item));
    }
    std::sort(plan.items.begin(), plan.items.end(),
              [](const IvSpec& x, const IvSpec& y) {
                return x.intended < y.intended;
              });
  }
  return plans;
}

IvStore::IvStore(int function_count, int file_count, int symbols)
    : function_count_(function_count),
      file_count_(file_count),
      symbols_(symbols) {
  if (function_count < 0 || file_count < 0 || symbols < 1)
    fail(Errc::dimension_mismatch, "bad store dimensions");
  const std::size_t cells =
      static_cast<std::size_t>(function_count) * file_count;
  data_.assign(cells * symbols, {});
  present_.assign(cells, 0);
}

IvStore IvStore::random(int function_count, int file_count, int symbols,
                        std::uint64_t seed) {
  IvStore store(function_count, file_count, symbols);
  std::mt19937_64 rng(seed);
  for (auto& v : store.data_) v = detail::standard_complex_gaussian(rng);
  std::fill(store.present_.begin(), store.present_.end(), 1);
  return store;
}

std::size_t IvStore::index(int function, int file) const {
  if (function < 1 || function > function_count_ || file < 1 ||
      file > file_count_)
    fail(Errc::missing_iv, "iv (" + std::to_string(function) + ", " +
                               std::to_string(file) + ") is outside the store");
  return static_cast<std::size_t>(function - 1) * file_count_ + (file - 1);
}

bool IvStore::has(int function, int file) const {
  if (function < 1 || function > function_count_ || file < 1 ||
      file > file_count_)
    return false;
  return present_[static_cast<std::size_t>(function - 1) * file_count_ +
                  (file - 1)] != 0;
}

std::span<const std::complex<double>> IvStore::at(int function,
                                                  int file) const {
  const std::size_t cell = index(function, file);
  if (!present_[cell])
    fail(Errc::missing_iv, "iv (" + std::to_string(function) + ", " +
                               std::to_string(file) + ") is absent");
  return {data_.data() + cell * symbols_, static_cast<std::size_t>(symbols_)};
}

void IvStore::set(int function, int file,
                  std::span<const std::complex<double>> v) {
  if (static_cast<int>(v.size()) != symbols_)
    fail(Errc::dimension_mismatch, "iv block must have " +
                                       std::to_string(symbols_) + " symbols");
  const std::size_t cell = index(function, file);
  std::copy(v.begin(), v.end(), data_.begin() + cell * symbols_);
  present_[cell] = 1;
}

PrecodedSlot design_precoders(const SlotPlan& plan, const ChannelMatrix& h,
                              const PrecoderSettings& settings) {
  PrecodedSlot out;
  out.slot = plan.slot;
  out.items.reserve(plan.items.size());
  for (const IvSpec& item : plan.items) {
    const int carriers = static_cast<int>(item.carriers.size());
    const int targets = static_cast<int>(item.zero_force.size());
    if (carriers == 0)
      fail(Errc::null_space_empty,
           "no carriers for iv (" + std::to_string(item.function) + ", " +
               std::to_string(item.file) + ") in slot " +
               std::to_string(plan.slot));
    if (targets >= carriers)
      fail(Errc::null_space_empty,
           "slot " + std::to_string(plan.slot) + ": " +
               std::to_string(targets) + " zero-force targets against " +
               std::to_string(carriers) + " carriers");

    Eigen::VectorXcd alpha;
    if (targets == 0) {
      // no constraints: first carrier transmits alone
      alpha = Eigen::VectorXcd::Zero(carriers);
      alpha(0) = 1.0;
    } else {
      Eigen::MatrixXcd constraint(targets, carriers);
      for (int z = 0; z < targets; ++z)
        for (int c = 0; c < carriers; ++c)
          constraint(z, c) = h.at(item.zero_force[z] - 1, item.carriers[c] - 1);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraint, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double tol = sv(0) * std::numeric_limits<double>::epsilon() *
                         std::max(targets, carriers);
      int rank = 0;
      while (rank < sv.size() && sv(rank) > tol) ++rank;
      if (rank >= carriers)
        fail(Errc::null_space_empty,
             "constraint matrix has full column rank in slot " +
                 std::to_string(plan.slot) + " (seed " +
                 std::to_string(h.seed) + ")");
      // smallest-index null-space basis vector; already unit norm
      alpha = svd.matrixV().col(rank);

      for (int z = 0; z < targets; ++z) {
        const std::complex<double> leak =
            (constraint.row(z) * alpha).value();
        const double scale = constraint.row(z).norm();
        if (std::abs(leak) > settings.zero_force_tol * std::max(scale, 1e-300))
          fail(Errc::null_space_empty,
               "zero-forcing residual " + std::to_string(std::abs(leak)) +
                   " above tolerance in slot " + std::to_string(plan.slot) +
                   " (seed " + std::to_string(h.seed) + ")");
      }
    }

    std::complex<double> effective = 0.0;
    double scale = 0.0;
    for (int c = 0; c < carriers; ++c) {
      const auto gain = h.at(item.intended - 1, item.carriers[c] - 1);
      effective += gain * alpha(c);
      scale += std::norm(gain);
    }
    scale = std::sqrt(scale);
    if (std::abs(effective) < settings.min_signal * std::max(scale, 1e-300))
      fail(Errc::signal_vanished,
           "effective coefficient " + std::to_string(std::abs(effective)) +
               " at node " + std::to_string(item.intended) + " in slot " +
               std::to_string(plan.slot) + " (seed " +
               std::to_string(h.seed) + ")");

    PrecodedItem coded;
    coded.coefficients.assign(alpha.data(), alpha.data() + carriers);
    out.items.push_back(std::move(coded));
  }
  return out;
}

namespace {

struct SlotTask {
  int round = 0;
  int slot_index = 0;  // into the plan vector
};

// One channel use: form the transmit blocks, superpose them through the
// channel, then per receiver cancel the locally known terms and divide by
// the effective coefficient. Store reads stay on star cells of the grid by
// construction; ground truth is only consulted for the residual, and only
// when present.
SlotReport simulate_slot(const WmrArray& a, const SlotPlan& plan,
                         const PrecodedSlot& coded, const ChannelMatrix& h,
                         const IvStore& ivs, int round, double noise_sigma) {
  const int T = ivs.symbols();
  const int K = a.node_count;
  const int members = static_cast<int>(plan.tx_set.size());
  std::vector<int> member_of(K + 1, -1);
  for (int j = 0; j < members; ++j) member_of[plan.tx_set[j]] = j;

  // x_m(s) per transmitting node
  std::vector<std::vector<std::complex<double>>> tx(
      members, std::vector<std::complex<double>>(T, {0.0, 0.0}));
  for (std::size_t idx = 0; idx < plan.items.size(); ++idx) {
    const IvSpec& item = plan.items[idx];
    const auto& alpha = coded.items[idx].coefficients;
    const int function = item.function + round * K;
    const auto value = ivs.at(function, item.file);
    for (std::size_t c = 0; c < item.carriers.size(); ++c) {
      auto& signal = tx[member_of[item.carriers[c]]];
      for (int t = 0; t < T; ++t) signal[t] += alpha[c] * value[t];
    }
  }

  SlotReport report;
  report.slot = plan.slot;
  report.decodes.reserve(plan.rx_set.size());
  std::vector<std::complex<double>> received(T);
  for (const int rx : plan.rx_set) {
    // y_rx(s)
    std::fill(received.begin(), received.end(), std::complex<double>{});
    for (int j = 0; j < members; ++j) {
      const auto gain = h.at(rx - 1, plan.tx_set[j] - 1);
      for (int t = 0; t < T; ++t) received[t] += gain * tx[j][t];
    }
    if (noise_sigma > 0.0) {
      std::uint64_t ns = h.seed;
      ns = detail::splitmix64(ns ^ static_cast<std::uint64_t>(round));
      ns = detail::splitmix64(ns ^ static_cast<std::uint64_t>(plan.slot));
      ns = detail::splitmix64(ns ^ static_cast<std::uint64_t>(rx));
      std::mt19937_64 rng(ns);
      for (int t = 0; t < T; ++t)
        received[t] += noise_sigma * detail::standard_complex_gaussian(rng);
    }

    const IvSpec* desired = nullptr;
    std::complex<double> desired_coeff = 0.0;
    for (std::size_t idx = 0; idx < plan.items.size(); ++idx) {
      const IvSpec& item = plan.items[idx];
      std::complex<double> coeff = 0.0;
      for (std::size_t c = 0; c < item.carriers.size(); ++c)
        coeff += h.at(rx - 1, item.carriers[c] - 1) *
                 coded.items[idx].coefficients[c];
      if (item.intended == rx) {
        desired = &item;
        desired_coeff = coeff;
        continue;
      }
      // cancel only what the map phase put on this node
      if (a.at(item.file - 1, rx - 1).is_star()) {
        const auto value = ivs.at(item.function + round * K, item.file);
        for (int t = 0; t < T; ++t) received[t] -= coeff * value[t];
      }
      // remaining terms were zero-forced at this receiver
    }
    if (desired == nullptr)
      fail(Errc::invalid_array, "receiver " + std::to_string(rx) +
                                    " has no item in slot " +
                                    std::to_string(plan.slot));

    DecodeRecord record;
    record.slot = plan.slot;
    record.receiver = rx;
    record.function = desired->function + round * K;
    record.file = desired->file;
    record.signal_coeff_abs = std::abs(desired_coeff);
    record.decoded.resize(T);
    for (int t = 0; t < T; ++t) record.decoded[t] = received[t] / desired_coeff;

    if (ivs.has(record.function, record.file)) {
      const auto truth = ivs.at(record.function, record.file);
      double err2 = 0.0, ref2 = 0.0;
      for (int t = 0; t < T; ++t) {
        err2 += std::norm(record.decoded[t] - truth[t]);
        ref2 += std::norm(truth[t]);
      }
      record.residual = std::sqrt(err2) / std::max(std::sqrt(ref2), 1e-300);
    }
    report.decodes.push_back(std::move(record));
  }
  return report;
}

ShuffleReport simulate_impl(const WmrArray& a, const ChannelMatrix& h,
                            const IvStore& ivs,
                            const SimulateOptions& options) {
  if (h.node_count != a.node_count)
    fail(Errc::dimension_mismatch,
         "channel is " + std::to_string(h.node_count) + "x" +
             std::to_string(h.node_count) + " but the array has K = " +
             std::to_string(a.node_count));
  if (options.rounds < 1)
    fail(Errc::dimension_mismatch, "rounds must be >= 1");
  if (ivs.function_count() != options.rounds * a.node_count)
    fail(Errc::dimension_mismatch,
         "store covers " + std::to_string(ivs.function_count()) +
             " functions, need rounds * K = " +
             std::to_string(options.rounds * a.node_count));
  if (ivs.file_count() != a.file_count)
    fail(Errc::dimension_mismatch,
         "store covers " + std::to_string(ivs.file_count()) +
             " files, need N = " + std::to_string(a.file_count));

  const auto plans = plan_slots(a);
  const int S = static_cast<int>(plans.size());
  const double noise_sigma =
      options.snr_db ? std::sqrt(std::pow(10.0, -*options.snr_db / 10.0)) : 0.0;

  ShuffleReport report;
  report.seed = h.seed;
  report.generator = h.generator;
  report.symbols = ivs.symbols();
  report.snr_db = options.snr_db;
  report.ndt = Rational::of(
      a.slot_count, static_cast<long long>(a.file_count) * a.node_count);

  std::vector<PrecodedSlot> coded(S);
  std::vector<SlotReport> slot_reports(
      static_cast<std::size_t>(S) * options.rounds);

  std::atomic<bool> failed{false};
  std::exception_ptr first_error;

  auto guarded = [&](auto&& body) {
    try {
      body();
    } catch (...) {
#pragma omp critical(wmra_simulate_error)
      {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  };

  const int tasks = S * options.rounds;
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int si = 0; si < S; ++si) {
      if (failed.load(std::memory_order_relaxed)) continue;
      guarded([&] { coded[si] = design_precoders(plans[si], h); });
    }
    if (first_error) std::rethrow_exception(first_error);
#pragma omp parallel for schedule(dynamic)
    for (int task = 0; task < tasks; ++task) {
      if (failed.load(std::memory_order_relaxed)) continue;
      guarded([&] {
        const int round = task / S;
        const int si = task % S;
        slot_reports[task] =
            simulate_slot(a, plans[si], coded[si], h, ivs, round, noise_sigma);
      });
    }
    if (first_error) std::rethrow_exception(first_error);
  } else {
    for (int si = 0; si < S; ++si) coded[si] = design_precoders(plans[si], h);
    for (int task = 0; task < tasks; ++task) {
      const int round = task / S;
      const int si = task % S;
      slot_reports[task] =
          simulate_slot(a, plans[si], coded[si], h, ivs, round, noise_sigma);
    }
  }

  report.max_residual = 0.0;
  for (const auto& slot : slot_reports)
    for (const auto& record : slot.decodes)
      if (record.residual >= 0.0)
        report.max_residual = std::max(report.max_residual, record.residual);
  report.slots = std::move(slot_reports);
  return report;
}

}  // namespace

ShuffleReport simulate_shuffle(const WmrArray& a, const ChannelMatrix& h,
                               const IvStore& ivs,
                               const SimulateOptions& options) {
  return simulate_impl(a, h, ivs, options);
}

ShuffleReport simulate_shuffle_serial(const WmrArray& a,
                                      const ChannelMatrix& h,
                                      const IvStore& ivs,
                                      SimulateOptions options) {
  options.parallel = false;
  return simulate_impl(a, h, ivs, options);
}

Rational ndt(const WmrArray& a) {
  if (!verify(a).passed())
    fail(Errc::invalid_array, "array fails verification");
  return Rational::of(a.slot_count,
                      static_cast<long long>(a.file_count) * a.node_count);
}

Rational optimal_ndt(int node_count, int load) {
  if (node_count < 1 || load < 1 || load > node_count)
    fail(Errc::invalid_load,
         "need 1 <= r <= K, got K=" + std::to_string(node_count) + " r=" +
             std::to_string(load));
  const long long g = std::min(2 * load, node_count);
  return Rational::of(node_count - load,
                      static_cast<long long>(node_count) * g);
}

nlohmann::json shuffle_report_to_json(const ShuffleReport& report,
                                      bool include_decoded) {
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& slot : report.slots) {
    nlohmann::json decodes = nlohmann::json::array();
    for (const auto& record : slot.decodes) {
      nlohmann::json d{
          {"receiver", record.receiver},
          {"iv", {{"q", record.function}, {"n", record.file}}},
          {"residual", record.residual},
          {"signal_coeff_abs", record.signal_coeff_abs}};
      if (include_decoded) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& v : record.decoded)
          values.push_back({v.real(), v.imag()});
        d["decoded"] = std::move(values);
      }
      decodes.push_back(std::move(d));
    }
    slots.push_back(
        nlohmann::json{{"slot", slot.slot}, {"decodes", std::move(decodes)}});
  }
  nlohmann::json out{
      {"seed", report.seed},
      {"generator", report.generator},
      {"T", report.symbols},
      {"ndt", {{"num", report.ndt.num}, {"den", report.ndt.den}}},
      {"max_residual", report.max_residual},
      {"slots", std::move(slots)}};
  if (report.snr_db) out["snr_db"] = *report.snr_db;
  else out["snr_db"] = nullptr;
  return out;
}

}  // namespace wmra
