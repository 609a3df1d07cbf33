// Acceptance suite: one line per criterion, exit nonzero on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "golden.hpp"
#include "wmra/constructions.hpp"
#include "wmra/engine.hpp"
#include "wmra/epda.hpp"
#include "wmra/shuffle.hpp"
#include "wmra/sweep.hpp"

using wmra::WmrArray;

namespace {

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  bool (*body)(std::string& detail);
};

// ---- 1: golden constructions, character for character ---------------------

bool golden_constructions(std::string& detail) {
  if (wmra::serialize_array_text(wmra::construct_case_a(5, 3), false) !=
      golden::kCaseA53) {
    detail = "case-a (5,3) text differs";
    return false;
  }
  if (wmra::serialize_array_text(wmra::construct_case_b_base(3), false) !=
      golden::kBaseB3) {
    detail = "base array B (t=3) text differs";
    return false;
  }
  if (wmra::serialize_array_text(wmra::construct_case_b(6, 2), false) !=
      golden::kArrayC) {
    detail = "array C (6,2) text differs";
    return false;
  }
  return true;
}

// ---- 2: verification of the goldens plus mutation kill rate ---------------

bool verification_and_mutations(std::string& detail) {
  const std::vector<WmrArray> arrays = {golden::example1(), golden::case_a_53(),
                                        golden::base_b3(), golden::array_c()};
  for (std::size_t idx = 0; idx < arrays.size(); ++idx) {
    if (!wmra::verify(arrays[idx]).passed()) {
      detail = "golden array " + std::to_string(idx + 1) + " failed verify";
      return false;
    }
  }
  std::mt19937_64 rng(0xACCE97);
  for (const WmrArray& a : arrays) {
    for (int trial = 0; trial < 50; ++trial) {
      WmrArray mutant = a;
      const int i = static_cast<int>(rng() % a.file_count);
      const int k = static_cast<int>(rng() % a.node_count);
      const wmra::Entry original = mutant.at(i, k);
      wmra::Entry replacement = original;
      while (replacement == original) {
        const int choice = static_cast<int>(rng() % (a.slot_count + 1));
        replacement = choice == 0 ? wmra::Entry::star()
                                  : wmra::Entry::slot(choice);
      }
      mutant.at(i, k) = replacement;
      if (wmra::verify(mutant).passed()) {
        detail = "mutation at (" + std::to_string(i + 1) + "," +
                 std::to_string(k + 1) + ") slipped through";
        return false;
      }
    }
  }
  return true;
}

// ---- 3: exact delivery-time optimality over the sweeps --------------------

bool ndt_optimality(std::string& detail) {
  for (int K = 1; K <= 24; ++K) {
    for (int r = (K + 1) / 2; r <= K; ++r) {
      const auto value = wmra::ndt(wmra::construct_case_a(K, r));
      if (!(value == wmra::Rational::of(K - r, static_cast<long long>(K) * K))) {
        detail = "case-a ndt mismatch at K=" + std::to_string(K) +
                 " r=" + std::to_string(r);
        return false;
      }
      if (!(value == wmra::optimal_ndt(K, r))) {
        detail = "case-a misses the optimum at K=" + std::to_string(K) +
                 " r=" + std::to_string(r);
        return false;
      }
    }
  }
  for (int t = 2; t <= 8; ++t) {
    for (int r = 1; r <= 6; ++r) {
      const int K = t * r;
      const auto value = wmra::ndt(wmra::construct_case_b(K, r));
      if (!(value ==
            wmra::Rational::of(K - r, 2LL * r * K))) {
        detail = "case-b ndt mismatch at t=" + std::to_string(t) +
                 " r=" + std::to_string(r);
        return false;
      }
      if (!(value == wmra::optimal_ndt(K, r))) {
        detail = "case-b misses the optimum at t=" + std::to_string(t) +
                 " r=" + std::to_string(r);
        return false;
      }
    }
  }
  if (!(wmra::ndt(golden::case_a_53()) == wmra::Rational::of(2, 25))) {
    detail = "(5,3) delivery time is not 2/25";
    return false;
  }
  if (!(wmra::ndt(golden::array_c()) == wmra::Rational::of(1, 6))) {
    detail = "(6,2) delivery time is not 1/6";
    return false;
  }
  return true;
}

// ---- 4: shuffle decodability and zero-forcing over 100 seeds --------------

bool shuffle_decodability(std::string& detail) {
  const WmrArray arrays[] = {golden::case_a_53(), golden::array_c()};
  for (const WmrArray& a : arrays) {
    const auto plans = wmra::plan_slots(a);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto h = wmra::gen_channel(a.node_count, seed);
      // zero-forced coefficients, checked directly against the channel
      for (std::size_t si = 0; si < plans.size(); ++si) {
        const auto coded = wmra::design_precoders(plans[si], h);
        for (std::size_t idx = 0; idx < plans[si].items.size(); ++idx) {
          const auto& item = plans[si].items[idx];
          const auto& alpha = coded.items[idx].coefficients;
          for (const int target : item.zero_force) {
            std::complex<double> leak = 0.0;
            double hnorm2 = 0.0, anorm2 = 0.0;
            for (std::size_t c = 0; c < item.carriers.size(); ++c) {
              const auto gain = h.at(target - 1, item.carriers[c] - 1);
              leak += gain * alpha[c];
              hnorm2 += std::norm(gain);
              anorm2 += std::norm(alpha[c]);
            }
            if (std::abs(leak) >
                1e-10 * std::max(std::sqrt(hnorm2 * anorm2), 1e-300)) {
              detail = "zero-forcing leak " + std::to_string(std::abs(leak)) +
                       " at seed " + std::to_string(seed);
              return false;
            }
          }
        }
      }
      // noiseless decode within 1e-9 for every receiver in every slot
      const auto ivs = wmra::IvStore::random(a.node_count, a.file_count, 8,
                                             seed + 10000);
      const auto report = wmra::simulate_shuffle(a, h, ivs);
      std::size_t records = 0;
      for (const auto& slot : report.slots) {
        for (const auto& record : slot.decodes) {
          ++records;
          if (!(record.residual >= 0.0) || record.residual > 1e-9) {
            detail = "decode residual " + std::to_string(record.residual) +
                     " at seed " + std::to_string(seed);
            return false;
          }
        }
      }
      if (records != plans.size() * a.multiplicity()) {
        detail = "missing decode records at seed " + std::to_string(seed);
        return false;
      }
    }
  }
  // the worked orthogonality relation: alpha_{{345},2,5} perpendicular to
  // h_{1,{345}} in slot 1 of the (5,3) array
  const WmrArray a = golden::case_a_53();
  const auto plans = wmra::plan_slots(a);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto h = wmra::gen_channel(5, seed);
    const auto coded = wmra::design_precoders(plans[0], h);
    bool found = false;
    for (std::size_t idx = 0; idx < plans[0].items.size(); ++idx) {
      const auto& item = plans[0].items[idx];
      if (item.function != 2 || item.file != 5) continue;
      found = true;
      if (item.carriers != std::vector<int>{3, 4, 5} ||
          item.zero_force != std::vector<int>{1}) {
        detail = "item (2,5) has the wrong carrier or null sets";
        return false;
      }
      std::complex<double> dot = 0.0;
      for (std::size_t c = 0; c < item.carriers.size(); ++c)
        dot += h.at(0, item.carriers[c] - 1) *
               coded.items[idx].coefficients[c];
      if (std::abs(dot) > 1e-10) {
        detail = "alpha_{345,2,5} not orthogonal to h_{1,{345}} at seed " +
                 std::to_string(seed);
        return false;
      }
    }
    if (!found) {
      detail = "slot 1 lacks item (2,5)";
      return false;
    }
  }
  return true;
}

// ---- 5: one-shot coverage over the criterion-3 sweep ----------------------

bool one_shot_coverage(std::string& detail) {
  std::vector<WmrArray> arrays;
  for (int K = 1; K <= 24; ++K)
    for (int r = (K + 1) / 2; r <= K; ++r)
      arrays.push_back(wmra::construct_case_a(K, r));
  for (int t = 2; t <= 8; ++t)
    for (int r = 1; r <= 6; ++r)
      arrays.push_back(wmra::construct_case_b(t * r, r));

  for (const WmrArray& a : arrays) {
    std::map<std::pair<int, int>, int> delivered;
    for (const auto& plan : wmra::plan_slots(a))
      for (const auto& item : plan.items)
        ++delivered[{item.function, item.file}];
    std::set<std::pair<int, int>> missing;
    for (int i = 0; i < a.file_count; ++i)
      for (int k = 0; k < a.node_count; ++k)
        if (a.at(i, k).is_slot()) missing.insert({k + 1, i + 1});
    if (delivered.size() != missing.size()) {
      detail = "coverage size mismatch at K=" + std::to_string(a.node_count) +
               " r=" + std::to_string(a.load);
      return false;
    }
    for (const auto& [key, count] : delivered) {
      if (count != 1 || missing.count(key) != 1) {
        detail = "iv (" + std::to_string(key.first) + "," +
                 std::to_string(key.second) + ") delivered " +
                 std::to_string(count) + " times";
        return false;
      }
    }
  }
  return true;
}

// ---- 6: end-to-end MapReduce against the centralized oracle ---------------

bool end_to_end_mapreduce(std::string& detail) {
  const WmrArray arrays[] = {golden::case_a_53(), golden::array_c()};
  const char* jobs[] = {"keyword-count", "checksum"};
  for (const WmrArray& a : arrays) {
    for (const char* name : jobs) {
      const wmra::Job job = wmra::make_builtin_job(name, a.node_count);
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto files =
            wmra::generate_corpus(a.file_count, seed * 37, 50, a.node_count);
        const auto reference = wmra::run_centralized(job, files);
        const auto result = wmra::run_distributed(a, job, files, seed);
        for (const auto& output : result.outputs) {
          const double expected = reference[output.function - 1].value;
          const bool ok =
              job.integer_valued
                  ? output.value == expected
                  : std::abs(output.value - expected) <=
                        1e-9 * std::max(std::abs(expected), 1e-300);
          if (!ok) {
            detail = std::string(name) + " node " +
                     std::to_string(output.node) + " got " +
                     std::to_string(output.value) + ", oracle " +
                     std::to_string(expected) + " (seed " +
                     std::to_string(seed) + ")";
            return false;
          }
        }
      }
    }
  }
  return true;
}

// ---- 7: EPDA conversion and the corollary dimension sweep -----------------

bool epda_conversion(std::string& detail) {
  wmra::Epda e;
  e.node_count = 6;
  e.load = 2;
  e.file_count = 3;
  e.column_stars = 1;
  e.slot_count = 3;
  e.regularity = 4;
  e.grid = golden::array_c().grid;
  if (!wmra::verify_epda(e).passed()) {
    detail = "C does not verify as a 4-regular (6,2,3,1,3) EPDA";
    return false;
  }
  const WmrArray converted = wmra::wmra_from_epda(e);
  if (!(converted == golden::array_c()) || !wmra::verify(converted).passed()) {
    detail = "conversion does not reproduce C";
    return false;
  }
  for (int half = 1; half <= 32; ++half) {
    const int K = 2 * half;
    for (int r = 1; 2 * r <= K; ++r) {
      const auto p = wmra::corollary1_params(K, r);
      const long long g = std::gcd(static_cast<long long>(K),
                                   static_cast<long long>(r));
      if (2LL * K * r % (g * g) != 0 ||
          p.file_count != 2LL * K * r / (g * g)) {
        detail = "N not integral at K=" + std::to_string(K) +
                 " r=" + std::to_string(r);
        return false;
      }
      if (p.file_count * (K - r) % (2 * r) != 0 ||
          p.slot_count != p.file_count * (K - r) / (2 * r)) {
        detail = "S not integral at K=" + std::to_string(K) +
                 " r=" + std::to_string(r);
        return false;
      }
      if (!(p.delivery_time == wmra::Rational::of(K - r, 2LL * r * K))) {
        detail = "L mismatch at K=" + std::to_string(K) +
                 " r=" + std::to_string(r);
        return false;
      }
    }
  }
  return true;
}

// ---- 8: file-count advantage over the large-library baseline --------------

bool file_count_advantage(std::string& detail) {
  const auto rows = wmra::sweep_rows(6);
  bool saw_53 = false, saw_62 = false;
  for (const auto& row : rows) {
    if (row.node_count == 5 && row.load == 3) {
      saw_53 = true;
      if (row.file_count != 5 || row.baseline_files != 10) {
        detail = "(5,3) row should read N=5 against baseline 10";
        return false;
      }
    }
    if (row.node_count == 6 && row.load == 2) {
      saw_62 = true;
      if (row.file_count != 3 || row.baseline_files != 15) {
        detail = "(6,2) row should read N=3 against baseline 15";
        return false;
      }
    }
  }
  if (!saw_53 || !saw_62) {
    detail = "sweep is missing the (5,3) or (6,2) row";
    return false;
  }
  // documented baseline values: 10 = C(5,3); 45 = C(3,1) * C(6,2), the
  // headline file-count requirement at (6,2)
  if (wmra::binomial(5, 3) != 10) {
    detail = "C(5,3) != 10";
    return false;
  }
  if (wmra::binomial(6 - 2 - 1, 2 - 1) * wmra::binomial(6, 2) != 45) {
    detail = "C(3,1) * C(6,2) != 45";
    return false;
  }
  return true;
}

const Criterion kCriteria[] = {
    {1, "golden arrays reproduced character for character", 1.0,
     golden_constructions},
    {2, "goldens verify; 50 random mutations each all fail", 5.0,
     verification_and_mutations},
    {3, "delivery times equal the optimum as exact rationals", 5.0,
     ndt_optimality},
    {4, "100-seed noiseless decodability and zero-forcing", 30.0,
     shuffle_decodability},
    {5, "slot plans deliver every missing value exactly once", 10.0,
     one_shot_coverage},
    {6, "50-seed end-to-end MapReduce equals the oracle", 60.0,
     end_to_end_mapreduce},
    {7, "EPDA conversion and corollary dimensions", 5.0, epda_conversion},
    {8, "file-count advantage rows and baselines", 1.0, file_count_advantage},
};

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > criterion.budget_seconds) {
      ok = false;
      detail = "exceeded " + std::to_string(criterion.budget_seconds) +
               " s budget (" + std::to_string(elapsed) + " s)";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL",
                criterion.number, criterion.title, elapsed,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
