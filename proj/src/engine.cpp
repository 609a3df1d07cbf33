#include "wmra/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "rng.hpp"

namespace wmra {

Job make_keyword_count_job(std::vector<std::string> keywords, int iv_symbols) {
  Job job;
  job.name = "keyword-count";
  job.function_count = static_cast<int>(keywords.size());
  job.iv_symbols = iv_symbols;
  job.integer_valued = true;
  job.map = [keywords, iv_symbols](int q, const std::string& file) {
    std::vector<double> iv(iv_symbols, 0.0);
    const std::string& keyword = keywords[q - 1];
    std::istringstream in(file);
    std::string token;
    long long count = 0;
    while (in >> token)
      if (token == keyword) ++count;
    iv[0] = static_cast<double>(count);
    return iv;
  };
  job.reduce = [](int, const std::vector<std::vector<double>>& per_file) {
    double total = 0.0;
    for (const auto& iv : per_file) total += iv[0];
    return static_cast<double>(std::llround(total));
  };
  return job;
}

Job make_checksum_job(int function_count, int iv_symbols) {
  Job job;
  job.name = "checksum";
  job.function_count = function_count;
  job.iv_symbols = iv_symbols;
  job.integer_valued = false;
  job.map = [iv_symbols](int q, const std::string& file) {
    // keyed integer hash, exact in doubles; byte j lands in component
    // j mod iv_symbols so the whole vector participates in the shuffle
    std::vector<double> iv(iv_symbols, 0.0);
    for (std::size_t j = 0; j < file.size(); ++j) {
      const auto byte = static_cast<unsigned char>(file[j]);
      const long long weight = q + static_cast<long long>(j % 13);
      iv[j % iv_symbols] += static_cast<double>(weight * byte);
    }
    return iv;
  };
  job.reduce = [](int, const std::vector<std::vector<double>>& per_file) {
    double total = 0.0;
    for (const auto& iv : per_file)
      for (const double v : iv) total += v;
    return total;
  };
  return job;
}

std::vector<std::string> builtin_job_names() {
  return {"keyword-count", "checksum"};
}

Job make_builtin_job(const std::string& name, int function_count,
                     int iv_symbols) {
  if (name == "keyword-count") {
    std::vector<std::string> keywords;
    keywords.reserve(function_count);
    for (int q = 0; q < function_count; ++q)
      keywords.push_back("w" + std::to_string(q));
    return make_keyword_count_job(std::move(keywords), iv_symbols);
  }
  if (name == "checksum") return make_checksum_job(function_count, iv_symbols);
  std::string catalog;
  for (const auto& known : builtin_job_names()) {
    if (!catalog.empty()) catalog += ", ";
    catalog += known;
  }
  fail(Errc::unknown_job, "'" + name + "'; built-in jobs: " + catalog);
}

namespace {

void check_job_dimensions(const WmrArray& a, const Job& job,
                          const std::vector<std::string>& files) {
  if (static_cast<int>(files.size()) != a.file_count)
    fail(Errc::file_count_mismatch,
         "got " + std::to_string(files.size()) + " files, array has N = " +
             std::to_string(a.file_count));
  if (job.function_count < 1 || job.function_count % a.node_count != 0)
    fail(Errc::dimension_mismatch,
         "job has Q = " + std::to_string(job.function_count) +
             " functions, need a positive multiple of K = " +
             std::to_string(a.node_count));
}

std::vector<double> mapped_iv(const Job& job, int function,
                              const std::string& file) {
  std::vector<double> iv = job.map(function, file);
  if (static_cast<int>(iv.size()) != job.iv_symbols)
    fail(Errc::dimension_mismatch,
         "map output has " + std::to_string(iv.size()) + " components, job declares " +
             std::to_string(job.iv_symbols));
  return iv;
}

}  // namespace

std::vector<IvStore> run_map(const WmrArray& a, const Job& job,
                             const std::vector<std::string>& files,
                             bool parallel) {
  check_job_dimensions(a, job, files);
  const int Q = job.function_count;
  std::vector<IvStore> stores(a.node_count);
  for (auto& store : stores)
    store = IvStore(Q, a.file_count, job.iv_symbols);

  // node map computations are independent; exceptions from user map code are
  // collected and rethrown after the region
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < a.node_count; ++k) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      std::vector<std::complex<double>> block(job.iv_symbols);
      for (int n = 0; n < a.file_count; ++n) {
        if (!a.at(n, k).is_star()) continue;
        for (int q = 1; q <= Q; ++q) {
          const std::vector<double> iv = mapped_iv(job, q, files[n]);
          for (int t = 0; t < job.iv_symbols; ++t) block[t] = {iv[t], 0.0};
          stores[k].set(q, n + 1, block);
        }
      }
    } catch (...) {
#pragma omp critical(wmra_run_map_error)
      {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return stores;
}

std::vector<CentralOutput> run_centralized(
    const Job& job, const std::vector<std::string>& files) {
  std::vector<CentralOutput> outputs;
  outputs.reserve(job.function_count);
  for (int q = 1; q <= job.function_count; ++q) {
    std::vector<std::vector<double>> per_file;
    per_file.reserve(files.size());
    for (const auto& file : files) per_file.push_back(mapped_iv(job, q, file));
    outputs.push_back({q, job.reduce(q, per_file)});
  }
  return outputs;
}

RunResult run_distributed(const WmrArray& a, const Job& job,
                          const std::vector<std::string>& files,
                          std::uint64_t seed, const SimulateOptions& options) {
  check_job_dimensions(a, job, files);
  const int K = a.node_count;
  const int Q = job.function_count;

  std::vector<IvStore> stores = run_map(a, job, files, options.parallel);

  // Transmit-side view of the mapped values: each entry comes from its
  // lowest-index mapper. Receivers' cancellations read the same values their
  // own map phase produced (map is deterministic per (q, file)).
  IvStore mapped(Q, a.file_count, job.iv_symbols);
  for (int n = 1; n <= a.file_count; ++n) {
    int mapper = -1;
    for (int k = 0; k < K; ++k)
      if (a.at(n - 1, k).is_star()) {
        mapper = k;
        break;
      }
    if (mapper < 0)
      fail(Errc::invalid_array,
           "file " + std::to_string(n) + " is mapped by no node");
    for (int q = 1; q <= Q; ++q) mapped.set(q, n, stores[mapper].at(q, n));
  }

  SimulateOptions sim = options;
  sim.rounds = Q / K;
  const ChannelMatrix h = gen_channel(K, seed);
  ShuffleReport shuffle = simulate_shuffle(a, h, mapped, sim);

  // Decoded receptions flow into the receiving node's store; reduce reads
  // nothing else, so a delivery gap surfaces as missing_iv.
  for (const auto& slot : shuffle.slots)
    for (const auto& record : slot.decodes)
      stores[record.receiver - 1].set(record.function, record.file,
                                      record.decoded);

  RunResult result;
  result.shuffle = std::move(shuffle);
  for (int k = 1; k <= K; ++k) {
    for (int q = k; q <= Q; q += K) {
      std::vector<std::vector<double>> per_file;
      per_file.reserve(a.file_count);
      for (int n = 1; n <= a.file_count; ++n) {
        const auto block = stores[k - 1].at(q, n);
        std::vector<double> iv(job.iv_symbols);
        for (int t = 0; t < job.iv_symbols; ++t) iv[t] = block[t].real();
        per_file.push_back(std::move(iv));
      }
      result.outputs.push_back({k, q, job.reduce(q, per_file)});
    }
  }
  std::sort(result.outputs.begin(), result.outputs.end(),
            [](const NodeOutput& x, const NodeOutput& y) {
              return std::tie(x.node, x.function) < std::tie(y.node, y.function);
            });
  return result;
}

std::vector<std::string> generate_corpus(int file_count, std::uint64_t seed,
                                         int words_per_file, int vocabulary) {
  std::vector<std::string> files;
  files.reserve(file_count);
  std::mt19937_64 rng(seed);
  for (int n = 0; n < file_count; ++n) {
    std::string file;
    for (int w = 0; w < words_per_file; ++w) {
      const auto pick = rng() % static_cast<std::uint64_t>(vocabulary);
      file += "w" + std::to_string(pick);
      file += (w % 12 == 11) ? '\n' : ' ';
    }
    files.push_back(std::move(file));
  }
  return files;
}

}  // namespace wmra
