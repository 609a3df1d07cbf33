#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wmra/array.hpp"
#include "wmra/shuffle.hpp"

namespace wmra {

// A pluggable computation: Q output functions, each decomposed into a
// per-file map producing a fixed-length real vector and an order-indexed
// reduce over all N per-file vectors.
struct Job {
  std::string name;
  int function_count = 0;  // Q
  int iv_symbols = 8;      // length of each intermediate vector
  // map(q, file bytes) -> iv_symbols reals; deterministic per (q, file).
  std::function<std::vector<double>(int, const std::string&)> map;
  // reduce(q, per-file vectors in file order) -> output value.
  std::function<double(int, const std::vector<std::vector<double>>&)> reduce;
  // Outputs are integers; decoded values are rounded before comparison.
  bool integer_valued = false;
};

// Counts whitespace-delimited occurrences of keywords[q-1] per file; reduce
// sums the counts over files.
Job make_keyword_count_job(std::vector<std::string> keywords,
                           int iv_symbols = 8);

// Position-and-function keyed integer hash of the file bytes, spread across
// the vector components; reduce sums everything. Exact in doubles.
Job make_checksum_job(int function_count, int iv_symbols = 8);

std::vector<std::string> builtin_job_names();

// Throws unknown_job with the catalog in the message. keyword-count defaults
// to keywords w0..w{Q-1}, matching generate_corpus.
Job make_builtin_job(const std::string& name, int function_count,
                     int iv_symbols = 8);

struct NodeOutput {
  int node = 0;
  int function = 0;
  double value = 0.0;
};

struct CentralOutput {
  int function = 0;
  double value = 0.0;
};

struct RunResult {
  std::vector<NodeOutput> outputs;  // ordered by (node, function)
  ShuffleReport shuffle;
};

// Map phase: node k computes the intermediate vectors of every function for
// each file with a star in its column. Returns one store per node holding
// exactly those entries. Q must be a positive multiple of K.
std::vector<IvStore> run_map(const WmrArray& a, const Job& job,
                             const std::vector<std::string>& files,
                             bool parallel = true);

// Full Map -> Shuffle -> Reduce pass over the simulated channel. Node k's
// reduce inputs come exclusively from its own store: map-phase locals plus
// decoded receptions inserted after the shuffle; a gap throws missing_iv.
RunResult run_distributed(const WmrArray& a, const Job& job,
                          const std::vector<std::string>& files,
                          std::uint64_t seed,
                          const SimulateOptions& options = {});

// Reference outputs computed without any distribution.
std::vector<CentralOutput> run_centralized(const Job& job,
                                           const std::vector<std::string>& files);

// Seeded text corpus over the vocabulary w0..w{vocabulary-1}.
std::vector<std::string> generate_corpus(int file_count, std::uint64_t seed,
                                         int words_per_file = 60,
                                         int vocabulary = 8);

}  // namespace wmra
