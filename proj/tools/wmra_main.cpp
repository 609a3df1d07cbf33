// wmra: construct, verify, convert and simulate wireless MapReduce arrays.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmra/array.hpp"
#include "wmra/constructions.hpp"
#include "wmra/engine.hpp"
#include "wmra/epda.hpp"
#include "wmra/shuffle.hpp"
#include "wmra/sweep.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

// 0 success/verified, 1 verification or domain failure, 2 I/O or parse
// error, 3 simulation degeneracy.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitDegenerate = 3;

int exit_code_for(const wmra::Error& e) {
  switch (e.code()) {
    case wmra::Errc::malformed_entry:
    case wmra::Errc::ragged_rows:
    case wmra::Errc::inconsistent_row_stars:
    case wmra::Errc::header_mismatch:
    case wmra::Errc::bad_format:
    case wmra::Errc::io_error:
    case wmra::Errc::file_count_mismatch:
    case wmra::Errc::unknown_job:
    case wmra::Errc::dimension_mismatch:
      return kExitBadInput;
    case wmra::Errc::null_space_empty:
    case wmra::Errc::signal_vanished:
    case wmra::Errc::missing_iv:
      return kExitDegenerate;
    default:
      return kExitVerifyFailed;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) wmra::fail(wmra::Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) wmra::fail(wmra::Errc::io_error, "cannot write '" + path + "'");
  out << content;
}

wmra::ArrayFormat parse_format(const std::string& name) {
  if (name == "text") return wmra::ArrayFormat::text;
  if (name == "json") return wmra::ArrayFormat::json;
  wmra::fail(wmra::Errc::bad_format, "unknown format '" + name + "'");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix-style stream so per-trial seeds do not collide with the base
  std::uint64_t x = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct ConstructArgs {
  int node_count = 0;
  int load = 0;
  std::string method = "auto";
  std::string out;
  std::string format = "text";
};

int cmd_construct(const ConstructArgs& args) {
  const int K = args.node_count;
  const int r = args.load;
  wmra::WmrArray a;
  if (args.method == "case-a") {
    a = wmra::construct_case_a(K, r);
  } else if (args.method == "case-b") {
    a = wmra::construct_case_b(K, r);
  } else if (args.method == "auto") {
    if (K % r == 0 && K / r >= 2) a = wmra::construct_case_b(K, r);
    else if (2 * r >= K) a = wmra::construct_case_a(K, r);
    else
      wmra::fail(wmra::Errc::unsupported,
                 "no construction covers K=" + std::to_string(K) + " r=" +
                     std::to_string(r) +
                     " (needs 2r >= K or r | K); import an EPDA via "
                     "convert-epda instead");
  } else {
    wmra::fail(wmra::Errc::bad_format, "unknown method '" + args.method + "'");
  }
  const std::string content =
      wmra::serialize_array(a, parse_format(args.format));
  if (args.out.empty()) {
    std::cout << content;
  } else {
    write_file(args.out, content);
    std::cerr << "wrote (" << a.node_count << "," << a.file_count << ","
              << a.load << "," << a.slot_count << ") array to " << args.out
              << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& in, bool as_json) {
  const wmra::WmrArray a = wmra::parse_array_auto(read_file(in));
  const wmra::VerificationReport report = wmra::verify(a);
  if (as_json) {
    nlohmann::json out = wmra::report_to_json(report);
    out["tool_version"] = kToolVersion;
    out["K"] = a.node_count;
    out["N"] = a.file_count;
    out["r"] = a.load;
    out["S"] = a.slot_count;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (report.passed() ? "PASS" : "FAIL") << ": (" << a.node_count
              << "," << a.file_count << "," << a.load << "," << a.slot_count
              << ") array\n";
    for (const auto& v : report.violations)
      std::cout << "  " << wmra::cond_name(v.condition) << " at " << v.location
                << ": " << v.detail << "\n";
  }
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

struct SimulateArgs {
  std::string in;
  std::uint64_t seed = 1;
  int trials = 1;
  int symbols = 8;
  double snr_db = 0.0;
  bool has_snr = false;
  bool serial = false;
};

int cmd_simulate(const SimulateArgs& args) {
  const wmra::WmrArray a = wmra::parse_array_auto(read_file(args.in));
  wmra::SimulateOptions options;
  if (args.has_snr) options.snr_db = args.snr_db;
  options.parallel = !args.serial;

  double max_residual = 0.0;
  nlohmann::json trial_residuals = nlohmann::json::array();
  nlohmann::json full_report;
  for (int trial = 0; trial < args.trials; ++trial) {
    const std::uint64_t seed =
        args.trials == 1 ? args.seed : derive_seed(args.seed, trial);
    const auto h = wmra::gen_channel(a.node_count, seed);
    const auto ivs = wmra::IvStore::random(a.node_count, a.file_count,
                                           args.symbols, derive_seed(seed, 0));
    const auto report = wmra::simulate_shuffle(a, h, ivs, options);
    max_residual = std::max(max_residual, report.max_residual);
    trial_residuals.push_back(report.max_residual);
    if (args.trials == 1) full_report = wmra::shuffle_report_to_json(report);
  }

  const wmra::Rational delivery = wmra::ndt(a);
  nlohmann::json out;
  if (args.trials == 1) {
    out = std::move(full_report);
  } else {
    out["seed"] = args.seed;
    out["generator"] = wmra::kChannelGenerator;
    out["T"] = args.symbols;
    if (args.has_snr) out["snr_db"] = args.snr_db;
    else out["snr_db"] = nullptr;
    out["ndt"] = {{"num", delivery.num}, {"den", delivery.den}};
    out["max_residual"] = max_residual;
    out["trials"] = args.trials;
    out["trial_max_residuals"] = std::move(trial_residuals);
  }
  out["tool_version"] = kToolVersion;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

std::vector<std::string> load_files(const std::string& spec, int expected) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (fs::is_directory(spec)) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(spec))
      if (entry.is_regular_file()) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) files.push_back(read_file(path.string()));
  } else {
    // JSON manifest: [{"name":..., "text":...}, ...]
    nlohmann::json manifest =
        nlohmann::json::parse(read_file(spec), nullptr, false);
    if (manifest.is_discarded() || !manifest.is_array())
      wmra::fail(wmra::Errc::bad_format,
                 "'" + spec + "' is neither a directory nor a JSON manifest");
    for (const auto& item : manifest) {
      if (item.contains("text")) files.push_back(item["text"].get<std::string>());
      else if (item.contains("bytes"))
        files.push_back(item["bytes"].get<std::string>());
      else
        wmra::fail(wmra::Errc::bad_format,
                   "manifest entries need a \"text\" or \"bytes\" field");
    }
  }
  if (expected >= 0 && static_cast<int>(files.size()) != expected)
    wmra::fail(wmra::Errc::file_count_mismatch,
               "got " + std::to_string(files.size()) + " files, array has N = " +
                   std::to_string(expected));
  return files;
}

struct RunArgs {
  std::string in;
  std::string job = "keyword-count";
  std::string files;
  std::string keywords;
  std::uint64_t seed = 1;
  int symbols = 8;
};

int cmd_run(const RunArgs& args) {
  const wmra::WmrArray a = wmra::parse_array_auto(read_file(args.in));
  const std::vector<std::string> files = load_files(args.files, a.file_count);

  wmra::Job job;
  if (!args.keywords.empty()) {
    std::vector<std::string> keywords;
    std::istringstream in(args.keywords);
    std::string word;
    while (std::getline(in, word, ',')) keywords.push_back(word);
    if (args.job != "keyword-count")
      wmra::fail(wmra::Errc::bad_format,
                 "--keywords only applies to keyword-count");
    if (static_cast<int>(keywords.size()) != a.node_count)
      wmra::fail(wmra::Errc::dimension_mismatch,
                 "need K = " + std::to_string(a.node_count) + " keywords");
    job = wmra::make_keyword_count_job(std::move(keywords), args.symbols);
  } else {
    job = wmra::make_builtin_job(args.job, a.node_count, args.symbols);
  }

  const wmra::RunResult result =
      wmra::run_distributed(a, job, files, args.seed);
  const auto reference = wmra::run_centralized(job, files);

  bool matches = true;
  for (const auto& output : result.outputs) {
    const double expected = reference[output.function - 1].value;
    if (job.integer_valued) {
      if (output.value != expected) matches = false;
    } else {
      const double scale = std::max(std::abs(expected), 1e-300);
      if (std::abs(output.value - expected) / scale > 1e-9) matches = false;
    }
  }

  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& output : result.outputs)
    outputs.push_back({{"node", output.node},
                       {"q", output.function},
                       {"value", output.value}});
  nlohmann::json centralized = nlohmann::json::array();
  for (const auto& output : reference)
    centralized.push_back({{"q", output.function}, {"value", output.value}});
  nlohmann::json out{{"tool_version", kToolVersion},
                     {"job", job.name},
                     {"seed", args.seed},
                     {"ndt", {{"num", result.shuffle.ndt.num},
                              {"den", result.shuffle.ndt.den}}},
                     {"max_residual", result.shuffle.max_residual},
                     {"outputs", std::move(outputs)},
                     {"centralized", std::move(centralized)},
                     {"matches_centralized", matches}};
  std::cout << out.dump(2) << "\n";
  return matches ? kExitOk : kExitVerifyFailed;
}

struct ConvertArgs {
  std::string in;
  std::string out;
  std::string format = "text";
};

int cmd_convert_epda(const ConvertArgs& args) {
  const wmra::Epda e = wmra::parse_epda_auto(read_file(args.in));
  const wmra::VerificationReport report = wmra::verify_epda(e);
  if (!report.passed()) {
    std::cerr << "EPDA verification failed:\n";
    for (const auto& v : report.violations)
      std::cerr << "  " << wmra::cond_name(v.condition) << " at " << v.location
                << ": " << v.detail << "\n";
    return kExitVerifyFailed;
  }
  const wmra::WmrArray a = wmra::wmra_from_epda(e);
  const std::string content =
      wmra::serialize_array(a, parse_format(args.format));
  if (args.out.empty()) std::cout << content;
  else {
    write_file(args.out, content);
    std::cerr << "wrote (" << a.node_count << "," << a.file_count << ","
              << a.load << "," << a.slot_count << ") array to " << args.out
              << "\n";
  }
  return kExitOk;
}

int cmd_sweep(int node_count_max, const std::string& format) {
  const auto rows = wmra::sweep_rows(node_count_max);
  if (format == "csv") {
    std::cout << "K,r,source,N,S,ndt,optimal_ndt,optimal,N_lcw\n";
    for (const auto& row : rows)
      std::cout << row.node_count << ',' << row.load << ',' << row.source
                << ',' << row.file_count << ',' << row.slot_count << ','
                << row.ndt_value.str() << ',' << row.optimal.str() << ','
                << (row.is_optimal ? "true" : "false") << ','
                << row.baseline_files << "\n";
    return kExitOk;
  }
  if (format != "json")
    wmra::fail(wmra::Errc::bad_format, "unknown format '" + format + "'");
  nlohmann::json out{{"tool_version", kToolVersion},
                     {"rows", nlohmann::json::array()}};
  for (const auto& row : rows) {
    out["rows"].push_back(
        {{"K", row.node_count},
         {"r", row.load},
         {"source", row.source},
         {"N", row.file_count},
         {"S", row.slot_count},
         {"ndt",
          {{"num", row.ndt_value.num},
           {"den", row.ndt_value.den},
           {"decimal", row.ndt_value.value()}}},
         {"optimal_ndt",
          {{"num", row.optimal.num}, {"den", row.optimal.den}}},
         {"optimal", row.is_optimal},
         {"N_lcw", row.baseline_files}});
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wireless MapReduce array toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand(
      "construct", "build an array for a given (K, r)");
  construct->add_option("--K", construct_args.node_count, "node count")
      ->required();
  construct->add_option("--r", construct_args.load, "computation load")
      ->required();
  construct->add_option("--method", construct_args.method,
                        "case-a | case-b | auto");
  construct->add_option("--out", construct_args.out, "output path (default stdout)");
  construct->add_option("--format", construct_args.format, "text | json");

  std::string verify_in;
  bool verify_json = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "check conditions A1-A3 and the counting identity");
  verify_cmd->add_option("--in", verify_in, "array file")->required();
  verify_cmd->add_flag("--json", verify_json, "emit a JSON report");

  SimulateArgs simulate_args;
  auto* simulate =
      app.add_subcommand("simulate", "run the shuffle phase over a random channel");
  simulate->add_option("--in", simulate_args.in, "array file")->required();
  simulate->add_option("--seed", simulate_args.seed, "base RNG seed");
  simulate->add_option("--trials", simulate_args.trials, "number of seeded trials")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--T", simulate_args.symbols, "symbols per intermediate value")
      ->check(CLI::PositiveNumber);
  auto* snr = simulate->add_option("--snr-db", simulate_args.snr_db,
                                   "add receiver noise at this SNR");
  simulate->add_flag("--serial", simulate_args.serial,
                     "use the serial reference simulator");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "full map/shuffle/reduce against the oracle");
  run->add_option("--in", run_args.in, "array file")->required();
  run->add_option("--job", run_args.job, "builtin job name");
  run->add_option("--files", run_args.files, "directory or JSON manifest")
      ->required();
  run->add_option("--keywords", run_args.keywords,
                  "comma-separated keyword list (keyword-count)");
  run->add_option("--seed", run_args.seed, "channel seed");
  run->add_option("--T", run_args.symbols, "symbols per intermediate value")
      ->check(CLI::PositiveNumber);

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert-epda",
                                     "convert a 2r-regular EPDA to an array");
  convert->add_option("--in", convert_args.in, "EPDA file")->required();
  convert->add_option("--out", convert_args.out, "output path (default stdout)");
  convert->add_option("--format", convert_args.format, "text | json");

  int sweep_max = 8;
  std::string sweep_format = "csv";
  auto* sweep = app.add_subcommand("sweep", "tabulate constructible (K, r) points");
  sweep->add_option("--K-max", sweep_max, "largest node count")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--format", sweep_format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (app.got_subcommand(construct)) return cmd_construct(construct_args);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_in, verify_json);
    if (app.got_subcommand(simulate)) {
      simulate_args.has_snr = snr->count() > 0;
      return cmd_simulate(simulate_args);
    }
    if (app.got_subcommand(run)) return cmd_run(run_args);
    if (app.got_subcommand(convert)) return cmd_convert_epda(convert_args);
    if (app.got_subcommand(sweep)) return cmd_sweep(sweep_max, sweep_format);
  } catch (const wmra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
