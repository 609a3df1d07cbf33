#pragma once

#include <stdexcept>
#include <string>

namespace wmra {

enum class Errc {
  // parsing / I/O
  malformed_entry,
  ragged_rows,
  inconsistent_row_stars,
  header_mismatch,
  bad_format,
  io_error,
  // array queries
  slot_absent,
  invalid_array,
  dimension_mismatch,
  // constructions
  invalid_load,
  invalid_t,
  not_divisible,
  unsupported,
  // EPDA conversion (Lemma-style hypothesis failures)
  not_regular_2r,
  load_mismatch,
  row_star_mismatch,
  // shuffle simulation
  null_space_empty,
  signal_vanished,
  missing_iv,
  // engine
  file_count_mismatch,
  unknown_job,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wmra
