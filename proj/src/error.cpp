#include "wmra/error.hpp"

namespace wmra {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_entry: return "MalformedEntry";
    case Errc::ragged_rows: return "RaggedRows";
    case Errc::inconsistent_row_stars: return "InconsistentRowStars";
    case Errc::header_mismatch: return "HeaderMismatch";
    case Errc::bad_format: return "BadFormat";
    case Errc::io_error: return "IoError";
    case Errc::slot_absent: return "SlotAbsent";
    case Errc::invalid_array: return "InvalidArray";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_load: return "InvalidLoad";
    case Errc::invalid_t: return "InvalidT";
    case Errc::not_divisible: return "NotDivisible";
    case Errc::unsupported: return "Unsupported";
    case Errc::not_regular_2r: return "NotRegular2r";
    case Errc::load_mismatch: return "LoadMismatch";
    case Errc::row_star_mismatch: return "RowStarMismatch";
    case Errc::null_space_empty: return "NullSpaceEmpty";
    case Errc::signal_vanished: return "SignalVanished";
    case Errc::missing_iv: return "MissingIv";
    case Errc::file_count_mismatch: return "FileCountMismatch";
    case Errc::unknown_job: return "UnknownJob";
  }
  return "Error";
}

}  // namespace wmra
