#include "wmra/epda.hpp"

#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

#include "grid_io.hpp"

namespace wmra {

VerificationReport verify_epda(const Epda& e) {
  VerificationReport report;
  // (i) Z stars per column
  for (int k = 0; k < e.node_count; ++k) {
    int stars = 0;
    for (int i = 0; i < e.file_count; ++i)
      if (e.at(i, k).is_star()) ++stars;
    if (stars != e.column_stars)
      report.violations.push_back(
          {Cond::EpdaColumnStars, "column " + std::to_string(k + 1),
           std::to_string(stars) + " stars, expected Z = " +
               std::to_string(e.column_stars)});
  }
  // (ii) exact regularity, at most once per column
  std::vector<int> total(e.slot_count + 1, 0);
  for (int i = 0; i < e.file_count; ++i) {
    for (int k = 0; k < e.node_count; ++k) {
      const int s = e.at(i, k).slot_index();
      if (s == 0) continue;
      if (s > e.slot_count) {
        report.violations.push_back(
            {Cond::EpdaRegularity,
             "row " + std::to_string(i + 1) + ", column " +
                 std::to_string(k + 1),
             "slot " + std::to_string(s) + " exceeds S = " +
                 std::to_string(e.slot_count)});
        continue;
      }
      ++total[s];
    }
  }
  for (int s = 1; s <= e.slot_count; ++s)
    if (total[s] != e.regularity)
      report.violations.push_back(
          {Cond::EpdaRegularity, "slot " + std::to_string(s),
           "appears " + std::to_string(total[s]) + " times, expected g = " +
               std::to_string(e.regularity)});
  for (int k = 0; k < e.node_count; ++k) {
    std::vector<int> per_column(e.slot_count + 1, 0);
    for (int i = 0; i < e.file_count; ++i) {
      const int s = e.at(i, k).slot_index();
      if (s >= 1 && s <= e.slot_count) ++per_column[s];
    }
    for (int s = 1; s <= e.slot_count; ++s)
      if (per_column[s] > 1)
        report.violations.push_back(
            {Cond::EpdaRegularity,
             "slot " + std::to_string(s) + ", column " + std::to_string(k + 1),
             "appears " + std::to_string(per_column[s]) + " times in column"});
  }
  // (iii) A3 at bound r
  detail::append_a3_violations(e.grid, e.file_count, e.node_count,
                               e.slot_count, e.load, report);
  return report;
}

WmrArray wmra_from_epda(const Epda& e) {
  // hypothesis checks come first so each failure keeps its own name; full
  // verification settles whatever remains
  if (e.regularity != 2 * e.load)
    fail(Errc::not_regular_2r, "g = " + std::to_string(e.regularity) +
                                   " but 2r = " + std::to_string(2 * e.load));
  if (2 * e.load > e.node_count)
    fail(Errc::not_regular_2r,
         "2r = " + std::to_string(2 * e.load) + " exceeds K = " +
             std::to_string(e.node_count) +
             "; such grids are not covered by the conversion");
  if (static_cast<long long>(e.node_count) * e.column_stars !=
      static_cast<long long>(e.file_count) * e.load)
    fail(Errc::load_mismatch,
         "K*Z = " + std::to_string(e.node_count) + "*" +
             std::to_string(e.column_stars) + " does not equal N*r = " +
             std::to_string(e.file_count) + "*" + std::to_string(e.load));
  for (int i = 0; i < e.file_count; ++i) {
    int stars = 0;
    for (int k = 0; k < e.node_count; ++k)
      if (e.at(i, k).is_star()) ++stars;
    if (stars != e.load)
      fail(Errc::row_star_mismatch,
           "row " + std::to_string(i + 1) + " has " + std::to_string(stars) +
               " stars, expected r = " + std::to_string(e.load));
  }
  if (!verify_epda(e).passed())
    fail(Errc::invalid_array, "EPDA fails its own verification");
  WmrArray a;
  a.node_count = e.node_count;
  a.file_count = e.file_count;
  a.load = e.load;
  a.slot_count = e.slot_count;
  a.grid = e.grid;
  return a;
}

Corollary1Params corollary1_params(int node_count, int load) {
  const int K = node_count;
  const int r = load;
  if (K < 1 || r < 1 || 2 * r > K)
    fail(Errc::invalid_load, "need 1 <= r <= K/2, got K=" + std::to_string(K) +
                                 " r=" + std::to_string(r));
  const long long g = std::gcd(K, r);
  Corollary1Params p;
  p.file_count = 2LL * K * r / (g * g);
  p.slot_count = p.file_count * (K - r) / (2 * r);
  p.delivery_time = Rational::of(K - r, 2LL * r * K);
  return p;
}

namespace {

struct EpdaHeader {
  std::optional<int> node_count, load, file_count, column_stars, slot_count,
      regularity;
};

void parse_epda_header_fields(std::istringstream& in, EpdaHeader& header) {
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos)
      fail(Errc::bad_format, "bad header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string rest = field.substr(eq + 1);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc{} || ptr != rest.data() + rest.size())
      fail(Errc::bad_format, "bad header field '" + field + "'");
    if (key == "K") header.node_count = value;
    else if (key == "r") header.load = value;
    else if (key == "N") header.file_count = value;
    else if (key == "Z") header.column_stars = value;
    else if (key == "S") header.slot_count = value;
    else if (key == "g") header.regularity = value;
    else fail(Errc::bad_format, "unknown header field '" + key + "'");
  }
}

Epda finalize_epda(detail::RawGrid grid, const EpdaHeader& h) {
  Epda e;
  e.node_count = grid.cols;
  e.file_count = grid.rows;
  e.grid = std::move(grid.entries);
  auto cross_check = [](const char* name, std::optional<int> want, int got) {
    if (want && *want != got)
      fail(Errc::header_mismatch, std::string(name) + " declared as " +
                                      std::to_string(*want) + " but grid has " +
                                      std::to_string(got));
  };
  cross_check("K", h.node_count, e.node_count);
  cross_check("N", h.file_count, e.file_count);
  if (!h.load || !h.regularity)
    fail(Errc::bad_format, "EPDA header must declare r and g");
  e.load = *h.load;
  e.regularity = *h.regularity;
  // Z and S default to what the grid shows; declarations win so that
  // verify_epda gets to flag inconsistent ones.
  if (h.column_stars) {
    e.column_stars = *h.column_stars;
  } else {
    for (int i = 0; i < e.file_count; ++i)
      if (e.at(i, 0).is_star()) ++e.column_stars;
  }
  if (h.slot_count) {
    e.slot_count = *h.slot_count;
  } else {
    for (const Entry cell : e.grid)
      e.slot_count = std::max(e.slot_count, cell.slot_index());
  }
  return e;
}

}  // namespace

Epda parse_epda(std::string_view text) {
  EpdaHeader header;
  bool saw_header = false;
  std::string body;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream in(line);
    std::string token;
    if (!(in >> token)) continue;
    if (token[0] == '#') {
      std::string kind;
      if (token == "#") in >> kind;
      else kind = token.substr(1);
      if (kind == "epda") {
        saw_header = true;
        parse_epda_header_fields(in, header);
      }
      continue;  // other '#' lines are comments
    }
    body += line;
    body += '\n';
  }
  if (!saw_header) fail(Errc::bad_format, "missing '# epda' header");
  return finalize_epda(detail::parse_raw_grid(body), header);
}

Epda epda_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("grid"))
    fail(Errc::bad_format, "expected an object with a \"grid\" array");
  EpdaHeader header;
  auto read_field = [&](const char* name, std::optional<int>& out) {
    if (!j.contains(name)) return;
    if (!j[name].is_number_integer())
      fail(Errc::bad_format,
           std::string("field \"") + name + "\" must be an integer");
    out = j[name].get<int>();
  };
  read_field("K", header.node_count);
  read_field("r", header.load);
  read_field("N", header.file_count);
  read_field("Z", header.column_stars);
  read_field("S", header.slot_count);
  read_field("g", header.regularity);
  return finalize_epda(detail::raw_grid_from_json(j["grid"]), header);
}

nlohmann::json epda_to_json(const Epda& e) {
  return nlohmann::json{
      {"K", e.node_count},
      {"r", e.load},
      {"N", e.file_count},
      {"Z", e.column_stars},
      {"S", e.slot_count},
      {"g", e.regularity},
      {"grid", detail::grid_to_json(e.grid, e.file_count, e.node_count)}};
}

std::string serialize_epda_text(const Epda& e) {
  std::string out = "# epda K=" + std::to_string(e.node_count) +
                    " r=" + std::to_string(e.load) +
                    " N=" + std::to_string(e.file_count) +
                    " Z=" + std::to_string(e.column_stars) +
                    " S=" + std::to_string(e.slot_count) +
                    " g=" + std::to_string(e.regularity) + "\n";
  out += detail::grid_to_text(e.grid, e.file_count, e.node_count);
  return out;
}

Epda parse_epda_auto(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Errc::bad_format, "invalid JSON");
    return epda_from_json(j);
  }
  return parse_epda(text);
}

}  // namespace wmra
