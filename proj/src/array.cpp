#include "wmra/array.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "grid_io.hpp"

namespace wmra {

const char* cond_name(Cond c) {
  switch (c) {
    case Cond::A1: return "A1";
    case Cond::A2: return "A2";
    case Cond::A3: return "A3";
    case Cond::Counting: return "counting";
    case Cond::EpdaColumnStars: return "column-stars";
    case Cond::EpdaRegularity: return "regularity";
  }
  return "?";
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json out;
  out["passed"] = report.passed();
  out["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    out["violations"].push_back({{"condition", cond_name(v.condition)},
                                 {"location", v.location},
                                 {"detail", v.detail}});
  }
  return out;
}

namespace {

int count_row_stars(const WmrArray& a, int row) {
  int stars = 0;
  for (int k = 0; k < a.node_count; ++k)
    if (a.at(row, k).is_star()) ++stars;
  return stars;
}

struct DeclaredParams {
  std::optional<int> node_count;
  std::optional<int> file_count;
  std::optional<int> load;
  std::optional<int> slot_count;
};

// Shared tail of the text and JSON parsers: infer K, N, r, S from the grid,
// cross-check K/N/r against declarations, adopt a declared S verbatim so the
// verifier (not the parser) gets to flag inconsistent headers.
WmrArray finalize_array(detail::RawGrid grid, const DeclaredParams& declared) {
  WmrArray a;
  a.node_count = grid.cols;
  a.file_count = grid.rows;
  a.grid = std::move(grid.entries);

  const int stars0 = count_row_stars(a, 0);
  for (int i = 1; i < a.file_count; ++i) {
    const int stars = count_row_stars(a, i);
    if (stars != stars0)
      fail(Errc::inconsistent_row_stars,
           "row 1 has " + std::to_string(stars0) + " stars, row " +
               std::to_string(i + 1) + " has " + std::to_string(stars));
  }
  a.load = stars0;

  int max_slot = 0;
  for (const Entry e : a.grid) max_slot = std::max(max_slot, e.slot_index());
  a.slot_count = max_slot;

  auto cross_check = [](const char* name, std::optional<int> want, int got) {
    if (want && *want != got)
      fail(Errc::header_mismatch, std::string(name) + " declared as " +
                                      std::to_string(*want) + " but grid has " +
                                      std::to_string(got));
  };
  cross_check("K", declared.node_count, a.node_count);
  cross_check("N", declared.file_count, a.file_count);
  cross_check("r", declared.load, a.load);
  if (declared.slot_count) {
    if (*declared.slot_count < 0)
      fail(Errc::header_mismatch, "S must be non-negative");
    a.slot_count = *declared.slot_count;
  }
  return a;
}

// `# wmra K=5 N=5 r=3 S=2`; order-free, each field optional.
void parse_header_fields(std::string_view fields, DeclaredParams& declared) {
  std::istringstream in{std::string(fields)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      fail(Errc::bad_format, "bad header field '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string rest = token.substr(eq + 1);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc{} || ptr != rest.data() + rest.size())
      fail(Errc::bad_format, "bad header field '" + token + "'");
    if (key == "K") declared.node_count = value;
    else if (key == "N") declared.file_count = value;
    else if (key == "r") declared.load = value;
    else if (key == "S") declared.slot_count = value;
    else fail(Errc::bad_format, "unknown header field '" + key + "'");
  }
}

// Returns the header payload when `line` is a `# wmra ...` header.
std::optional<std::string> wmra_header_payload(const std::string& line) {
  std::istringstream in(line);
  std::string token;
  if (!(in >> token) || token[0] != '#') return std::nullopt;
  std::string kind;
  if (token == "#") in >> kind;
  else kind = token.substr(1);
  if (kind != "wmra") return std::nullopt;
  std::string rest, field;
  while (in >> field) {
    rest += field;
    rest += ' ';
  }
  return rest;
}

}  // namespace

WmrArray parse_array(std::string_view text) {
  DeclaredParams declared;
  std::string body;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto payload = wmra_header_payload(line)) {
      parse_header_fields(*payload, declared);
      continue;
    }
    body += line;
    body += '\n';
  }
  return finalize_array(detail::parse_raw_grid(body), declared);
}

WmrArray array_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("grid"))
    fail(Errc::bad_format, "expected an object with a \"grid\" array");
  DeclaredParams declared;
  auto read_field = [&](const char* name, std::optional<int>& out) {
    if (!j.contains(name)) return;
    if (!j[name].is_number_integer())
      fail(Errc::bad_format,
           std::string("field \"") + name + "\" must be an integer");
    out = j[name].get<int>();
  };
  read_field("K", declared.node_count);
  read_field("N", declared.file_count);
  read_field("r", declared.load);
  read_field("S", declared.slot_count);
  return finalize_array(detail::raw_grid_from_json(j["grid"]), declared);
}

nlohmann::json array_to_json(const WmrArray& a) {
  return nlohmann::json{
      {"K", a.node_count},
      {"N", a.file_count},
      {"r", a.load},
      {"S", a.slot_count},
      {"grid", detail::grid_to_json(a.grid, a.file_count, a.node_count)}};
}

std::string serialize_array_text(const WmrArray& a, bool with_header) {
  std::string out;
  if (with_header) {
    out += "# wmra K=" + std::to_string(a.node_count) +
           " N=" + std::to_string(a.file_count) +
           " r=" + std::to_string(a.load) +
           " S=" + std::to_string(a.slot_count) + "\n";
  }
  out += detail::grid_to_text(a.grid, a.file_count, a.node_count);
  return out;
}

std::string serialize_array(const WmrArray& a, ArrayFormat format) {
  if (format == ArrayFormat::text) return serialize_array_text(a);
  return array_to_json(a).dump(2) + "\n";
}

WmrArray parse_array_auto(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Errc::bad_format, "invalid JSON");
    return array_from_json(j);
  }
  return parse_array(text);
}

VerificationReport check_a1(const WmrArray& a) {
  VerificationReport report;
  for (int i = 0; i < a.file_count; ++i) {
    const int stars = count_row_stars(a, i);
    if (stars != a.load)
      report.violations.push_back(
          {Cond::A1, "row " + std::to_string(i + 1),
           std::to_string(stars) + " stars, expected " +
               std::to_string(a.load)});
  }
  return report;
}

VerificationReport check_a2(const WmrArray& a) {
  VerificationReport report;
  const int g = a.multiplicity();
  const int S = a.slot_count;
  std::vector<int> total(S + 1, 0);
  for (int i = 0; i < a.file_count; ++i) {
    for (int k = 0; k < a.node_count; ++k) {
      const int s = a.at(i, k).slot_index();
      if (s == 0) continue;
      if (s > S) {
        report.violations.push_back(
            {Cond::A2,
             "row " + std::to_string(i + 1) + ", column " + std::to_string(k + 1),
             "slot " + std::to_string(s) + " exceeds S = " + std::to_string(S)});
        continue;
      }
      ++total[s];
    }
  }
  for (int s = 1; s <= S; ++s) {
    if (total[s] != g)
      report.violations.push_back(
          {Cond::A2, "slot " + std::to_string(s),
           "appears " + std::to_string(total[s]) + " times, expected " +
               std::to_string(g)});
  }
  for (int k = 0; k < a.node_count; ++k) {
    std::vector<int> per_column(S + 1, 0);
    for (int i = 0; i < a.file_count; ++i) {
      const int s = a.at(i, k).slot_index();
      if (s >= 1 && s <= S) ++per_column[s];
    }
    for (int s = 1; s <= S; ++s) {
      if (per_column[s] > 1)
        report.violations.push_back(
            {Cond::A2,
             "slot " + std::to_string(s) + ", column " + std::to_string(k + 1),
             "appears " + std::to_string(per_column[s]) + " times in column"});
    }
  }
  return report;
}

Subarray subarray(const WmrArray& a, int slot) {
  if (slot < 1) fail(Errc::slot_absent, "slot index " + std::to_string(slot));
  Subarray sub;
  sub.slot = slot;
  std::vector<bool> row_hit(a.file_count, false), col_hit(a.node_count, false);
  for (int i = 0; i < a.file_count; ++i)
    for (int k = 0; k < a.node_count; ++k)
      if (a.at(i, k).slot_index() == slot) {
        row_hit[i] = true;
        col_hit[k] = true;
      }
  for (int i = 0; i < a.file_count; ++i)
    if (row_hit[i]) sub.rows.push_back(i);
  for (int k = 0; k < a.node_count; ++k)
    if (col_hit[k]) sub.cols.push_back(k);
  if (sub.rows.empty())
    fail(Errc::slot_absent,
         "slot " + std::to_string(slot) + " does not occur in the array");
  sub.grid.reserve(sub.rows.size() * sub.cols.size());
  for (const int i : sub.rows)
    for (const int k : sub.cols) sub.grid.push_back(a.at(i, k));
  return sub;
}

VerificationReport check_a3(const WmrArray& a) {
  VerificationReport report;
  detail::append_a3_violations(a.grid, a.file_count, a.node_count,
                               a.slot_count, a.load, report);
  return report;
}

VerificationReport verify(const WmrArray& a) {
  VerificationReport report = check_a1(a);
  for (auto& v : check_a2(a).violations)
    report.violations.push_back(std::move(v));
  for (auto& v : check_a3(a).violations)
    report.violations.push_back(std::move(v));
  const long long lhs = static_cast<long long>(a.slot_count) * a.multiplicity();
  const long long rhs =
      static_cast<long long>(a.file_count) * (a.node_count - a.load);
  if (lhs != rhs)
    report.violations.push_back(
        {Cond::Counting, "array",
         "S*g = " + std::to_string(lhs) +
             " does not equal N*(K-r) = " + std::to_string(rhs)});
  return report;
}

}  // namespace wmra
