#include "tutorkit/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace tutorkit {

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  char c;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    if (in_quotes) return;
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        end_field();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || !field.empty() || !row.empty()) end_row();
        break;
      default:
        field.push_back(c);
        row_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw ValidationError("csv: unterminated quoted field at end of input");
  }
  if (row_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    const bool needs_quotes =
        f.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

const std::vector<std::string> kScoreColumns = {"fluency", "grammar",
                                                "vocabulary", "pronunciation"};

std::optional<double> parse_score(const std::string& cell,
                                  std::size_t row_number,
                                  const std::string& column) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto res =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw ValidationError("row " + std::to_string(row_number) + ": cannot parse " +
                          column + " value '" + cell + "'");
  }
  return value;
}

int parse_int(const std::string& cell, std::size_t row_number,
              const std::string& column) {
  int value = 0;
  const auto res =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw ValidationError("row " + std::to_string(row_number) + ": cannot parse " +
                          column + " value '" + cell + "'");
  }
  return value;
}

}  // namespace

std::vector<SessionRecord> parse_sessions(
    std::istream& in, const std::string& source_name,
    const std::optional<std::string>& timestamp_column) {
  const auto rows = read_csv(in);
  if (rows.empty()) {
    throw ValidationError(source_name + ": missing header row");
  }
  const std::string order_column =
      timestamp_column ? *timestamp_column : std::string("session_index");
  std::vector<std::string> expected = {"learner_id", order_column, "tutor_id"};
  expected.insert(expected.end(), kScoreColumns.begin(), kScoreColumns.end());
  if (rows[0] != expected) {
    std::string want;
    for (const auto& c : expected) {
      if (!want.empty()) want += ',';
      want += c;
    }
    std::string got;
    for (const auto& c : rows[0]) {
      if (!got.empty()) got += ',';
      got += c;
    }
    throw ValidationError(source_name + ": unexpected header; want '" + want +
                          "', got '" + got + "'");
  }

  struct Parsed {
    SessionRecord record;
    std::string order_key;
    std::size_t input_pos;
  };
  std::vector<Parsed> parsed;
  parsed.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != expected.size()) {
      throw ValidationError("row " + std::to_string(r) + ": expected " +
                            std::to_string(expected.size()) + " fields, got " +
                            std::to_string(cells.size()));
    }
    Parsed p;
    p.input_pos = r;
    p.record.learner_id = cells[0];
    p.record.tutor_id = cells[2];
    if (timestamp_column) {
      p.order_key = cells[1];
      if (p.order_key.empty()) {
        throw ValidationError("row " + std::to_string(r) + ": empty " +
                              order_column + " value");
      }
    } else {
      p.record.session_index = parse_int(cells[1], r, "session_index");
    }
    for (std::size_t s = 0; s < kScoreColumns.size(); ++s) {
      p.record.scores[s] = parse_score(cells[3 + s], r, kScoreColumns[s]);
    }
    parsed.push_back(std::move(p));
  }

  if (timestamp_column) {
    // Numeric ordering when every timestamp parses as a number,
    // lexicographic otherwise; ties keep input order (stable sort).
    bool all_numeric = true;
    std::vector<double> numeric(parsed.size(), 0.0);
    for (std::size_t i = 0; i < parsed.size() && all_numeric; ++i) {
      const std::string& key = parsed[i].order_key;
      const auto res = std::from_chars(key.data(), key.data() + key.size(),
                                       numeric[i]);
      all_numeric =
          res.ec == std::errc{} && res.ptr == key.data() + key.size();
    }
    std::map<std::string, std::vector<std::size_t>> by_learner;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      by_learner[parsed[i].record.learner_id].push_back(i);
    }
    for (auto& [learner, idxs] : by_learner) {
      std::stable_sort(idxs.begin(), idxs.end(),
                       [&](std::size_t a, std::size_t b) {
                         if (all_numeric) return numeric[a] < numeric[b];
                         return parsed[a].order_key < parsed[b].order_key;
                       });
      int session = 1;
      for (std::size_t i : idxs) {
        parsed[i].record.session_index = session++;
      }
    }
  }

  std::vector<SessionRecord> out;
  out.reserve(parsed.size());
  for (auto& p : parsed) out.push_back(std::move(p.record));
  return out;
}

std::vector<SessionRecord> read_sessions_csv(
    const std::string& path,
    const std::optional<std::string>& timestamp_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open input file: " + path);
  }
  return parse_sessions(in, path, timestamp_column);
}

void write_sessions_csv(std::ostream& out,
                        std::span<const SessionRecord> sessions) {
  std::vector<std::string> row = {"learner_id", "session_index", "tutor_id"};
  row.insert(row.end(), kScoreColumns.begin(), kScoreColumns.end());
  write_csv_row(out, row);
  for (const SessionRecord& s : sessions) {
    row.clear();
    row.push_back(s.learner_id);
    row.push_back(std::to_string(s.session_index));
    row.push_back(s.tutor_id);
    for (const auto& score : s.scores) {
      row.push_back(score ? format_double(*score) : std::string());
    }
    write_csv_row(out, row);
  }
}

}  // namespace tutorkit
