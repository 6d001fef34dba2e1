#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tutorkit/model.hpp"

namespace tutorkit {

// Minimal RFC-4180-style CSV: comma separated, double quotes around fields
// containing commas/quotes/newlines, "" escapes a quote, LF line endings
// (CR before LF tolerated on input).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest round-trip decimal representation.
std::string format_double(double v);

// Reads the sessions table. Expected header:
//   learner_id,session_index,tutor_id,fluency,grammar,vocabulary,pronunciation
// Score cells may be empty. When timestamp_column is given it replaces
// session_index in the header; per-learner indices are then derived by
// sorting on the timestamp (numerically when every cell parses as a
// number, lexicographically otherwise), ties keeping input order.
std::vector<SessionRecord> read_sessions_csv(
    const std::string& path,
    const std::optional<std::string>& timestamp_column = std::nullopt);

std::vector<SessionRecord> parse_sessions(
    std::istream& in, const std::string& source_name,
    const std::optional<std::string>& timestamp_column = std::nullopt);

void write_sessions_csv(std::ostream& out,
                        std::span<const SessionRecord> sessions);

}  // namespace tutorkit
