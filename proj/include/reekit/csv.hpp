#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reekit::csv {

using Record = std::vector<std::string>;

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line endings.
// A leading UTF-8 byte-order mark is skipped. Blank lines are dropped.
// `line_numbers`, when given, receives the 1-based physical line on which each
// record starts.
std::vector<Record> read_records(std::string_view text, char delimiter = ',',
                                 std::vector<std::size_t>* line_numbers = nullptr);

// Quotes a field only when it contains the delimiter, a quote, or a line break.
std::string escape_field(std::string_view field, char delimiter = ',');

std::string join_record(const Record& fields, char delimiter = ',');

std::string_view trim(std::string_view s) noexcept;

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

// Whole-field decimal parse (surrounding whitespace allowed); nullopt otherwise.
std::optional<double> parse_number(std::string_view text) noexcept;

}  // namespace reekit::csv
