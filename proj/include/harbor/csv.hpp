#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace harbor::csv {

/// Splits one line on commas. Double-quoted fields may contain commas and
/// "" escapes. Surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split_line(std::string_view line);

/// Reads the next non-empty line, stripping a trailing '\r'. Returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no);

/// Shortest decimal text that parses back to exactly `v`.
std::string number(double v);

/// Strict double parse of a whole field; returns false on any trailing garbage.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

}  // namespace harbor::csv
