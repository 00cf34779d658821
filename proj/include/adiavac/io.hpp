#ifndef ADIAVAC_IO_HPP
#define ADIAVAC_IO_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace adiavac {

/// Fixed-width faithful decimal for a double: `%.17g`, so parse(fmt(x)) == x
/// bit-for-bit and re-emitting a parsed file reproduces it byte-for-byte.
std::string fmt_g17(double x);

/// Shortest decimal that still parses back to exactly x (for display).
std::string fmt_shortest(double x);

/// Strict double parse of a whole token; ParseError otherwise.
double parse_double(const std::string& s, const std::string& what);

/// Plain-text `key=value` file: one pair per line, '#' starts a comment,
/// blank lines ignored. Duplicate keys keep the last value.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Two numeric columns separated by a comma. '#' comments and an optional
/// non-numeric header line are skipped.
std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(const std::string& path);

/// Split one CSV record on commas (no quoting; cells must not contain commas).
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace adiavac

#endif
