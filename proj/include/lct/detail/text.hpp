#ifndef LCT_DETAIL_TEXT_HPP
#define LCT_DETAIL_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace lct::detail {

// Shortest decimal form that parses back to the same double
// ("-9999", "57.3673", "0.5").
std::string format_double(double value);

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

// Strict numeric parsers: the whole token must be consumed.
double parse_double(std::string_view token, const std::string& what);
long parse_long(std::string_view token, const std::string& what);

} // namespace lct::detail

#endif
