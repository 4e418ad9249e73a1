#include "lct/detail/text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lct::detail {

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == value)
            break;
    }
    return buf;
}

std::string trim(std::string_view text)
{
    const char* ws = " \t\r\n\v";
    auto begin = text.find_first_not_of(ws);
    if (begin == std::string_view::npos)
        return {};
    auto end = text.find_last_not_of(ws);
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            return out;
        }
        out.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view token, const std::string& what)
{
    std::string t = trim(token);
    if (!t.empty()) {
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end == t.c_str() + t.size())
            return v;
    }
    throw std::runtime_error(what + ": not a number: '" + std::string(token) + "'");
}

long parse_long(std::string_view token, const std::string& what)
{
    std::string t = trim(token);
    long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw std::runtime_error(what + ": not an integer: '" + std::string(token) + "'");
    return v;
}

} // namespace lct::detail
