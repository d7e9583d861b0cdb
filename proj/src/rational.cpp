#include "gridups/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace gridups {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    const char* begin = s.data();
    if (!s.empty() && s.front() == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("not a rational: \"" + std::string(whole) + "\"");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos) throw std::invalid_argument("empty rational");
    const std::string_view s = text.substr(first, last - first + 1);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s, text));
    const auto num = parse_int(s.substr(0, slash), text);
    const auto den = parse_int(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    return Rational(num, den);
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace gridups
