#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sofic {

/// Library-wide error type. Data problems (malformed files, contract
/// violations) are reported by throwing this.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational used for every distance, threshold and ratio.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Parses `P/Q` or a bare integer `P`.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) throw error("malformed rational '" + std::string(text) + "'");
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(s), &pos);
        } catch (const std::exception&) {
            throw error("malformed rational '" + std::string(text) + "'");
        }
        if (pos != s.size()) throw error("malformed rational '" + std::string(text) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw error("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

} // namespace sofic
