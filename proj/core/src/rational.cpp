#include "splab/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace splab {

Rational Rational::of(std::uint64_t num, std::uint64_t den) {
    if (den == 0)
        throw std::domain_error("rational: zero denominator");
    if (den > 1000000)
        throw std::domain_error("rational: denominator too large");
    if (num > den)
        throw std::domain_error("rational: " + std::to_string(num) + "/" +
                                std::to_string(den) + " is outside [0, 1]");
    std::uint64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

Rational Rational::parse(const std::string& text) {
    if (text.empty())
        throw std::domain_error("rational: empty string");
    auto parse_u64 = [](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::domain_error("rational: expected an exact fraction like 1/4, got '" + s + "'");
        return std::stoull(s);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return of(parse_u64(text), 1);
    return of(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));
}

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

int rational_cmp(const Rational& a, std::uint64_t p, std::uint64_t q) {
    // a.num/a.den vs p/q, cross-multiplied in 128 bits
    unsigned __int128 lhs = static_cast<unsigned __int128>(a.num) * q;
    unsigned __int128 rhs = static_cast<unsigned __int128>(p) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

Rational half_minus(const Rational& a) {
    if (rational_cmp(a, 1, 2) > 0)
        throw std::domain_error("half_minus: argument exceeds 1/2");
    return Rational::of(a.den - 2 * a.num, 2 * a.den);
}

} // namespace splab
