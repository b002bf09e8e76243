#pragma once

#include <cstdint>
#include <string>

namespace splab {

// Exact fraction in lowest terms, restricted to [0, 1]. Exponent thresholds
// like x^c or n^a are always carried as one of these so that threshold
// comparisons can be decided in exact integer arithmetic.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    // Reduces to lowest terms; throws std::domain_error unless 0 <= num/den <= 1.
    static Rational of(std::uint64_t num, std::uint64_t den);

    // Accepts "u/v" or a bare integer ("0", "1"). Decimals are rejected on
    // purpose: the exact-comparison contract starts at the parse boundary.
    static Rational parse(const std::string& text);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    bool is_zero() const { return num == 0; }

    friend bool operator==(const Rational&, const Rational&) = default;
};

// Three-way comparison of a against p/q, exact. Returns -1, 0, +1.
int rational_cmp(const Rational& a, std::uint64_t p, std::uint64_t q);

// 1/2 - a, exact; requires a <= 1/2.
Rational half_minus(const Rational& a);

} // namespace splab
