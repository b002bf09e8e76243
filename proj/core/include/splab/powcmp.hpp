#pragma once

#include <cstdint>

namespace splab {

// Exact three-way comparison of a^ea against b^eb, with the convention
// x^0 = 1 (including 0^0). Intermediate powers can run to thousands of
// bits; they are evaluated in limb arithmetic, so the verdict never
// depends on floating point.
int compare_pow(std::uint64_t a, std::uint32_t ea, std::uint64_t b, std::uint32_t eb);

// Largest n in [0, cap] with n^num < r^den, or 0 when no positive n
// qualifies. Requires num >= 1; monotone in n, found by binary search on
// compare_pow.
std::uint64_t max_base_below_pow(std::uint64_t r, std::uint32_t den,
                                 std::uint32_t num, std::uint64_t cap);

// Integer roots. isqrt(n) = floor(sqrt(n)); iroot(n, k) = floor(n^(1/k)).
std::uint64_t isqrt(std::uint64_t n);
std::uint64_t iroot(std::uint64_t n, unsigned k);

// a^e, or UINT64_MAX if the product overflows 64 bits (saturating).
std::uint64_t ipow_saturating(std::uint64_t a, unsigned e);

} // namespace splab
