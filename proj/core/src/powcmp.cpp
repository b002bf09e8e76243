#include "splab/powcmp.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace splab {

namespace {

// little-endian limbs; value zero is the empty vector
using Limbs = std::vector<std::uint64_t>;

void mul_u64(Limbs& a, std::uint64_t m) {
    unsigned __int128 carry = 0;
    for (auto& limb : a) {
        unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
        limb = static_cast<std::uint64_t>(cur);
        carry = cur >> 64;
    }
    while (carry) {
        a.push_back(static_cast<std::uint64_t>(carry));
        carry >>= 64;
    }
}

Limbs pow_limbs(std::uint64_t base, std::uint32_t exp) {
    Limbs r{1};
    for (std::uint32_t i = 0; i < exp; ++i)
        mul_u64(r, base);
    return r;
}

int cmp_limbs(const Limbs& a, const Limbs& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

int compare_pow(std::uint64_t a, std::uint32_t ea, std::uint64_t b, std::uint32_t eb) {
    // collapse the trivial powers first: x^0 = 1 (including 0^0), 0^e = 0, 1^e = 1
    bool trivial_a = ea == 0 || a <= 1;
    bool trivial_b = eb == 0 || b <= 1;
    if (trivial_a || trivial_b) {
        // 2 stands for any value that is at least 2
        std::uint64_t va = trivial_a ? (ea == 0 ? 1 : a) : 2;
        std::uint64_t vb = trivial_b ? (eb == 0 ? 1 : b) : 2;
        return va < vb ? -1 : (va > vb ? 1 : 0);
    }

    // bit-length bounds: 2^(e(w-1)) <= x^e < 2^(e w) for bit width w
    std::uint64_t wa = std::uint64_t(std::bit_width(a));
    std::uint64_t wb = std::uint64_t(std::bit_width(b));
    std::uint64_t lo_a = ea * (wa - 1), hi_a = ea * wa;
    std::uint64_t lo_b = eb * (wb - 1), hi_b = eb * wb;
    if (lo_a >= hi_b) return 1;
    if (lo_b >= hi_a) return -1;

    return cmp_limbs(pow_limbs(a, ea), pow_limbs(b, eb));
}

std::uint64_t max_base_below_pow(std::uint64_t r, std::uint32_t den,
                                 std::uint32_t num, std::uint64_t cap) {
    if (num == 0)
        throw std::domain_error("max_base_below_pow: exponent numerator must be >= 1");
    if (compare_pow(1, num, r, den) >= 0)
        return 0;
    std::uint64_t lo = 1, hi = cap; // lo always satisfies n^num < r^den
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (compare_pow(mid, num, r, den) < 0)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::uint64_t iroot(std::uint64_t n, unsigned k) {
    if (k == 0)
        throw std::domain_error("iroot: k must be >= 1");
    if (k == 1 || n <= 1) return n;
    if (k == 2) return isqrt(n);
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 1 && compare_pow(r, k, n, 1) > 0) --r;
    while (compare_pow(r + 1, k, n, 1) <= 0) ++r;
    return r;
}

std::uint64_t ipow_saturating(std::uint64_t a, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (a != 0 && r > std::numeric_limits<std::uint64_t>::max() / a)
            return std::numeric_limits<std::uint64_t>::max();
        r *= a;
    }
    return r;
}

} // namespace splab
