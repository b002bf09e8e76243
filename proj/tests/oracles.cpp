#include "oracles.hpp"

#include <cmath>
#include <cstdlib>

namespace oracle {

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        std::uint32_t e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t largest_factor(std::uint64_t n) {
    if (n <= 1) return 1;
    auto f = factorize(n);
    return f.back().first;
}

std::uint64_t count_progression(std::uint64_t x, std::uint64_t m, std::uint64_t r) {
    std::uint64_t count = 0;
    for (std::uint64_t p : primes_upto(x))
        if (p % m == r) ++count;
    return count;
}

double mangoldt(std::uint64_t m) {
    if (m < 2) return 0.0;
    auto f = factorize(m);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

double mangoldt_sum_definitional(std::uint64_t x, double u, double v) {
    const auto primes = primes_upto(x);
    double total = 0;
    for (std::uint64_t m = 2; static_cast<double>(m) <= v; ++m) {
        if (static_cast<double>(m) <= u) continue;
        const double lam = mangoldt(m);
        if (lam == 0.0) continue;
        std::uint64_t count = 0;
        for (std::uint64_t p : primes)
            if (p % m == 1) ++count;
        total += lam * static_cast<double>(count);
    }
    return total;
}

double sum_log_shifted(std::uint64_t x) {
    double total = 0;
    for (std::uint64_t p : primes_upto(x))
        total += std::log(static_cast<double>(p - 1));
    return total;
}

int cmp_pow128(std::uint64_t a, std::uint32_t ea, std::uint64_t b, std::uint32_t eb) {
    auto pow128 = [](std::uint64_t base, std::uint32_t e) {
        unsigned __int128 r = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (base != 0 && r > (~(unsigned __int128)0) / base) std::abort();
            r *= base;
        }
        return r;
    };
    const unsigned __int128 va = pow128(a, ea);
    const unsigned __int128 vb = pow128(b, eb);
    return va < vb ? -1 : (va > vb ? 1 : 0);
}

} // namespace oracle
