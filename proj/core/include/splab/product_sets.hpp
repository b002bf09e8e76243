#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "splab/rational.hpp"
#include "splab/shifted_stats.hpp"
#include "splab/sieve.hpp"

namespace splab {

// Tuple ordering convention: non-strict (p1 <= ... <= pk, factors counted
// with multiplicity) or strict (p1 < ... < pk, distinct factors). Reports
// always state the mode; there is no silent default on the CLI.
enum class EnumMode { multiplicity, distinct };

// A k-tuple of primes with n = product, g = gcd(p_i - 1), P(g), and the
// membership verdict P(g)^den > n^num (strict, exact integer comparison
// with a = num/den).
struct TupleRecord {
    std::vector<std::uint64_t> primes; // ascending
    std::uint64_t n = 0;
    std::uint64_t g = 0;
    std::uint64_t largest_of_g = 1;
    bool member = false;
};

struct EnumOptions {
    EnumMode mode = EnumMode::multiplicity;
    bool keep_records = false;
    // Exponents outside [1/(2k), 17/(32k)) are refused unless set.
    bool allow_any_exponent = false;
    // Replaces the default desk-scale ceiling (1e7 for k=2, 1e6 for k>=3).
    std::optional<std::uint64_t> guard_ceiling;
    Tuning tuning{};
};

struct EnumResult {
    std::uint64_t count = 0;
    std::vector<TupleRecord> records; // only when keep_records
};

// Membership check for one explicit tuple. Entries must be prime; the
// product must fit in 64 bits. The P(g)^den > n^num comparison is exact for
// any magnitude.
TupleRecord classify_tuple(std::span<const std::uint64_t> primes, const Rational& a);

// Exact count (and optionally records) of tuples with product <= x and
// member == true, by nested loops with a product cutoff. Serves as the
// reference engine.
EnumResult brute_enumerate(std::uint64_t x, unsigned k, const Rational& a,
                           const EnumOptions& opt = {});

// Same count, enumerated through the common prime r = P(g): for each
// candidate r, tuples of primes = 1 (mod r) with product <= x are accepted
// exactly when r = P(gcd) and r^den > n^num, so every member tuple is
// counted under exactly one r. Requires a with num >= 1.
EnumResult progression_enumerate(std::uint64_t x, unsigned k, const Rational& a,
                                 const EnumOptions& opt = {});

struct ConstructionSpec {
    unsigned k = 2;
    Rational a{};
    std::uint64_t x = 0;
    std::uint64_t r = 0; // common prime factor of every p_i - 1; prime, >= 3
};

// Explicit member tuples built from primes = 1 (mod r): distinct primes,
// product <= x, membership re-checked exactly rather than assumed. An empty
// pool yields an empty list.
std::vector<TupleRecord> construct_member_family(const ConstructionSpec& spec,
                                                 std::size_t max_tuples,
                                                 const Tuning& t = {});

// Default candidate window [y^(ak), 2 y^(ak)] with y = x^(1/k) for choosing
// the common prime r.
std::pair<double, double> construction_window(std::uint64_t x, unsigned k,
                                              const Rational& a);

// Sum of log gcd(p_i - 1) over strict k-tuples with product <= x; terms
// counts the tuples with gcd > 1.
SumRecord gcd_log_sum(std::uint64_t x, unsigned k,
                      std::optional<std::uint64_t> guard_ceiling = std::nullopt,
                      const Tuning& t = {});

// Count of squarefree n <= x with exactly k prime factors, all = 1 (mod m).
std::uint64_t count_products_in_progression(std::uint64_t x, unsigned k,
                                            std::uint64_t m, const Tuning& t = {});

} // namespace splab
