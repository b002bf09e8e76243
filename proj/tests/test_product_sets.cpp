#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "splab/errors.hpp"
#include "splab/product_sets.hpp"

using namespace splab;

namespace {

const Rational kQuarter = Rational::of(1, 4);
const Rational kSixth = Rational::of(1, 6);

// fully naive reference: all tuples, trial-division P(g), 128-bit compare
std::uint64_t ref_count(std::uint64_t x, unsigned k, const Rational& a, EnumMode mode) {
    const auto primes = oracle::primes_upto(x / 2);
    std::uint64_t count = 0;
    std::vector<std::uint64_t> tuple;
    auto rec = [&](auto&& self, std::size_t start, std::uint64_t prod,
                   unsigned left) -> void {
        if (left == 0) {
            std::uint64_t g = 0;
            for (std::uint64_t p : tuple) g = std::gcd(g, p - 1);
            const std::uint64_t pg = oracle::largest_factor(g);
            if (oracle::cmp_pow128(pg, static_cast<std::uint32_t>(a.den), prod,
                                   static_cast<std::uint32_t>(a.num)) > 0)
                ++count;
            return;
        }
        for (std::size_t j = start; j < primes.size(); ++j) {
            if (primes[j] > x / prod) break;
            tuple.push_back(primes[j]);
            self(self, mode == EnumMode::distinct ? j + 1 : j, prod * primes[j],
                 left - 1);
            tuple.pop_back();
        }
    };
    rec(rec, 0, 1, k);
    return count;
}

std::vector<std::vector<std::uint64_t>> sorted_keys(const std::vector<TupleRecord>& rs) {
    std::vector<std::vector<std::uint64_t>> keys;
    keys.reserve(rs.size());
    for (const auto& r : rs) keys.push_back(r.primes);
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace

TEST_CASE("tuple classification") {
    const std::vector<std::uint64_t> pair{11, 31};
    const auto r = classify_tuple(pair, kQuarter);
    CHECK(r.n == 341);
    CHECK(r.g == 10);
    CHECK(r.largest_of_g == 5);
    CHECK(r.member); // 5^4 = 625 > 341

    const std::vector<std::uint64_t> small{3, 7};
    const auto s = classify_tuple(small, kQuarter);
    CHECK(s.g == 2);
    CHECK(s.n == 21);
    CHECK_FALSE(s.member); // 2^4 = 16 < 21

    // a tuple containing 2 collapses the gcd to 1 and can never be a member
    for (std::uint64_t q : {3ull, 97ull, 65537ull}) {
        const std::vector<std::uint64_t> with_two{2, q};
        CHECK_FALSE(classify_tuple(with_two, kQuarter).member);
        CHECK(classify_tuple(with_two, kQuarter).largest_of_g == 1);
        CHECK_FALSE(classify_tuple(with_two, Rational::of(0, 1)).member); // 1 > 1 fails
    }

    // singletons: strict comparison against p^(1/2)
    const std::vector<std::uint64_t> five{5};
    CHECK_FALSE(classify_tuple(five, Rational::of(1, 2)).member); // 2^2 < 5
    const std::vector<std::uint64_t> seven{7};
    CHECK(classify_tuple(seven, Rational::of(1, 2)).member); // 3^2 > 7

    // input order does not matter
    const std::vector<std::uint64_t> reversed{31, 11};
    CHECK(classify_tuple(reversed, kQuarter).primes ==
          std::vector<std::uint64_t>{11, 31});

    const std::vector<std::uint64_t> empty;
    CHECK_THROWS_AS(classify_tuple(empty, kQuarter), std::invalid_argument);
    const std::vector<std::uint64_t> composite{4, 5};
    CHECK_THROWS_AS(classify_tuple(composite, kQuarter), std::invalid_argument);
}

TEST_CASE("brute enumeration matches the worked examples") {
    EnumOptions mult;
    mult.mode = EnumMode::multiplicity;
    mult.keep_records = true;
    auto r = brute_enumerate(100, 2, kQuarter, mult);
    CHECK(r.count == 3);
    CHECK(sorted_keys(r.records) ==
          std::vector<std::vector<std::uint64_t>>{{3, 3}, {3, 5}, {7, 7}});
    for (const auto& rec : r.records) CHECK(rec.member);

    EnumOptions dist;
    dist.mode = EnumMode::distinct;
    dist.keep_records = true;
    auto d = brute_enumerate(100, 2, kQuarter, dist);
    CHECK(d.count == 1);
    CHECK(d.records.at(0).primes == std::vector<std::uint64_t>{3, 5});

    CHECK(brute_enumerate(5, 2, kQuarter, mult).count == 0);
    CHECK(brute_enumerate(5, 2, kQuarter, dist).count == 0);
}

TEST_CASE("brute enumeration agrees with a naive reference") {
    for (std::uint64_t x : {100ull, 1000ull, 20000ull}) {
        for (EnumMode mode : {EnumMode::multiplicity, EnumMode::distinct}) {
            EnumOptions opt;
            opt.mode = mode;
            CHECK(brute_enumerate(x, 2, kQuarter, opt).count ==
                  ref_count(x, 2, kQuarter, mode));
        }
    }
    EnumOptions opt;
    opt.mode = EnumMode::multiplicity;
    CHECK(brute_enumerate(5000, 3, kSixth, opt).count ==
          ref_count(5000, 3, kSixth, EnumMode::multiplicity));
}

TEST_CASE("single primes reduce to the density count") {
    EnumOptions opt;
    // P(p-1) > p^(1/2), strict; {3, 7, 11, 23, 29}
    CHECK(brute_enumerate(30, 1, Rational::of(1, 2), opt).count == 5);
}

TEST_CASE("progression engine equals brute force") {
    for (std::uint64_t x : {100ull, 1000ull, 10000ull, 100000ull}) {
        for (EnumMode mode : {EnumMode::multiplicity, EnumMode::distinct}) {
            EnumOptions opt;
            opt.mode = mode;
            CAPTURE(x);
            const auto nb = brute_enumerate(x, 2, kQuarter, opt);
            const auto np = progression_enumerate(x, 2, kQuarter, opt);
            CHECK(nb.count == np.count);

            const auto nb3 = brute_enumerate(std::min<std::uint64_t>(x, 50000), 3,
                                             kSixth, opt);
            const auto np3 = progression_enumerate(std::min<std::uint64_t>(x, 50000), 3,
                                                   kSixth, opt);
            CHECK(nb3.count == np3.count);
        }
    }
}

TEST_CASE("both engines produce the same record set") {
    for (EnumMode mode : {EnumMode::multiplicity, EnumMode::distinct}) {
        EnumOptions opt;
        opt.mode = mode;
        opt.keep_records = true;
        const auto nb = brute_enumerate(2000, 2, kQuarter, opt);
        const auto np = progression_enumerate(2000, 2, kQuarter, opt);
        REQUIRE(nb.count == np.count);
        CHECK(sorted_keys(nb.records) == sorted_keys(np.records));
        for (const auto& rec : np.records) {
            CHECK(rec.member);
            CHECK(rec.largest_of_g == oracle::largest_factor(rec.g));
        }
    }
}

TEST_CASE("counts are monotone in x and distinct never exceeds multiplicity") {
    std::uint64_t prev_mult = 0, prev_dist = 0;
    for (std::uint64_t x : {10ull, 50ull, 100ull, 500ull, 1000ull, 5000ull}) {
        EnumOptions mult, dist;
        mult.mode = EnumMode::multiplicity;
        dist.mode = EnumMode::distinct;
        const auto cm = progression_enumerate(x, 2, kQuarter, mult).count;
        const auto cd = progression_enumerate(x, 2, kQuarter, dist).count;
        CHECK(cm >= prev_mult);
        CHECK(cd >= prev_dist);
        CHECK(cd <= cm);
        prev_mult = cm;
        prev_dist = cd;
    }
}

TEST_CASE("cost guards and exponent window") {
    EnumOptions opt;
    opt.mode = EnumMode::multiplicity;
    CHECK_THROWS_AS(brute_enumerate(10'000'001, 2, kQuarter, opt), CostGuardError);
    CHECK_THROWS_AS(progression_enumerate(10'000'001, 2, kQuarter, opt), CostGuardError);
    CHECK_THROWS_AS(brute_enumerate(1'000'001, 3, kSixth, opt), CostGuardError);

    opt.guard_ceiling = 50;
    CHECK_THROWS_AS(brute_enumerate(100, 2, kQuarter, opt), CostGuardError);
    opt.guard_ceiling = 200;
    CHECK(brute_enumerate(100, 2, kQuarter, opt).count == 3);

    EnumOptions window;
    window.mode = EnumMode::multiplicity;
    CHECK_THROWS_AS(brute_enumerate(100, 2, Rational::of(1, 3), window),
                    std::domain_error);
    CHECK_THROWS_AS(brute_enumerate(100, 2, Rational::of(17, 64), window),
                    std::domain_error); // right endpoint is excluded
    CHECK_THROWS_AS(brute_enumerate(100, 2, Rational::of(1, 5), window),
                    std::domain_error);
    window.allow_any_exponent = true;
    CHECK_NOTHROW(brute_enumerate(100, 2, Rational::of(1, 3), window));
    CHECK(brute_enumerate(100, 2, Rational::of(1, 5), window).count ==
          ref_count(100, 2, Rational::of(1, 5), EnumMode::multiplicity));

    CHECK_THROWS_AS(progression_enumerate(100, 1, Rational::of(1, 2), opt),
                    std::domain_error);
    EnumOptions zero;
    zero.allow_any_exponent = true;
    CHECK_THROWS_AS(progression_enumerate(100, 2, Rational::of(0, 1), zero),
                    std::domain_error);
}

TEST_CASE("constructed families are genuine members") {
    ConstructionSpec spec;
    spec.k = 2;
    spec.a = kQuarter;
    spec.x = 400;
    spec.r = 5;
    const auto fam = construct_member_family(spec, 100);
    REQUIRE(fam.size() == 1);
    CHECK(fam[0].primes == std::vector<std::uint64_t>{11, 31});
    CHECK(fam[0].n == 341);
    CHECK(fam[0].member);
    for (const auto& rec : fam) CHECK(rec.largest_of_g >= spec.r);

    // the same tuples appear in the brute records
    EnumOptions dist;
    dist.mode = EnumMode::distinct;
    dist.keep_records = true;
    const auto brute = brute_enumerate(400, 2, kQuarter, dist);
    const auto keys = sorted_keys(brute.records);
    for (const auto& rec : fam)
        CHECK(std::binary_search(keys.begin(), keys.end(), rec.primes));

    spec.x = 50;
    CHECK(construct_member_family(spec, 100).empty()); // 11*31 > 50

    spec.x = 400;
    spec.r = 4;
    CHECK_THROWS_AS(construct_member_family(spec, 100), std::domain_error);
    spec.r = 2;
    CHECK_THROWS_AS(construct_member_family(spec, 100), std::domain_error);

    // truncation; a = 1/8 keeps the n < P(g)^8 cap roomy enough for members
    spec.r = 3;
    spec.x = 10000;
    spec.a = Rational::of(1, 8);
    const auto all = construct_member_family(spec, 1000);
    const auto two = construct_member_family(spec, 2);
    REQUIRE(all.size() > 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].primes == all[0].primes);
    CHECK(two[1].primes == all[1].primes);
}

TEST_CASE("construction window") {
    const auto [lo, hi] = construction_window(400, 2, kQuarter);
    CHECK(lo == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));
    CHECK(hi == doctest::Approx(2.0 * std::sqrt(20.0)).epsilon(1e-12));
    CHECK(lo <= 5.0);
    CHECK(5.0 <= hi); // r = 5 sits inside the default window at x = 400
}

TEST_CASE("gcd log sum") {
    const auto rec = gcd_log_sum(35, 2);
    CHECK(rec.value == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(rec.terms == 4); // (3,5), (3,7), (3,11), (5,7)

    const auto tiny = gcd_log_sum(6, 2);
    CHECK(tiny.value == 0.0);
    CHECK(tiny.terms == 0); // only (2,3), gcd(1,2) = 1

    // every tuple of odd primes contributes at least log 2
    const double lower =
        std::log(2.0) * static_cast<double>(count_products_in_progression(1000, 2, 2));
    CHECK(gcd_log_sum(1000, 2).value >= lower - 1e-9);

    CHECK_THROWS_AS(gcd_log_sum(35, 1), std::domain_error);
    CHECK_THROWS_AS(gcd_log_sum(20'000'000, 2, std::nullopt), CostGuardError);
}

TEST_CASE("products in a progression") {
    CHECK(count_products_in_progression(35, 2, 2) == 4); // 15, 21, 33, 35
    CHECK(count_products_in_progression(35, 2, 5) == 0); // 11*31 > 35
    CHECK(count_products_in_progression(341, 2, 5) == 1);
    // pool mod 4 is {5,13,17,29,37,41,53,61}: seven pairs with 5, plus (13,17)
    CHECK(count_products_in_progression(341, 2, 4) == 8);
    CHECK_THROWS_AS(count_products_in_progression(35, 2, 1), std::domain_error);
    CHECK_THROWS_AS(count_products_in_progression(35, 1, 2), std::domain_error);
}

TEST_CASE("the two orders of summation agree") {
    // route one: sum of log gcd over tuples; route two: Lambda(m) times the
    // count of tuple products in the progression mod m
    for (std::uint64_t x : {1000ull, 10000ull}) {
        const double direct = gcd_log_sum(x, 2).value;
        double swapped = 0;
        const std::uint64_t root = static_cast<std::uint64_t>(
            std::sqrt(static_cast<double>(x)));
        for (std::uint64_t m = 2; m <= root; ++m) {
            const double lam = von_mangoldt(m);
            if (lam > 0)
                swapped += lam * static_cast<double>(count_products_in_progression(x, 2, m));
        }
        CHECK(direct == doctest::Approx(swapped).epsilon(1e-9));
    }
}

TEST_CASE("enumeration results are reproducible across tunings") {
    for (EnumMode mode : {EnumMode::multiplicity, EnumMode::distinct}) {
        EnumOptions a, b;
        a.mode = b.mode = mode;
        a.tuning = {1 << 10, 1};
        b.tuning = {1 << 14, 8};
        a.keep_records = b.keep_records = true;
        const auto ra = progression_enumerate(20000, 2, kQuarter, a);
        const auto rb = progression_enumerate(20000, 2, kQuarter, b);
        CHECK(ra.count == rb.count);
        REQUIRE(ra.records.size() == rb.records.size());
        for (std::size_t i = 0; i < ra.records.size(); ++i)
            CHECK(ra.records[i].primes == rb.records[i].primes);
    }
    const Tuning t1{1 << 10, 1}, t2{1 << 12, 8};
    CHECK(gcd_log_sum(20000, 2, std::nullopt, t1).value ==
          gcd_log_sum(20000, 2, std::nullopt, t2).value);
}
