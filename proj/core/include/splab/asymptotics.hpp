#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splab/rational.hpp"
#include "splab/sieve.hpp"

namespace splab {

// Main term (1/2 + alpha) x / log x of the density lower bound,
// alpha in [0, 1/4]. Requires x > 1.
double density_bound(double x, const Rational& alpha);

// Shape references for the product-set counting function: both sides of
// x^(1-a(k-1)) / (log x)^(k+1)  <<  count  <<  x^(1-a(k-1)) (log log x)^(k-1) / (log x)^2
// evaluated with constant 1. The literature leaves the constants
// unspecified, so these are never pass/fail lines, only reference curves.
struct BoundEnvelope {
    std::uint64_t x = 0;
    unsigned k = 0;
    Rational a{};
    double lower = 0;
    double upper = 0;
    double x_exponent = 0; // 1 - a(k-1)
};

BoundEnvelope count_envelope(std::uint64_t x, unsigned k, const Rational& a);

struct SeriesPoint {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
};

// Unweighted least squares on (log x, log count). Zero-count points are
// excluded (points_dropped reports how many); fewer than two usable points
// is an error. slope estimates the growth exponent.
struct FitResult {
    double slope = 0;
    double intercept = 0;
    double residual_rms = 0;
    unsigned points_used = 0;
    unsigned points_dropped = 0;
};

FitResult fit_exponent(std::span<const SeriesPoint> series);

// Two-sided Brun-Titchmarsh-style window scan: over primes p <= y^nu, count
// those for which pi(y; p, u) falls outside the open interval
// (c1 y / (p log y), c2 y / (p log y)). c1, c2 are user-supplied; the scan
// is a measurement tool, not a theorem checker.
struct BTWindow {
    std::uint64_t y = 0;
    double nu = 0.5; // in (0, 17/32)
    double c1 = 0;
    double c2 = 0;         // > c1
    std::int64_t shift = 1; // residue u, nonzero

    void validate() const;
};

struct BTRow {
    std::uint64_t p = 0;
    std::uint64_t count = 0; // pi(y; p, u)
    double low = 0;
    double high = 0;
    bool exception = false;
};

struct BTScanResult {
    std::vector<BTRow> rows; // ascending p, one per scanned prime
    std::uint64_t scanned = 0;
    std::uint64_t exceptions = 0;
};

BTScanResult bt_exception_scan(const BTWindow& w, const Tuning& t = {});

} // namespace splab
