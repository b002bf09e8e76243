#include "splab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace splab {

double density_bound(double x, const Rational& alpha) {
    if (rational_cmp(alpha, 1, 4) > 0)
        throw std::domain_error("alpha must lie in [0, 1/4]");
    if (!(x > 1.0))
        throw std::domain_error("x must be > 1");
    return (0.5 + alpha.value()) * x / std::log(x);
}

BoundEnvelope count_envelope(std::uint64_t x, unsigned k, const Rational& a) {
    if (k < 2)
        throw std::domain_error("k must be >= 2");
    if (x < 16)
        throw std::domain_error("x must be >= 16 so that log log x > 0");
    if (rational_cmp(a, 1, 2ull * k) < 0 || rational_cmp(a, 17, 32ull * k) >= 0)
        throw std::domain_error("a must lie in [1/(2k), 17/(32k))");
    BoundEnvelope env;
    env.x = x;
    env.k = k;
    env.a = a;
    // 1 - a(k-1), kept exact as (den - num(k-1))/den before going to double
    env.x_exponent = static_cast<double>(a.den - a.num * (k - 1)) /
                     static_cast<double>(a.den);
    const double xd = static_cast<double>(x);
    const double lx = std::log(xd);
    const double xe = std::pow(xd, env.x_exponent);
    env.lower = xe / std::pow(lx, static_cast<double>(k) + 1.0);
    env.upper = xe * std::pow(std::log(lx), static_cast<double>(k) - 1.0) / (lx * lx);
    return env;
}

FitResult fit_exponent(std::span<const SeriesPoint> series) {
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].x <= series[i - 1].x)
            throw std::invalid_argument("fit_exponent: x values must be strictly ascending");

    std::vector<double> lx, ly;
    FitResult fit;
    for (const auto& pt : series) {
        if (pt.count == 0) {
            ++fit.points_dropped; // log of zero is undefined; skipped with a note
            continue;
        }
        lx.push_back(std::log(static_cast<double>(pt.x)));
        ly.push_back(std::log(static_cast<double>(pt.count)));
    }
    if (lx.size() < 2)
        throw std::invalid_argument("fit_exponent: need at least two nonzero points");
    fit.points_used = static_cast<unsigned>(lx.size());

    const std::size_t n = lx.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

void BTWindow::validate() const {
    if (y == 0)
        throw std::domain_error("y must be >= 1");
    if (!(nu > 0.0) || !(nu < 17.0 / 32.0))
        throw std::domain_error("nu must lie in (0, 17/32)");
    if (!(c1 >= 0.0))
        throw std::domain_error("c1 must be >= 0");
    if (!(c2 > c1))
        throw std::domain_error("c2 must exceed c1");
    if (shift == 0)
        throw std::domain_error("the residue shift u must be nonzero");
}

BTScanResult bt_exception_scan(const BTWindow& w, const Tuning& t) {
    w.validate();
    BTScanResult result;
    const double p_cap = std::pow(static_cast<double>(w.y), w.nu);
    if (p_cap < 2.0) return result; // empty scan
    const std::uint64_t p_max = static_cast<std::uint64_t>(p_cap);

    const std::vector<std::uint64_t> moduli = enumerate_primes(SieveConfig(p_max, t));
    const std::vector<std::uint64_t> primes = enumerate_primes(SieveConfig(w.y, t));
    const double y_over_log = static_cast<double>(w.y) / std::log(static_cast<double>(w.y));

    auto task = [&](std::size_t i) {
        const std::uint64_t p = moduli[i];
        const std::int64_t sp = static_cast<std::int64_t>(p);
        const std::uint64_t residue =
            static_cast<std::uint64_t>(((w.shift % sp) + sp) % sp);
        BTRow row;
        row.p = p;
        for (std::uint64_t q : primes)
            if (q % p == residue) ++row.count;
        row.low = w.c1 * y_over_log / static_cast<double>(p);
        row.high = w.c2 * y_over_log / static_cast<double>(p);
        // conforming means strictly inside the open window
        const double cnt = static_cast<double>(row.count);
        row.exception = !(cnt > row.low && cnt < row.high);
        return row;
    };

    result.rows = detail::ordered_parallel_map<BTRow>(moduli.size(), t.workers, task);
    result.scanned = result.rows.size();
    for (const auto& row : result.rows)
        if (row.exception) ++result.exceptions;
    return result;
}

} // namespace splab
