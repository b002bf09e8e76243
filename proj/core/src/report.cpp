#include "splab/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "splab/errors.hpp"
#include "splab/powcmp.hpp"

namespace splab {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join_u64(const std::vector<std::uint64_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(xs[i]);
    }
    return s;
}

void add_tuning(RunManifest& m, const Tuning& t) {
    m.parameters.emplace_back("block_size", std::to_string(t.block_size));
    m.parameters.emplace_back("workers", std::to_string(t.workers));
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace

std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string format_int(std::uint64_t v) { return std::to_string(v); }

GridSpec GridSpec::explicit_list(std::vector<std::uint64_t> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    GridSpec g{std::move(xs)};
    g.validate();
    return g;
}

GridSpec GridSpec::geometric(std::uint64_t start, double ratio, unsigned count) {
    if (count == 0)
        throw std::domain_error("grid: count must be >= 1");
    if (!(ratio > 1.0))
        throw std::domain_error("grid: ratio must exceed 1");
    GridSpec g;
    long double v = static_cast<long double>(start);
    for (unsigned i = 0; i < count; ++i) {
        std::uint64_t x = static_cast<std::uint64_t>(llroundl(v));
        if (!g.x_values.empty() && x <= g.x_values.back())
            x = g.x_values.back() + 1;
        g.x_values.push_back(x);
        v *= ratio;
    }
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (x_values.empty())
        throw std::domain_error("grid: empty");
    for (std::size_t i = 0; i < x_values.size(); ++i) {
        if (x_values[i] < 2)
            throw std::domain_error("grid: x values must be >= 2");
        if (i && x_values[i] <= x_values[i - 1])
            throw std::domain_error("grid: x values must be strictly ascending");
    }
    if (x_values.back() > kLimitCeiling)
        throw std::domain_error("grid: largest x exceeds the 2^40 sieve ceiling");
}

std::string GridSpec::str() const { return join_u64(x_values); }

std::string RunManifest::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["tool_version"] = tool_version;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    j["parameters"] = params;
    j["elapsed_seconds"] = elapsed_seconds;
    j["output_paths"] = output_paths;
    ordered_json res = ordered_json::object();
    for (const auto& [k, v] : results) res[k] = v;
    j["results"] = res;
    return j.dump(2) + "\n";
}

CommandOutput cmd_density(const GridSpec& grid, const Rational& alpha, const Tuning& t) {
    grid.validate();
    const auto start = Clock::now();
    CommandOutput out;
    out.name = "density";

    std::string csv = "x,count_N_alpha,pi_x,ratio_to_x_over_logx,ratio_to_pi,theorem1_bound\n";
    std::string plot;
    std::vector<DensityPoint> points;
    points.reserve(grid.x_values.size());
    for (std::uint64_t x : grid.x_values) {
        DensityPoint d = count_large_shift_primes(x, alpha, t);
        const double bound = density_bound(static_cast<double>(x), alpha);
        csv += format_int(d.x) + ',' + format_int(d.count) + ',' + format_int(d.pi_x) +
               ',' + format_real(d.ratio) + ',' + format_real(d.ratio_to_pi) + ',' +
               format_real(bound) + '\n';
        plot += format_int(d.x) + ' ' + format_int(d.count) + '\n';
        points.push_back(d);
    }
    out.csv = std::move(csv);
    out.plots.emplace_back("density", std::move(plot));

    out.manifest.command = "density";
    out.manifest.parameters.emplace_back("alpha", alpha.str());
    out.manifest.parameters.emplace_back("x_values", grid.str());
    add_tuning(out.manifest, t);
    out.manifest.results.emplace_back("kappa_estimate",
                                      format_real(min_density_ratio(points)));
    out.manifest.elapsed_seconds = seconds_since(start);
    return out;
}

CommandOutput cmd_sums(const GridSpec& grid, const Rational& c, double B, const Tuning& t) {
    grid.validate();
    const auto start = Clock::now();
    CommandOutput out;
    out.name = "sums";

    std::string csv = "x,M_c,L_full,L_low,L_mid,L_high,L_full_over_x\n";
    std::string plot;
    for (std::uint64_t x : grid.x_values) {
        const SumRecord m = large_factor_log_sum(x, c, t);
        const SumDecomposition d = progression_sum_decomposition(x, c, B, t);
        const double full_over_x = d.total / static_cast<double>(x);
        csv += format_int(x) + ',' + format_real(m.value) + ',' + format_real(d.total) +
               ',' + format_real(d.low.value) + ',' + format_real(d.mid.value) + ',' +
               format_real(d.high.value) + ',' + format_real(full_over_x) + '\n';
        plot += format_int(x) + ' ' + format_real(full_over_x) + '\n';
    }
    out.csv = std::move(csv);
    out.plots.emplace_back("sums", std::move(plot));

    out.manifest.command = "sums";
    out.manifest.parameters.emplace_back("c", c.str());
    out.manifest.parameters.emplace_back("B", format_real(B));
    out.manifest.parameters.emplace_back("x_values", grid.str());
    add_tuning(out.manifest, t);
    out.manifest.elapsed_seconds = seconds_since(start);
    return out;
}

namespace {

std::string tuple_key(const std::vector<std::uint64_t>& primes) {
    std::string s;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(primes[i]);
    }
    return s;
}

// first tuple present in exactly one of the two sorted record sets
std::string first_diff_tuple(std::vector<TupleRecord> a, std::vector<TupleRecord> b) {
    auto key_less = [](const TupleRecord& l, const TupleRecord& r) {
        return l.primes < r.primes;
    };
    std::sort(a.begin(), a.end(), key_less);
    std::sort(b.begin(), b.end(), key_less);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].primes == b[j].primes) {
            ++i;
            ++j;
        } else if (a[i].primes < b[j].primes) {
            return tuple_key(a[i].primes) + " (brute only)";
        } else {
            return tuple_key(b[j].primes) + " (progression only)";
        }
    }
    if (i < a.size()) return tuple_key(a[i].primes) + " (brute only)";
    if (j < b.size()) return tuple_key(b[j].primes) + " (progression only)";
    return "counts differ but record sets coincide";
}

} // namespace

CommandOutput cmd_products(const GridSpec& grid, const ProductsOptions& opt,
                           const Tuning& t) {
    grid.validate();
    const auto start = Clock::now();
    CommandOutput out;
    out.name = "products";

    EnumOptions eo;
    eo.mode = opt.mode;
    eo.keep_records = opt.records;
    eo.allow_any_exponent = opt.allow_any_exponent;
    eo.guard_ceiling = opt.guard_ceiling;
    eo.tuning = t;

    std::string csv = "x,count,envelope_lower,envelope_upper,count_over_x_pow\n";
    std::string plot;
    std::string records_csv = "x,primes,n,g,largest_of_g\n";
    std::vector<SeriesPoint> series;
    for (std::uint64_t x : grid.x_values) {
        std::optional<EnumResult> rb, rp;
        if (opt.engine != Engine::progression)
            rb = brute_enumerate(x, opt.k, opt.a, eo);
        if (opt.engine != Engine::brute)
            rp = progression_enumerate(x, opt.k, opt.a, eo);
        if (rb && rp && rb->count != rp->count) {
            std::string msg = "engine disagreement at x=" + std::to_string(x) +
                              ": brute=" + std::to_string(rb->count) +
                              " progression=" + std::to_string(rp->count);
            if (opt.records)
                msg += "; first differing tuple: " +
                       first_diff_tuple(rb->records, rp->records);
            throw EngineMismatchError(msg);
        }
        const EnumResult& r = rp ? *rp : *rb;
        const BoundEnvelope env = count_envelope(x, opt.k, opt.a);
        const double scaled =
            static_cast<double>(r.count) / std::pow(static_cast<double>(x), env.x_exponent);
        csv += format_int(x) + ',' + format_int(r.count) + ',' + format_real(env.lower) +
               ',' + format_real(env.upper) + ',' + format_real(scaled) + '\n';
        plot += format_int(x) + ' ' + format_int(r.count) + '\n';
        series.push_back({x, r.count});
        if (opt.records)
            for (const auto& rec : r.records)
                records_csv += format_int(x) + ',' + tuple_key(rec.primes) + ',' +
                               format_int(rec.n) + ',' + format_int(rec.g) + ',' +
                               format_int(rec.largest_of_g) + '\n';
    }
    out.csv = std::move(csv);
    out.plots.emplace_back("products", std::move(plot));
    if (opt.records) out.extras.emplace_back("products_records.csv", std::move(records_csv));

    out.manifest.command = "products";
    out.manifest.parameters.emplace_back("k", std::to_string(opt.k));
    out.manifest.parameters.emplace_back("a", opt.a.str());
    out.manifest.parameters.emplace_back(
        "mode", opt.mode == EnumMode::multiplicity ? "multiplicity" : "distinct");
    out.manifest.parameters.emplace_back(
        "engine", opt.engine == Engine::both
                      ? "both"
                      : (opt.engine == Engine::brute ? "brute" : "progression"));
    out.manifest.parameters.emplace_back("x_values", grid.str());
    add_tuning(out.manifest, t);

    bool fit_ok = 2 <= std::count_if(series.begin(), series.end(),
                                     [](const SeriesPoint& p) { return p.count > 0; });
    if (fit_ok) {
        const FitResult fit = fit_exponent(series);
        out.manifest.results.emplace_back("fit_slope", format_real(fit.slope));
        out.manifest.results.emplace_back("fit_intercept", format_real(fit.intercept));
        out.manifest.results.emplace_back("fit_residual_rms", format_real(fit.residual_rms));
        out.manifest.results.emplace_back("fit_points_used", std::to_string(fit.points_used));
    }
    out.manifest.elapsed_seconds = seconds_since(start);
    return out;
}

CommandOutput cmd_btscan(const BTWindow& w, const Tuning& t) {
    const auto start = Clock::now();
    CommandOutput out;
    out.name = "btscan";

    const BTScanResult scan = bt_exception_scan(w, t);
    std::string csv = "p,pi_y_p_u,window_low,window_high,is_exception\n";
    std::string plot;
    for (const auto& row : scan.rows) {
        csv += format_int(row.p) + ',' + format_int(row.count) + ',' +
               format_real(row.low) + ',' + format_real(row.high) + ',' +
               (row.exception ? "1" : "0") + '\n';
        plot += format_int(row.p) + ' ' + format_int(row.count) + '\n';
    }
    const double fraction =
        scan.scanned == 0 ? 0.0
                          : static_cast<double>(scan.exceptions) /
                                static_cast<double>(scan.scanned);
    csv += "# scanned=" + format_int(scan.scanned) +
           " exceptions=" + format_int(scan.exceptions) +
           " fraction=" + format_real(fraction) + '\n';
    out.csv = std::move(csv);
    out.plots.emplace_back("btscan", std::move(plot));

    out.manifest.command = "btscan";
    out.manifest.parameters.emplace_back("y", std::to_string(w.y));
    out.manifest.parameters.emplace_back("nu", format_real(w.nu));
    out.manifest.parameters.emplace_back("c1", format_real(w.c1));
    out.manifest.parameters.emplace_back("c2", format_real(w.c2));
    out.manifest.parameters.emplace_back("u", std::to_string(w.shift));
    add_tuning(out.manifest, t);
    out.manifest.results.emplace_back("scanned", format_int(scan.scanned));
    out.manifest.results.emplace_back("exceptions", format_int(scan.exceptions));
    out.manifest.results.emplace_back("exception_fraction", format_real(fraction));
    out.manifest.elapsed_seconds = seconds_since(start);
    return out;
}

std::vector<std::string> write_output(CommandOutput& out, const std::string& dir,
                                      bool plot) {
    fs::path base(dir.empty() ? "." : dir);
    fs::create_directories(base);

    std::vector<std::string> paths;
    const fs::path csv_path = base / (out.name + ".csv");
    write_file_atomic(csv_path, out.csv);
    paths.push_back(csv_path.string());

    if (plot) {
        for (const auto& [stem, content] : out.plots) {
            const fs::path p = base / (stem + ".dat");
            write_file_atomic(p, content);
            paths.push_back(p.string());
        }
    }
    for (const auto& [name, content] : out.extras) {
        const fs::path p = base / name;
        write_file_atomic(p, content);
        paths.push_back(p.string());
    }

    out.manifest.output_paths = paths;
    const fs::path manifest_path = base / (out.name + ".manifest.json");
    write_file_atomic(manifest_path, out.manifest.to_json());
    paths.push_back(manifest_path.string());
    return paths;
}

namespace {

bool report_check(std::ostream& os, const std::string& name, bool ok) {
    os << (ok ? "[ ok ] " : "[FAIL] ") << name << '\n';
    return ok;
}

} // namespace

bool run_selftest(std::ostream& os) {
    bool all = true;
    try {
        all &= report_check(os, "prime count to 1e4 is 1229",
                            count_primes(SieveConfig(10'000)) == 1229);

        bool factors_ok = true;
        for_each_shifted_block(SieveConfig(5'000), [&](const SieveBlock& b) {
            for (const auto& r : b.records) {
                std::uint64_t prod = 1;
                for (const auto& f : r.shifted_factors)
                    for (std::uint32_t e = 0; e < f.exponent; ++e) prod *= f.prime;
                if (prod != r.p - 1 || r.largest != largest_prime_factor(r.p - 1))
                    factors_ok = false;
            }
            return true;
        });
        all &= report_check(os, "shifted factorizations reconstruct p-1 (p <= 5000)",
                            factors_ok);

        all &= report_check(
            os, "density count at x=30, alpha=0 is 5",
            count_large_shift_primes(30, Rational::of(0, 1)).count == 5);

        const SumRecord full = mangoldt_progression_sum(1000, 1.0, 1000.0);
        double direct = 0;
        for_each_prime_block(SieveConfig(1000), [&](const SieveBlock& b) {
            for (std::uint64_t p : b.primes)
                direct += std::log(static_cast<double>(p - 1));
            return true;
        });
        all &= report_check(os, "progression-weighted sum matches sum of log(p-1) at x=1000",
                            std::fabs(full.value - direct) <= 1e-9 * direct);

        const Rational quarter = Rational::of(1, 4);
        for (EnumMode mode : {EnumMode::multiplicity, EnumMode::distinct}) {
            EnumOptions eo;
            eo.mode = mode;
            const auto nb = brute_enumerate(10'000, 2, quarter, eo);
            const auto np = progression_enumerate(10'000, 2, quarter, eo);
            all &= report_check(os,
                                std::string("engines agree at x=1e4, k=2, a=1/4, ") +
                                    (mode == EnumMode::multiplicity ? "multiplicity"
                                                                    : "distinct"),
                                nb.count == np.count);
        }

        BTWindow w;
        w.y = 100;
        w.nu = 0.5;
        w.c1 = 0.5;
        w.c2 = 1.5;
        w.shift = 1;
        const BTScanResult scan = bt_exception_scan(w);
        bool bt_ok = scan.scanned == 4 && scan.exceptions == 2 && scan.rows.size() == 4 &&
                     scan.rows[0].exception && scan.rows[1].exception &&
                     !scan.rows[2].exception && !scan.rows[3].exception;
        all &= report_check(os, "window scan at y=100 flags exactly p=2 and p=3", bt_ok);

        GridSpec grid = GridSpec::explicit_list({1'000, 10'000});
        const std::string a1 = cmd_density(grid, Rational::of(1, 8), Tuning{1 << 10, 1}).csv;
        const std::string a2 = cmd_density(grid, Rational::of(1, 8), Tuning{1 << 12, 4}).csv;
        all &= report_check(os, "density CSV identical across block size and workers",
                            a1 == a2);
    } catch (const std::exception& e) {
        os << "[FAIL] selftest aborted: " << e.what() << '\n';
        return false;
    }
    return all;
}

} // namespace splab
