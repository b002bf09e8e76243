#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "splab/asymptotics.hpp"
#include "splab/product_sets.hpp"
#include "splab/rational.hpp"
#include "splab/shifted_stats.hpp"
#include "splab/sieve.hpp"

namespace splab {

inline constexpr const char* kToolVersion = "splab 0.1.0";

struct GridSpec {
    std::vector<std::uint64_t> x_values; // strictly ascending, nonempty

    static GridSpec explicit_list(std::vector<std::uint64_t> xs);
    // start, start*ratio, start*ratio^2, ... rounded to integers
    static GridSpec geometric(std::uint64_t start, double ratio, unsigned count);

    void validate() const;
    std::string str() const;
};

enum class Engine { brute, progression, both };

// Written atomically next to every output file. Re-running a command with
// the parameters recorded here reproduces the CSV byte for byte.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters; // exact fractions as "u/v"
    std::string tool_version = kToolVersion;
    double elapsed_seconds = 0;
    std::vector<std::string> output_paths;
    std::vector<std::pair<std::string, std::string>> results; // derived scalars

    std::string to_json() const;
};

struct CommandOutput {
    std::string name; // csv stem: "density", "sums", "products", "btscan"
    std::string csv;
    RunManifest manifest;
    // plot-ready two-column files keyed by file stem
    std::vector<std::pair<std::string, std::string>> plots;
    // optional extra csv files (e.g. tuple records), keyed by file name
    std::vector<std::pair<std::string, std::string>> extras;
};

// columns: x,count_N_alpha,pi_x,ratio_to_x_over_logx,ratio_to_pi,theorem1_bound
CommandOutput cmd_density(const GridSpec& grid, const Rational& alpha,
                          const Tuning& t = {});

// columns: x,M_c,L_full,L_low,L_mid,L_high,L_full_over_x
CommandOutput cmd_sums(const GridSpec& grid, const Rational& c, double B,
                       const Tuning& t = {});

struct ProductsOptions {
    unsigned k = 2;
    Rational a{};
    EnumMode mode = EnumMode::multiplicity;
    Engine engine = Engine::both;
    bool records = false;
    bool allow_any_exponent = false;
    std::optional<std::uint64_t> guard_ceiling;
};

// columns: x,count,envelope_lower,envelope_upper,count_over_x_pow
// engine == both cross-checks the two engines and fails hard on mismatch.
CommandOutput cmd_products(const GridSpec& grid, const ProductsOptions& opt,
                           const Tuning& t = {});

// columns: p,pi_y_p_u,window_low,window_high,is_exception
CommandOutput cmd_btscan(const BTWindow& w, const Tuning& t = {});

// Writes csv + manifest (+ plot/extras) into dir, creating it if needed.
// All files go through a temp-file rename; returns the paths written and
// records them in out.manifest.output_paths.
std::vector<std::string> write_output(CommandOutput& out, const std::string& dir,
                                      bool plot);

// CSV numeric formats: integers exact, reals 12 significant digits,
// locale-independent with '.' as the decimal separator.
std::string format_real(double v);
std::string format_int(std::uint64_t v);

// Quick built-in checks (small oracles, engine agreement, determinism).
// Prints one line per check; returns true when everything passed.
bool run_selftest(std::ostream& os);

} // namespace splab
