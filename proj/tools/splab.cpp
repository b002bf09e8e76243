// splab - experiments on primes p whose shifted value p-1 has a large prime
// factor, and on products of such primes. Subcommands sieve an x-grid, write
// CSV series with a JSON manifest per run, and cross-check the enumeration
// engines against each other.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splab/errors.hpp"
#include "splab/report.hpp"

namespace {

struct CommonArgs {
    std::vector<std::uint64_t> xs;
    std::string x_grid;
    std::uint64_t block_size = splab::kDefaultBlockSize;
    unsigned workers = 1;
    std::string out_dir = ".";
    bool plot = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_grid) {
    if (with_grid) {
        cmd->add_option("--x", args.xs, "explicit x values (repeatable)");
        cmd->add_option("--x-grid", args.x_grid,
                        "geometric grid start:ratio:count, e.g. 1000:10:4");
    }
    cmd->add_option("--block-size", args.block_size, "sieve segment size")
        ->capture_default_str();
    cmd->add_option("--workers", args.workers, "worker threads")
        ->envname("SPLAB_WORKERS")
        ->capture_default_str();
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    cmd->add_flag("--plot", args.plot, "also write plot-ready .dat files");
}

splab::GridSpec parse_grid(const CommonArgs& args) {
    if (!args.xs.empty() && !args.x_grid.empty())
        throw std::domain_error("give either --x or --x-grid, not both");
    if (!args.xs.empty())
        return splab::GridSpec::explicit_list(args.xs);
    if (args.x_grid.empty())
        throw std::domain_error("an x grid is required: --x or --x-grid");
    auto c1 = args.x_grid.find(':');
    auto c2 = args.x_grid.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::domain_error("--x-grid expects start:ratio:count");
    try {
        std::uint64_t start = std::stoull(args.x_grid.substr(0, c1));
        double ratio = std::stod(args.x_grid.substr(c1 + 1, c2 - c1 - 1));
        unsigned count = static_cast<unsigned>(std::stoul(args.x_grid.substr(c2 + 1)));
        return splab::GridSpec::geometric(start, ratio, count);
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::domain_error("--x-grid expects start:ratio:count");
    }
}

void emit(splab::CommandOutput& out, const CommonArgs& args) {
    auto paths = splab::write_output(out, args.out_dir, args.plot);
    std::cout << out.csv;
    for (const auto& p : paths)
        std::cerr << "wrote " << p << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shifted-prime large-factor laboratory"};
    app.require_subcommand(1);
    std::function<int()> run;

    // density: count primes p <= x with P(p-1) >= p^(1/2-alpha)
    CommonArgs density_args;
    std::string alpha_text = "0";
    auto* density = app.add_subcommand("density", "largest-shifted-factor density series");
    add_common(density, density_args, true);
    density->add_option("--alpha", alpha_text, "exponent offset as a fraction u/v")
        ->capture_default_str();
    density->callback([&] {
        run = [&] {
            auto grid = parse_grid(density_args);
            auto out = splab::cmd_density(grid, splab::Rational::parse(alpha_text),
                                          {density_args.block_size, density_args.workers});
            emit(out, density_args);
            return 0;
        };
    });

    // sums: M_c, the full weighted progression sum, and its three-way split
    CommonArgs sums_args;
    std::string c_text = "1/2";
    double B = 1.0;
    auto* sums = app.add_subcommand("sums", "weighted divisor-sum series");
    add_common(sums, sums_args, true);
    sums->add_option("--c", c_text, "threshold exponent as a fraction u/v")
        ->capture_default_str();
    sums->add_option("--B", B, "log-power used for the low cut point")
        ->capture_default_str();
    sums->callback([&] {
        run = [&] {
            auto grid = parse_grid(sums_args);
            auto out = splab::cmd_sums(grid, splab::Rational::parse(c_text), B,
                                       {sums_args.block_size, sums_args.workers});
            emit(out, sums_args);
            return 0;
        };
    });

    // products: count n = p1...pk <= x with P(gcd(p_i - 1)) > n^a
    CommonArgs prod_args;
    std::string a_text;
    unsigned k = 2;
    std::string mode_text;
    std::string engine_text = "both";
    bool records = false;
    bool unsafe_exponent = false;
    bool accept_long_run = false;
    std::optional<std::uint64_t> max_x;
    auto* products = app.add_subcommand("products", "shared-factor product counting series");
    add_common(products, prod_args, true);
    products->add_option("--k", k, "number of prime factors")->capture_default_str();
    products->add_option("--a", a_text, "membership exponent as a fraction u/v")
        ->required();
    products->add_option("--mode", mode_text, "tuple ordering: multiplicity|distinct")
        ->required()
        ->check(CLI::IsMember({"multiplicity", "distinct"}));
    products->add_option("--engine", engine_text, "brute|progression|both")
        ->capture_default_str()
        ->check(CLI::IsMember({"brute", "progression", "both"}));
    products->add_flag("--records", records, "keep tuple records (diagnostics)");
    products->add_flag("--unsafe-exponent", unsafe_exponent,
                       "allow a outside [1/(2k), 17/(32k))");
    products->add_option("--max-x", max_x, "raise the enumeration cost ceiling");
    products->add_flag("--i-accept-long-run", accept_long_run,
                       "required together with --max-x");
    products->callback([&] {
        run = [&] {
            if (max_x && !accept_long_run)
                throw splab::CostGuardError("--max-x requires --i-accept-long-run");
            splab::ProductsOptions opt;
            opt.k = k;
            opt.a = splab::Rational::parse(a_text);
            opt.mode = mode_text == "distinct" ? splab::EnumMode::distinct
                                               : splab::EnumMode::multiplicity;
            opt.engine = engine_text == "brute"
                             ? splab::Engine::brute
                             : (engine_text == "progression" ? splab::Engine::progression
                                                             : splab::Engine::both);
            opt.records = records;
            opt.allow_any_exponent = unsafe_exponent;
            opt.guard_ceiling = max_x;
            auto grid = parse_grid(prod_args);
            auto out = splab::cmd_products(grid, opt,
                                           {prod_args.block_size, prod_args.workers});
            emit(out, prod_args);
            return 0;
        };
    });

    // btscan: two-sided window exceptions for pi(y; p, u) over primes p <= y^nu
    CommonArgs bt_args;
    std::uint64_t y = 0;
    double nu = 0.5, w_c1 = 0.0, w_c2 = 0.0, K = 0.0;
    std::int64_t shift = 1;
    bool has_K = false;
    auto* btscan = app.add_subcommand("btscan", "progression-count window exception scan");
    add_common(btscan, bt_args, false);
    btscan->add_option("--y", y, "count primes q <= y")->required();
    btscan->add_option("--nu", nu, "scan moduli p <= y^nu")->capture_default_str();
    btscan->add_option("--c1", w_c1, "lower window constant")->required();
    btscan->add_option("--c2", w_c2, "upper window constant")->required();
    btscan->add_option("--u", shift, "residue shift, nonzero")->capture_default_str();
    btscan->add_option("--K", K, "exception-bound label, recorded in the manifest only")
        ->each([&](const std::string&) { has_K = true; });
    btscan->callback([&] {
        run = [&] {
            splab::BTWindow w;
            w.y = y;
            w.nu = nu;
            w.c1 = w_c1;
            w.c2 = w_c2;
            w.shift = shift;
            auto out = splab::cmd_btscan(w, {bt_args.block_size, bt_args.workers});
            if (has_K)
                out.manifest.parameters.emplace_back("K", splab::format_real(K));
            emit(out, bt_args);
            return 0;
        };
    });

    // selftest: quick built-in oracle checks
    auto* selftest = app.add_subcommand("selftest", "run the built-in quick checks");
    selftest->callback([&] {
        run = [&] { return splab::run_selftest(std::cout) ? 0 : 1; };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const splab::CostGuardError& e) {
        std::cerr << "cost guard: " << e.what() << '\n';
        return 4;
    } catch (const splab::EngineMismatchError& e) {
        std::cerr << "engine mismatch: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
