#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quermass/body_io.hpp"
#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"
#include "quermass/suite.hpp"

using namespace quermass;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;
constexpr int kExitOracle = 4;

struct EvalArgs {
    std::string functional = "W";
    std::vector<std::string> bodies;
    int i = 0;
    int j = 0;
    double p = 1.0;
    std::vector<double> direction;
};

struct Args {
    SuiteConfig config;
    std::vector<std::string> tol;
    std::vector<int> dims;
    std::string nest = "homothetic";
    EvalArgs eval;
};

void add_common(CLI::App* cmd, Args& a) {
    cmd->add_option("--dims", a.dims, "Dimensions to run (subset of 2,3)")->delimiter(',');
    cmd->add_option("--trials", a.config.trials, "Random instances per parameter point")->capture_default_str();
    cmd->add_option("--seed", a.config.seed, "Base seed")->capture_default_str();
    cmd->add_option("--ball-level", a.config.ball_level, "Polytopal ball level")->capture_default_str();
    cmd->add_option("--grid-level", a.config.grid_level, "Direction grid level")->capture_default_str();
    cmd->add_option("--out", a.config.output_path, "Report file (default: standard output)");
    cmd->add_option("--format", a.config.output_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void add_sweep(CLI::App* cmd, Args& a) {
    cmd->add_option("--i", a.config.i_values, "Quermassintegral indices")->delimiter(',');
    cmd->add_option("--j", a.config.j_values, "Projection indices")->delimiter(',');
    cmd->add_option("--p", a.config.p_values, "Firey exponents")->delimiter(',');
    cmd->add_option("--tol", a.tol, "Tolerance override ID=VALUE (repeatable)");
    cmd->add_option("--inject-flip", a.config.inject_flip, "Flip the slack sign of ID")->group("");
}

void apply(Args& a) {
    if (!a.dims.empty()) a.config.dims = a.dims;
    for (const std::string& t : a.tol) {
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0) throw GeometryError(ErrorKind::InvalidArgument, "--tol expects ID=VALUE");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t.substr(eq + 1), &used);
        } catch (const std::exception&) {
            throw GeometryError(ErrorKind::InvalidArgument, "bad tolerance value in " + t);
        }
        if (used != t.size() - eq - 1) throw GeometryError(ErrorKind::InvalidArgument, "bad tolerance value in " + t);
        a.config.tolerance_overrides[t.substr(0, eq)] = v;
    }
    a.config.nest = a.nest == "random" ? NestMode::Random : NestMode::Homothetic;
    validate(a.config);
}

void emit(const SuiteConfig& config, const std::string& text) {
    if (config.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output_path);
    if (!out) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + config.output_path);
    out << text;
}

std::string where(const SuiteConfig& config) { return config.output_path.empty() ? "<stdout>" : config.output_path; }

int run_eval(const Args& a) {
    const EvalArgs& e = a.eval;
    std::vector<Polytope> bodies;
    for (const std::string& path : e.bodies) bodies.push_back(read_body(path));
    if (bodies.empty()) throw GeometryError(ErrorKind::InvalidArgument, "eval needs at least one --body");
    const int n = bodies[0].dim();
    for (const Polytope& b : bodies)
        if (b.dim() != n) throw GeometryError(ErrorKind::DimensionMismatch, "bodies differ in dimension");
    auto need = [&](std::size_t k) {
        if (bodies.size() != k) {
            throw GeometryError(ErrorKind::WrongArity, e.functional + " needs " + std::to_string(k) + " bodies");
        }
    };
    const std::string& f = e.functional;
    if (f == "W") {
        need(1);
        std::printf("%.12g\n", quermassintegral(bodies[0], e.i));
    } else if (f == "volume") {
        need(1);
        std::printf("%.12g\n", bodies[0].volume());
    } else if (f == "steiner") {
        need(1);
        const QuermassVector q = steiner_fit(bodies[0], a.config.ball_level);
        for (int i = 0; i <= n; ++i) std::printf("W_%d %.12g +- %.3g\n", i, q.values[i], q.half_widths[i]);
    } else if (f == "Wmixed") {
        need(2);
        const Bracketed w = mixed_quermassintegral(bodies[0], bodies[1], e.i, a.config.ball_level);
        std::printf("%.12g +- %.3g\n", w.value, w.half_width);
    } else if (f == "Wp") {
        need(2);
        std::printf("%.12g\n", mixed_p_quermassintegral(bodies[0], bodies[1], e.i, e.p, a.config.grid_level));
    } else if (f == "Dw") {
        need(2);
        std::printf("%.12g\n", quermass_difference(bodies[0], bodies[1], e.i));
    } else if (f == "V") {
        need(static_cast<std::size_t>(n));
        std::printf("%.12g\n", mixed_volume(std::span<const Polytope>(bodies)));
    } else if (f == "pi_support") {
        need(static_cast<std::size_t>(n - 1));
        if (static_cast<int>(e.direction.size()) != n) {
            throw GeometryError(ErrorKind::DimensionMismatch, "--direction needs " + std::to_string(n) + " components");
        }
        Vec u{};
        for (int k = 0; k < n; ++k) u[k] = e.direction[k];
        if (norm(u) == 0.0) throw GeometryError(ErrorKind::InvalidArgument, "direction must be nonzero");
        std::vector<const Polytope*> slots;
        for (const Polytope& b : bodies) slots.push_back(&b);
        std::printf("%.12g\n", projection_support(slots, n, normalized(u)));
    } else if (f == "pi_volume") {
        need(1);
        std::vector<const Polytope*> slots(n - 1 - e.j, &bodies[0]);
        for (int k = 0; k < e.j; ++k) slots.push_back(nullptr);
        ProjectionSpec spec{n, slots, projection_grid(n, a.config.grid_level, slots)};
        std::printf("%.12g\n", projection_body(spec).volume());
    } else {
        throw GeometryError(ErrorKind::InvalidArgument, "unknown functional " + f);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quermassintegral inequalities: verification, equality probes and conjecture search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Args a;

    CLI::App* verify = app.add_subcommand("verify", "Check every inequality on seeded random instances");
    add_common(verify, a);
    add_sweep(verify, a);

    CLI::App* equality = app.add_subcommand("equality", "Probe equality cases and reduction chains");
    add_common(equality, a);
    add_sweep(equality, a);
    equality->add_option("--families", a.config.families, "Homothetic families per id")->capture_default_str();

    CLI::App* search = app.add_subcommand("search", "Random search on the two open problems (n = 3)");
    add_common(search, a);
    search->add_option("problems", a.config.problems, "problem1, problem2, af_special, af_special_pi");
    search->add_option("--r", a.config.r_values, "Values of r")->delimiter(',');
    search->add_option("--nest", a.nest, "How inner bodies are drawn")
        ->check(CLI::IsMember({"homothetic", "random"}))
        ->capture_default_str();
    search->add_option("--search-tol", a.config.search_tolerance, "Violation threshold on rel_slack")->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "Evaluate one functional on body files");
    eval->add_option("functional", a.eval.functional, "W, volume, steiner, Wmixed, Wp, Dw, V, pi_support, pi_volume")
        ->required();
    eval->add_option("--body", a.eval.bodies, "Body file (repeatable, in slot order)")->required();
    eval->add_option("--i", a.eval.i, "Index i")->capture_default_str();
    eval->add_option("--j", a.eval.j, "Index j")->capture_default_str();
    eval->add_option("--p", a.eval.p, "Exponent p")->capture_default_str();
    eval->add_option("--direction", a.eval.direction, "Direction u")->delimiter(',');
    eval->add_option("--ball-level", a.config.ball_level, "Polytopal ball level")->capture_default_str();
    eval->add_option("--grid-level", a.config.grid_level, "Direction grid level")->capture_default_str();

    CLI::App* selftest = app.add_subcommand("selftest", "Oracle cross-checks");
    add_common(selftest, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        apply(a);
    } catch (const GeometryError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }

    const SuiteConfig& c = a.config;
    const bool csv = c.output_format == "csv";
    try {
        if (*eval) {
            try {
                return run_eval(a);
            } catch (const GeometryError& e) {
                std::cerr << "eval: " << e.what() << '\n';
                return kExitConfig;
            }
        }
        if (*verify) {
            const VerifyResult r = run_verify(c);
            emit(c, csv ? verify_csv(r) : verify_json(c, r));
            if (r.persistent_violations > 0) {
                std::cerr << r.persistent_violations << " violation candidate(s); report: " << where(c) << '\n';
                return kExitViolation;
            }
            if (!r.errors.empty()) {
                std::cerr << r.errors.size() << " check(s) failed to evaluate; report: " << where(c) << '\n';
                return kExitError;
            }
            return kExitOk;
        }
        if (*equality) {
            const EqualityResult r = run_equality(c);
            emit(c, csv ? equality_csv(r) : equality_json(c, r));
            if (r.witness_failures > 0) {
                std::cerr << r.witness_failures << " equality witness(es) outside tolerance; report: " << where(c) << '\n';
                return kExitViolation;
            }
            if (r.chain_failures > 0) {
                std::cerr << r.chain_failures << " reduction chain(s) disagree; report: " << where(c) << '\n';
                return kExitOracle;
            }
            if (!r.errors.empty()) {
                std::cerr << r.errors.size() << " probe(s) failed to evaluate; report: " << where(c) << '\n';
                return kExitError;
            }
            return kExitOk;
        }
        if (*search) {
            const SearchResult r = run_search(c);
            emit(c, csv ? search_csv(r) : search_json(c, r));
            if (r.contract_violations > 0) {
                std::cerr << r.contract_violations << " point specialisation(s) below tolerance; report: " << where(c)
                          << '\n';
                return kExitViolation;
            }
            return kExitOk;
        }
        if (*selftest) {
            const SelftestResult r = run_selftest(c);
            emit(c, csv ? selftest_csv(r) : selftest_json(c, r));
            if (r.mismatches > 0) {
                std::cerr << r.mismatches << " oracle mismatch(es); report: " << where(c) << '\n';
                return kExitOracle;
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}
