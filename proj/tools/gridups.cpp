// gridups: Upsilon, tau and grid homology of knots from grid diagrams.
//
//   gridups validate FILE
//   gridups upsilon FILE (--t p/q | --full) [--json] [--csv RES] [--no-reduce]
//   gridups invariants FILE [--json]
//   gridups homology FILE --t p/q [--json] [--no-reduce]
//   gridups checks [--entry NAME]... [--only PROPERTY]... [--stabilize-depth K]
//   gridups dataset list
//
// Exit codes: 0 ok, 1 validation failure, 2 size cap exceeded, 3 internal
// invariant violation.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridups/complex.hpp"
#include "gridups/dataset.hpp"
#include "gridups/errors.hpp"
#include "gridups/grid.hpp"
#include "gridups/oracle.hpp"
#include "gridups/tmod.hpp"
#include "gridups/upsilon.hpp"

using namespace gridups;

namespace {

struct Options {
    int max_n = SizeLimits::from_env().max_n;
    std::string data_dir = default_data_dir();
    std::string path;
    std::string t_text;
    bool full = false;
    bool json = false;
    int csv = 0;
    bool no_reduce = false;
    std::vector<std::string> entries;
    std::vector<std::string> only;
    int stabilize_depth = 1;
};

SizeLimits limits_of(const Options& o) { return SizeLimits{o.max_n}; }

Rational parse_t(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("--t: ") + e.what());
    }
}

// Upsilon on [0, 2]: values past 1 come from the reflection t -> 2 - t.
Rational upsilon_any_t(const FilteredUComplex& c, const Rational& t) {
    if (t < Rational(0) || t > Rational(2)) throw ValidationError("t = " + to_string(t) + " is outside [0, 2]");
    return upsilon_at(c, t > Rational(1) ? Rational(2) - t : t);
}

FilteredUComplex complex_for(const GridDiagram& g, const Options& o) {
    auto c = build_quotient_complex(g, limits_of(o));
    return o.no_reduce ? c : reduce(c);
}

std::string breakpoints_text(const PLFunction& f) {
    std::string s;
    for (const auto& p : f.breakpoints()) {
        if (!s.empty()) s += ' ';
        s += "(" + to_string(p.t) + ", " + to_string(p.v) + ")";
    }
    return s;
}

int cmd_validate(const Options& o) {
    const auto g = load_grid_file(o.path);
    require_knot(g);
    check_size(g, limits_of(o));
    const auto tilde = tilde_homology(g, limits_of(o));
    const auto delta = alexander_from_euler(tilde, g.size());
    const auto diagonal = thin_diagonal(tilde);
    std::cout << "file: " << o.path << '\n'
              << "n: " << g.size() << '\n'
              << "alexander: " << delta.to_string() << '\n'
              << "determinant: " << std::abs(delta.evaluate_at_minus_one()) << '\n';
    if (diagonal)
        std::cout << "thin: yes (M - A = " << *diagonal << ")\nsigma: " << 2 * *diagonal << '\n';
    else
        std::cout << "thin: no\n";
    std::cout << "status: OK\n";
    return 0;
}

int cmd_upsilon(const Options& o) {
    const auto g = load_grid_file(o.path);
    if (!o.t_text.empty()) {
        const auto t = parse_t(o.t_text);
        const auto v = upsilon_any_t(complex_for(g, o), t);
        if (o.json)
            std::cout << nlohmann::json{{"t", to_string(t)}, {"upsilon", to_string(v)}}.dump() << '\n';
        else
            std::cout << to_string(v) << '\n';
        return 0;
    }
    const auto f = upsilon_function(build_quotient_complex(g, limits_of(o)),
                                    UpsilonOptions{.reduce_first = !o.no_reduce});
    if (o.csv > 0) {
        std::cout << pl_to_csv(f, o.csv);
    } else if (o.json) {
        std::cout << pl_to_json(f) << '\n';
    } else {
        std::cout << "breakpoints: " << breakpoints_text(f) << '\n' << "slopes:";
        for (const auto& s : f.slopes()) std::cout << ' ' << to_string(s);
        std::cout << "\ntau: " << tau(f) << '\n';
    }
    return 0;
}

int cmd_invariants(const Options& o) {
    const auto g = load_grid_file(o.path);
    const auto f = grid_upsilon(g, limits_of(o));
    const auto tilde = tilde_homology(g, limits_of(o));
    const auto hat = hat_homology_from_tilde(tilde, g.size());
    const auto delta = alexander_from_euler(tilde, g.size());
    const auto diagonal = thin_diagonal(hat);
    const auto det = std::abs(delta.evaluate_at_minus_one());
    if (o.json) {
        nlohmann::json j = nlohmann::json::parse(pl_to_json(f));
        nlohmann::json ghat = nlohmann::json::array();
        for (const auto& [deg, d] : hat) ghat.push_back({{"M", deg.maslov}, {"A", deg.alexander}, {"dim", d}});
        j["hat_homology"] = ghat;
        j["thin"] = diagonal.has_value();
        if (diagonal) j["delta"] = *diagonal;
        j["alexander"] = delta.to_string();
        j["determinant"] = det;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "tau: " << tau(f) << '\n'
              << "upsilon: " << breakpoints_text(f) << '\n'
              << "hat homology: " << poincare_string(hat) << '\n'
              << "tilde homology dimension: " << total_dimension(tilde) << '\n';
    if (diagonal)
        std::cout << "thin: yes (delta = " << *diagonal << ")\n";
    else
        std::cout << "thin: no\n";
    std::cout << "alexander: " << delta.to_string() << '\n' << "determinant: " << det << '\n';
    return 0;
}

int cmd_homology(const Options& o) {
    const auto g = load_grid_file(o.path);
    const auto bars = homology_at_t(t_modify(complex_for(g, o), parse_t(o.t_text)));
    if (o.json) {
        std::cout << bars_to_json(bars) << '\n';
        return 0;
    }
    std::cout << "t: " << to_string(bars.t) << '\n'
              << "infinite bars: " << bars.infinite_count() << '\n'
              << "upsilon: " << to_string(max_infinite_grading(bars)) << '\n';
    for (const auto& b : bars.bars)
        std::cout << "  g=" << to_string(b.g) << " len=" << (b.len ? to_string(*b.len) : "inf") << '\n';
    return 0;
}

int cmd_checks(const Options& o) {
    const auto ds = load_dataset(o.data_dir);
    PropertyOptions popts;
    popts.limits = limits_of(o);
    popts.stabilization_depth = o.stabilize_depth;
    for (const auto& name : o.only) {
        const auto p = property_from_name(name);
        if (!p) throw ValidationError("unknown property \"" + name + "\"");
        popts.only.push_back(*p);
    }
    bool ok = true;
    for (const auto& e : ds.entries()) {
        if (!o.entries.empty() && std::find(o.entries.begin(), o.entries.end(), e.name) == o.entries.end())
            continue;
        if (e.grid.size() > popts.limits.max_n) {
            std::cout << e.name << "  skipped (n = " << e.grid.size() << " exceeds cap " << popts.limits.max_n
                      << ")\n";
            continue;
        }
        popts.summands = ds.summands_of(e);
        const auto report = check_properties(e.grid, popts);
        for (const auto& r : report.results) {
            const char* status = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
            std::cout << e.name << "  " << r.name << "  " << status;
            if (!r.detail.empty()) std::cout << "  " << r.detail;
            std::cout << '\n';
        }
        ok = ok && report.all_passed();
    }
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? 0 : static_cast<int>(ExitCode::invariant_violation);
}

int cmd_dataset_list(const Options& o) {
    const auto ds = load_dataset(o.data_dir);
    for (const auto& e : ds.entries()) {
        std::cout << e.name << "  n=" << e.grid.size() << "  file=" << e.file
                  << "  alexander=" << e.alexander.to_string();
        if (e.sigma) std::cout << "  sigma=" << *e.sigma;
        if (!e.tags.empty()) {
            std::cout << "  tags=";
            for (std::size_t i = 0; i < e.tags.size(); ++i) std::cout << (i ? "," : "") << e.tags[i];
        }
        std::cout << '\n';
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Grid homology Upsilon invariant of knots"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--max-n", o.max_n, "Largest grid size to enumerate (default 9, or $GRIDUPS_MAX_N)")
        ->check(CLI::Range(2, 12));
    app.add_option("--data", o.data_dir, "Dataset directory containing manifest.json");

    auto* validate = app.add_subcommand("validate", "Parse and certify a grid file");
    validate->add_option("file", o.path)->required();

    auto* upsilon = app.add_subcommand("upsilon", "Upsilon at one t or as a PL function");
    upsilon->add_option("file", o.path)->required();
    auto* t_opt = upsilon->add_option("--t", o.t_text, "Exact rational in [0, 2], e.g. 1/2");
    auto* full_opt = upsilon->add_flag("--full", o.full, "Whole PL function on [0, 2]");
    t_opt->excludes(full_opt);
    upsilon->add_flag("--json", o.json, "JSON output");
    upsilon->add_option("--csv", o.csv, "CSV samples at this many intervals over [0, 2]")->check(CLI::PositiveNumber);
    upsilon->add_flag("--no-reduce", o.no_reduce, "Skip algebraic reduction");

    auto* invariants = app.add_subcommand("invariants", "tau, Upsilon, hat homology, Alexander polynomial");
    invariants->add_option("file", o.path)->required();
    invariants->add_flag("--json", o.json, "JSON output");

    auto* homology = app.add_subcommand("homology", "Bar summary of the t-modified complex");
    homology->add_option("file", o.path)->required();
    homology->add_option("--t", o.t_text, "Exact rational in [0, 1]")->required();
    homology->add_flag("--json", o.json, "JSON output");
    homology->add_flag("--no-reduce", o.no_reduce, "Skip algebraic reduction");

    auto* checks = app.add_subcommand("checks", "Property checks over the dataset");
    checks->add_option("--entry", o.entries, "Restrict to these dataset entries");
    checks->add_option("--only", o.only, "endpoints, symmetry, mirror, stabilize, additivity");
    checks->add_option("--stabilize-depth", o.stabilize_depth, "Successive stabilizations to compare against")
        ->check(CLI::Range(1, 4));

    auto* dataset = app.add_subcommand("dataset", "Bundled dataset");
    auto* list = dataset->add_subcommand("list", "List dataset entries");
    dataset->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::validation_failure);
    }

    if (validate->parsed()) return cmd_validate(o);
    if (upsilon->parsed()) {
        if (o.t_text.empty() && !o.full && o.csv == 0) throw ValidationError("upsilon needs --t or --full");
        return cmd_upsilon(o);
    }
    if (invariants->parsed()) return cmd_invariants(o);
    if (homology->parsed()) return cmd_homology(o);
    if (checks->parsed()) return cmd_checks(o);
    if (list->parsed()) return cmd_dataset_list(o);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invariant_violation);
    }
}
