#include "gridups/upsilon.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gridups/errors.hpp"
#include "gridups/tmod.hpp"

namespace gridups {

namespace {

Rational slope(const Breakpoint& a, const Breakpoint& b) { return (b.v - a.v) / (b.t - a.t); }

} // namespace

PLFunction::PLFunction(std::vector<Breakpoint> points) {
    if (points.size() < 2 || points.front().t != Rational(0) || points.back().t != Rational(2))
        throw InvariantViolation("PL function must cover [0, 2]");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].t <= points[i - 1].t) throw InvariantViolation("PL breakpoints must increase strictly");
    points_.push_back(points.front());
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        if (slope(points_.back(), points[i]) != slope(points[i], points[i + 1])) points_.push_back(points[i]);
    }
    points_.push_back(points.back());
}

Rational PLFunction::value(const Rational& t) const {
    if (points_.empty()) throw InvariantViolation("empty PL function");
    if (t < Rational(0) || t > Rational(2)) throw ValidationError("t = " + to_string(t) + " is outside [0, 2]");
    const auto it = std::lower_bound(points_.begin(), points_.end(), t,
                                     [](const Breakpoint& p, const Rational& s) { return p.t < s; });
    if (it->t == t) return it->v;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.v + (t - lo.t) * slope(lo, hi);
}

std::vector<Rational> PLFunction::slopes() const {
    std::vector<Rational> s;
    for (std::size_t i = 1; i < points_.size(); ++i) s.push_back(slope(points_[i - 1], points_[i]));
    return s;
}

PLFunction PLFunction::operator-() const { return scaled(-1); }

PLFunction PLFunction::scaled(std::int64_t k) const {
    auto pts = points_;
    for (auto& p : pts) p.v *= k;
    return PLFunction(std::move(pts));
}

PLFunction PLFunction::operator+(const PLFunction& other) const {
    std::set<Rational> ts;
    for (const auto& p : points_) ts.insert(p.t);
    for (const auto& p : other.points_) ts.insert(p.t);
    std::vector<Breakpoint> pts;
    for (const auto& t : ts) pts.push_back({t, value(t) + other.value(t)});
    return PLFunction(std::move(pts));
}

PLFunction zero_function() { return PLFunction({{0, 0}, {2, 0}}); }

PLFunction alternating_upsilon(int sigma) {
    return PLFunction({{0, 0}, {1, Rational(sigma, 2)}, {2, 0}});
}

std::vector<Rational> farey_candidates(int bound) {
    std::vector<Rational> ts{Rational(0), Rational(1)};
    for (int q = 2; q <= bound; ++q)
        for (int p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) ts.emplace_back(p, q);
    std::sort(ts.begin(), ts.end());
    return ts;
}

std::vector<Rational> upsilon_values(const FilteredUComplex& c, const std::vector<Rational>& ts) {
    std::vector<Rational> values(ts.size());
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            values[static_cast<std::size_t>(i)] = upsilon_at(c, ts[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(gridups_upsilon_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return values;
}

namespace {

// Certifies linearity on [a, b] through the midpoint, bisecting on failure.
void certify_gap(const FilteredUComplex& c, const Breakpoint& a, const Breakpoint& b, const Rational& mid_value,
                 int depth, int limit, std::vector<Breakpoint>& out) {
    const Rational mid = (a.t + b.t) / 2;
    if (mid_value == (a.v + b.v) / 2) return;
    if (depth >= limit) {
        throw InvariantViolation("Upsilon is not linear on [" + to_string(a.t) + ", " + to_string(b.t) +
                                 "] after " + std::to_string(limit) +
                                 " bisections; a breakpoint lies outside the candidate set");
    }
    const Breakpoint m{mid, mid_value};
    const auto quarters = upsilon_values(c, {(a.t + mid) / 2, (mid + b.t) / 2});
    certify_gap(c, a, m, quarters[0], depth + 1, limit, out);
    out.push_back(m);
    certify_gap(c, m, b, quarters[1], depth + 1, limit, out);
}

} // namespace

PLFunction upsilon_function(const FilteredUComplex& c, const UpsilonOptions& opts) {
    const FilteredUComplex reduced = reduce(c);
    const FilteredUComplex& work = opts.reduce_first ? reduced : c;
    const int span = reduced.alexander_span();
    const auto ts = farey_candidates(2 * (span + 1));

    std::vector<Rational> probe = ts;
    for (std::size_t i = 1; i < ts.size(); ++i) probe.push_back((ts[i - 1] + ts[i]) / 2);
    const auto values = upsilon_values(work, probe);

    std::vector<Breakpoint> half;
    half.push_back({ts[0], values[0]});
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const Breakpoint b{ts[i], values[i]};
        certify_gap(work, half.back(), b, values[ts.size() + i - 1], 0, opts.subdivision_limit, half);
        half.push_back(b);
    }

    if (half.front().v != Rational(0)) throw InvariantViolation("Upsilon(0) = " + to_string(half.front().v) + ", not 0");
    // Extend to (1, 2] by Upsilon(t) = Upsilon(2 - t).
    std::vector<Breakpoint> full = half;
    for (auto it = half.rbegin() + 1; it != half.rend(); ++it) full.push_back({2 - it->t, it->v});
    PLFunction f(std::move(full));
    for (const auto& s : f.slopes())
        if (!is_integer(s)) throw InvariantViolation("Upsilon has non-integer slope " + to_string(s));
    return f;
}

int tau(const PLFunction& f) {
    const auto s = f.slopes().front();
    if (!is_integer(s)) throw InvariantViolation("initial slope " + to_string(s) + " is not an integer");
    return static_cast<int>(-s.numerator());
}

std::string pl_to_json(const PLFunction& f) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : f.breakpoints()) pts.push_back({{"t", to_string(p.t)}, {"v", to_string(p.v)}});
    nlohmann::json slopes = nlohmann::json::array();
    for (const auto& s : f.slopes()) {
        if (is_integer(s))
            slopes.push_back(s.numerator());
        else
            slopes.push_back(to_string(s));
    }
    return nlohmann::json{{"breakpoints", pts}, {"tau", tau(f)}, {"slopes", slopes}}.dump();
}

PLFunction pl_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        std::vector<Breakpoint> pts;
        for (const auto& p : j.at("breakpoints"))
            pts.push_back({parse_rational(p.at("t").get<std::string>()), parse_rational(p.at("v").get<std::string>())});
        return PLFunction(std::move(pts));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed PL JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("PL JSON: ") + e.what());
    } catch (const InvariantViolation& e) {
        throw ValidationError(std::string("PL JSON: ") + e.what());
    }
}

std::string pl_to_csv(const PLFunction& f, int resolution) {
    if (resolution < 1) throw ValidationError("CSV resolution must be positive");
    std::ostringstream out;
    out << "t,value\n" << std::setprecision(12);
    for (int i = 0; i <= resolution; ++i) {
        const Rational t(2 * i, resolution);
        out << to_double(t) << ',' << to_double(f.value(t)) << '\n';
    }
    return out.str();
}

std::optional<Rational> first_difference(const PLFunction& a, const PLFunction& b) {
    std::set<Rational> ts;
    for (const auto& p : a.breakpoints()) ts.insert(p.t);
    for (const auto& p : b.breakpoints()) ts.insert(p.t);
    for (const auto& t : ts)
        if (a.value(t) != b.value(t)) return t;
    return std::nullopt;
}

PLFunction grid_upsilon(const GridDiagram& g, const SizeLimits& limits) {
    return upsilon_function(build_quotient_complex(g, limits));
}

// Property harness ---------------------------------------------------------------

bool PropertyReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed || r.skipped; });
}

const char* property_name(Property p) {
    switch (p) {
    case Property::endpoints: return "endpoints";
    case Property::symmetry: return "symmetry";
    case Property::mirror: return "mirror";
    case Property::stabilization: return "stabilize";
    case Property::additivity: return "additivity";
    }
    return "?";
}

std::optional<Property> property_from_name(std::string_view name) {
    for (auto p : {Property::endpoints, Property::symmetry, Property::mirror, Property::stabilization,
                   Property::additivity})
        if (name == property_name(p)) return p;
    return std::nullopt;
}

namespace {

PropertyResult compare(std::string name, const PLFunction& got, const PLFunction& want) {
    PropertyResult r{std::move(name), true, false, {}};
    if (const auto t = first_difference(got, want)) {
        r.passed = false;
        r.detail = "differs at t = " + to_string(*t) + ": " + to_string(got.value(*t)) + " vs " +
                   to_string(want.value(*t));
    }
    return r;
}

} // namespace

PropertyReport check_properties(const GridDiagram& g, const PropertyOptions& opts) {
    auto wanted = [&](Property p) {
        return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), p) != opts.only.end();
    };
    PropertyReport report;
    report.grid_name = g.name();
    const PLFunction f = grid_upsilon(g, opts.limits);

    if (wanted(Property::endpoints)) {
        PropertyResult r{"endpoints", true, false, {}};
        for (const Rational t : {Rational(0), Rational(2)}) {
            if (f.value(t) != Rational(0)) {
                r.passed = false;
                r.detail = "Upsilon(" + to_string(t) + ") = " + to_string(f.value(t));
                break;
            }
        }
        report.results.push_back(std::move(r));
    }
    if (wanted(Property::symmetry)) {
        PropertyResult r{"symmetry", true, false, {}};
        for (const auto& p : f.breakpoints()) {
            if (f.value(2 - p.t) != p.v) {
                r.passed = false;
                r.detail = "Upsilon(" + to_string(p.t) + ") != Upsilon(" + to_string(2 - p.t) + ")";
                break;
            }
        }
        report.results.push_back(std::move(r));
    }
    if (wanted(Property::mirror))
        report.results.push_back(compare("mirror", grid_upsilon(reflect_horizontal(g), opts.limits), -f));
    if (wanted(Property::stabilization)) {
        for (const int row : opts.stabilization_rows) {
            GridDiagram current = g;
            for (int level = 1; level <= opts.stabilization_depth; ++level) {
                const std::string name =
                    "stabilize(row " + std::to_string(row) + ", n=" + std::to_string(current.size() + 1) + ")";
                if (current.size() + 1 > opts.limits.max_n) {
                    report.results.push_back({name, false, true, "n exceeds the size cap"});
                    break;
                }
                current = stabilize(current, std::min(row, current.size() - 1));
                report.results.push_back(compare(name, grid_upsilon(current, opts.limits), f));
            }
        }
    }
    if (wanted(Property::additivity) && opts.summands) {
        const auto& [a, b] = *opts.summands;
        report.results.push_back(
            compare("additivity", f, grid_upsilon(a, opts.limits) + grid_upsilon(b, opts.limits)));
    }
    return report;
}

} // namespace gridups
