#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridups/complex.hpp"
#include "gridups/grid.hpp"
#include "gridups/rational.hpp"

namespace gridups {

struct Breakpoint {
    Rational t;
    Rational v;
    bool operator==(const Breakpoint&) const = default;
};

/// Piecewise-linear function on [0, 2] with exact rational breakpoints.
/// Consecutive collinear breakpoints are always merged, so equal functions
/// have equal breakpoint lists.
class PLFunction {
public:
    PLFunction() = default;
    /// Requires t to start at 0, end at 2 and increase strictly; merges
    /// collinear runs. Throws InvariantViolation otherwise.
    explicit PLFunction(std::vector<Breakpoint> points);

    const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }
    Rational value(const Rational& t) const;
    std::vector<Rational> slopes() const;

    PLFunction operator-() const;
    PLFunction operator+(const PLFunction& other) const;
    PLFunction scaled(std::int64_t k) const;
    bool operator==(const PLFunction&) const = default;

private:
    std::vector<Breakpoint> points_;
};

/// The zero function on [0, 2].
PLFunction zero_function();

/// (1 - |t - 1|) * sigma / 2.
PLFunction alternating_upsilon(int sigma);

struct UpsilonOptions {
    /// Maximum bisection depth when a gap fails the collinearity check.
    int subdivision_limit = 8;
    /// Skip reduction; the candidate bound still uses the reduced span.
    bool reduce_first = true;
};

/// Exact Upsilon on [0, 2]: evaluations on [0, 1] at all p/q with
/// q <= 2(D + 1) (D the Alexander span of the reduced complex), each gap
/// certified by its midpoint, then reflected about t = 1. Evaluations run in
/// parallel.
PLFunction upsilon_function(const FilteredUComplex& c, const UpsilonOptions& opts = {});

/// Upsilon values at many t in parallel (t in [0, 1]).
std::vector<Rational> upsilon_values(const FilteredUComplex& c, const std::vector<Rational>& ts);

/// Minus the slope of the first segment.
int tau(const PLFunction& f);

/// Candidate breakpoints {0, 1} and p/q in lowest terms with 0 < p < q <= bound.
std::vector<Rational> farey_candidates(int bound);

// {"breakpoints":[{"t":"p/q","v":"r/s"}],"tau":n,"slopes":[..]}
std::string pl_to_json(const PLFunction& f);
PLFunction pl_from_json(std::string_view text);

/// "t,value" rows at t = 2i/resolution, i = 0..resolution, in decimal.
std::string pl_to_csv(const PLFunction& f, int resolution);

// Property harness --------------------------------------------------------------

struct PropertyResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

struct PropertyReport {
    std::string grid_name;
    std::vector<PropertyResult> results;
    bool all_passed() const;
};

enum class Property { endpoints, symmetry, mirror, stabilization, additivity };

const char* property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);

struct PropertyOptions {
    std::vector<Property> only;                 // empty: all
    std::vector<int> stabilization_rows = {0};
    int stabilization_depth = 1;                // successive stabilizations per row
    /// Summand diagrams when the grid is a designated connected sum.
    std::optional<std::pair<GridDiagram, GridDiagram>> summands;
    SizeLimits limits;
};

/// Endpoints, symmetry, mirror antisymmetry against reflect_horizontal,
/// stabilization invariance, and additivity when summands are given. Each
/// failure names the witnessing t. Checks that would exceed the size cap are
/// reported as skipped.
PropertyReport check_properties(const GridDiagram& g, const PropertyOptions& opts = {});

/// First t at which two functions differ (among the union of breakpoints).
std::optional<Rational> first_difference(const PLFunction& a, const PLFunction& b);

/// Upsilon of a grid, reduction included.
PLFunction grid_upsilon(const GridDiagram& g, const SizeLimits& limits = {});

} // namespace gridups
