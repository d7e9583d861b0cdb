#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridups/complex.hpp"
#include "gridups/rational.hpp"

namespace gridups {

/// x -> v^alpha y.
struct TArrow {
    std::uint32_t dst = 0;
    Rational alpha;
    bool operator==(const TArrow&) const = default;
};

/// The t-modified complex over the long power series ring, kept as v-exponent
/// bookkeeping only: every entry of the differential is v^alpha times a unit.
struct TModComplex {
    Rational t;
    std::vector<Rational> grt;              // M - tA per generator
    std::vector<std::vector<TArrow>> out;   // sorted by dst

    std::size_t size() const noexcept { return grt.size(); }
};

/// A summand of H(C^t): R/(v^len) when len is set, a free R otherwise.
struct Bar {
    Rational g;
    std::optional<Rational> len;

    bool infinite() const noexcept { return !len.has_value(); }
    bool operator==(const Bar&) const = default;
};

struct BarSummary {
    Rational t;
    std::vector<Bar> bars;  // canonical order: by g descending, finite before infinite, then len

    std::vector<Rational> infinite_gradings() const;  // descending
    std::size_t infinite_count() const;
    bool operator==(const BarSummary&) const = default;
};

/// Sorts bars into the canonical order so summaries compare with ==.
void canonicalize(BarSummary& s);

/// grt = M - tA, alpha = 2k + t(A(x) - A(y)). Throws ValidationError unless
/// 0 <= t <= 1.
TModComplex t_modify(const FilteredUComplex& c, const Rational& t);

struct TModCheck {
    bool homogeneous = true;      // alpha = grt(y) - grt(x) + 1
    bool nonnegative = true;      // alpha >= 0
    bool d_squared_zero = true;
    std::string first_failure;

    bool ok() const noexcept { return homogeneous && nonnegative && d_squared_zero; }
};

TModCheck check_tmod_complex(const TModComplex& c);

/// Graded elimination: repeatedly split off an arrow of least exponent
/// (ties: least fill-in, then smallest (source, target)), recording a bar of that length at the
/// target's grading when the exponent is positive. Unpaired generators are
/// the infinite bars.
BarSummary homology_at_t(const TModComplex& c);

/// Largest grading of an infinite bar. Throws InvariantViolation if there is
/// none (impossible for a knot grid).
Rational upsilon_at(const FilteredUComplex& c, const Rational& t);
Rational max_infinite_grading(const BarSummary& s);

// {"t":"p/q","bars":[{"g":"a/b","len":"c/d"|"inf"}]}
std::string bars_to_json(const BarSummary& s);
BarSummary bars_from_json(std::string_view text);

} // namespace gridups
