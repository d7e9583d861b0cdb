#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridups/grid.hpp"

namespace gridups {

/// x -> U^k y with coefficient 1 over F_2.
struct UArrow {
    std::uint32_t dst = 0;
    std::uint32_t k = 0;
    bool operator==(const UArrow&) const = default;
};

/// Finitely generated, Maslov-graded, Alexander-filtered complex over F_2[U].
///
/// Generators carry (M, A); arrows are stored per source, sorted by target,
/// each present at most once (mod-2 sums are already collapsed). For grid
/// complexes `provenance()` maps generator ids back to state ranks.
class FilteredUComplex {
public:
    FilteredUComplex() = default;

    /// Sorts every arrow list; throws InvariantViolation on out-of-range or
    /// duplicate targets.
    FilteredUComplex(std::vector<Bigrading> gens, std::vector<std::vector<UArrow>> out,
                     std::vector<std::uint32_t> provenance = {});

    std::size_t size() const noexcept { return gens_.size(); }
    std::span<const Bigrading> generators() const noexcept { return gens_; }
    const Bigrading& gen(std::uint32_t id) const { return gens_[id]; }
    std::span<const UArrow> arrows_from(std::uint32_t id) const { return out_[id]; }
    std::size_t arrow_count() const noexcept;
    std::span<const std::uint32_t> provenance() const noexcept { return provenance_; }

    /// max A - min A over the generators; 0 for an empty complex.
    int alexander_span() const noexcept;

    bool operator==(const FilteredUComplex& other) const {
        return gens_ == other.gens_ && out_ == other.out_;
    }

private:
    std::vector<Bigrading> gens_;
    std::vector<std::vector<UArrow>> out_;
    std::vector<std::uint32_t> provenance_;
};

/// Fully blocked complex over F_2: only rectangles avoiding every marking.
struct TildeComplex {
    std::vector<Bigrading> gens;
    std::vector<std::vector<std::uint32_t>> out;  // sorted targets

    std::size_t arrow_count() const noexcept;
};

/// Quotient complex GC^-/(U_1 = ... = U_n): one generator per state (id =
/// Lehmer rank), an arrow x -> U^{#O(r)} y per empty rectangle, mod 2.
/// OpenMP-parallel over states.
FilteredUComplex build_quotient_complex(const GridDiagram& g, const SizeLimits& limits = {});

/// Straightforward single-threaded construction through the public state and
/// rectangle API. Kept as the reference the parallel kernel is tested against.
FilteredUComplex build_quotient_complex_serial(const GridDiagram& g, const SizeLimits& limits = {});

TildeComplex build_tilde_complex(const GridDiagram& g, const SizeLimits& limits = {});

/// Cancels arrows with k = 0 and no Alexander drop until none remain. Pivots
/// are taken in order of least fill-in (Markowitz cost), ties by (source,
/// target). Surviving generators keep their relative order and provenance.
FilteredUComplex reduce(const FilteredUComplex& c);

/// True when some arrow has k = 0 and A(x) = A(y).
bool has_cancellable_arrow(const FilteredUComplex& c);

/// Hom(C, F[U]) with the grading negated: x* at (-M, -A), and x -> U^k y
/// becomes y* -> U^k x*.
FilteredUComplex dualize(const FilteredUComplex& c);

/// Adds (dm, da) to every generator's bigrading.
FilteredUComplex shift_gradings(const FilteredUComplex& c, int dm, int da);

struct ComplexCheck {
    bool d_squared_zero = true;
    bool maslov_homogeneous = true;
    bool filtered = true;
    std::string first_failure;

    bool ok() const noexcept { return d_squared_zero && maslov_homogeneous && filtered; }
};

/// d^2 = 0 over F_2[U] (compositions grouped by target and U-power), Maslov
/// homogeneity M(y) - M(x) + 1 = 2k, filtration A(x) - A(y) + k >= 0.
ComplexCheck check_complex(const FilteredUComplex& c);

/// d^2 = 0, A preserved, M drops by one.
ComplexCheck check_tilde_complex(const TildeComplex& c);

// JSON dump: {"generators":[{"id","M","A"}], "arrows":[{"src","dst","k"}]}.
std::string complex_to_json(const FilteredUComplex& c);
FilteredUComplex complex_from_json(std::string_view text);

} // namespace gridups
