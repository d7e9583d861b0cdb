#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "gridups/complex.hpp"
#include "gridups/grid.hpp"
#include "gridups/tmod.hpp"

// Slow, independent computations that the fast path is checked against and
// that certify the bundled diagrams.

namespace gridups {

/// (M, A) -> dimension over F_2. Zero entries are never stored.
using BigradedDims = std::map<Bigrading, std::int64_t>;

std::int64_t total_dimension(const BigradedDims& dims);

/// Laurent polynomial with integer coefficients; zero coefficients are never
/// stored.
struct LaurentPoly {
    std::map<int, std::int64_t> coeffs;

    std::int64_t at(int exponent) const;
    std::int64_t evaluate_at_minus_one() const;
    std::int64_t evaluate_at_one() const;
    bool symmetric() const;
    std::string to_string() const;  // e.g. "q - 1 + q^-1"
    bool operator==(const LaurentPoly&) const = default;
};

LaurentPoly make_laurent(std::initializer_list<std::pair<int, std::int64_t>> terms);

/// Homology of the fully blocked complex, by mod-2 elimination in each
/// bidegree block.
BigradedDims tilde_homology(const TildeComplex& c);
BigradedDims tilde_homology(const GridDiagram& g, const SizeLimits& limits = {});

/// Number of grid states in each bidegree. Same Euler characteristic as the
/// tilde homology, at a fraction of the cost.
BigradedDims state_census(const GridDiagram& g, const SizeLimits& limits = {});

/// Divides sum (-1)^M q^A dims(M, A) by (1 - q^-1)^(n-1) and normalises to
/// the symmetric representative with Delta(1) = 1. Throws ValidationError
/// when the quotient is not an Alexander polynomial of a knot.
LaurentPoly alexander_from_euler(const BigradedDims& dims, int n);

/// Strips the (n-1)-fold two-dimensional factor (gradings (0,0), (-1,-1))
/// off a tilde homology, leaving the hat knot Floer dimensions. Throws
/// InvariantViolation if the division is not exact.
BigradedDims hat_homology_from_tilde(const BigradedDims& tilde, int n);

/// The common value of M - A if the support lies on one diagonal.
std::optional<int> thin_diagonal(const BigradedDims& dims);

/// "u^M q^A" monomials, sorted by A then M.
std::string poincare_string(const BigradedDims& dims);

inline constexpr std::size_t kOracleMaxGenerators = 2000;

/// Dense elimination over v-exponents with separate row and column bases.
/// Throws ValidationError above `max_generators` generators.
BarSummary brute_force_homology_at_t(const TModComplex& c, std::size_t max_generators = kOracleMaxGenerators);

} // namespace gridups
