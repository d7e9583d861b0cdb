#include "gridups/oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "gridups/errors.hpp"

namespace gridups {

std::int64_t total_dimension(const BigradedDims& dims) {
    std::int64_t total = 0;
    for (const auto& [_, d] : dims) total += d;
    return total;
}

// LaurentPoly -----------------------------------------------------------------

std::int64_t LaurentPoly::at(int exponent) const {
    const auto it = coeffs.find(exponent);
    return it == coeffs.end() ? 0 : it->second;
}

std::int64_t LaurentPoly::evaluate_at_minus_one() const {
    std::int64_t v = 0;
    for (const auto& [e, c] : coeffs) v += (e % 2 == 0) ? c : -c;
    return v;
}

std::int64_t LaurentPoly::evaluate_at_one() const {
    std::int64_t v = 0;
    for (const auto& [_, c] : coeffs) v += c;
    return v;
}

bool LaurentPoly::symmetric() const {
    for (const auto& [e, c] : coeffs)
        if (at(-e) != c) return false;
    return true;
}

std::string LaurentPoly::to_string() const {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const auto [e, c] = *it;
        const std::int64_t mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            out << mag;
            continue;
        }
        if (mag != 1) out << mag;
        out << 'q';
        if (e != 1) out << '^' << e;
    }
    return out.str();
}

LaurentPoly make_laurent(std::initializer_list<std::pair<int, std::int64_t>> terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms)
        if (c != 0) p.coeffs[e] += c;
    std::erase_if(p.coeffs, [](const auto& kv) { return kv.second == 0; });
    return p;
}

// Tilde homology ---------------------------------------------------------------

namespace {

// Rank over F_2 of a sparse matrix given as columns of sorted row indices.
std::int64_t gf2_rank(std::vector<std::vector<std::uint32_t>> columns) {
    std::unordered_map<std::uint32_t, std::size_t> owner;  // lowest row -> column
    std::int64_t rank = 0;
    std::vector<std::uint32_t> merged;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        auto& col = columns[j];
        while (!col.empty()) {
            const auto it = owner.find(col.back());
            if (it == owner.end()) break;
            const auto& other = columns[it->second];
            merged.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(merged));
            col.swap(merged);
        }
        if (!col.empty()) {
            owner.emplace(col.back(), j);
            ++rank;
        }
    }
    return rank;
}

} // namespace

BigradedDims tilde_homology(const TildeComplex& c) {
    // Group generators into bidegree blocks and index them locally.
    std::map<Bigrading, std::vector<std::uint32_t>> blocks;
    for (std::uint32_t x = 0; x < c.gens.size(); ++x) blocks[c.gens[x]].push_back(x);
    std::vector<std::uint32_t> local(c.gens.size());
    for (const auto& [_, members] : blocks)
        for (std::uint32_t i = 0; i < members.size(); ++i) local[members[i]] = i;

    std::map<Bigrading, std::int64_t> rank_out;
    for (const auto& [deg, members] : blocks) {
        std::vector<std::vector<std::uint32_t>> columns;
        columns.reserve(members.size());
        for (const auto x : members) {
            std::vector<std::uint32_t> col;
            for (const auto y : c.out[x]) {
                if (c.gens[y] != Bigrading{deg.maslov - 1, deg.alexander})
                    throw InvariantViolation("tilde differential leaves its bidegree block");
                col.push_back(local[y]);
            }
            std::sort(col.begin(), col.end());
            columns.push_back(std::move(col));
        }
        rank_out[deg] = gf2_rank(std::move(columns));
    }

    BigradedDims dims;
    for (const auto& [deg, members] : blocks) {
        const auto in_it = rank_out.find({deg.maslov + 1, deg.alexander});
        const std::int64_t rank_in = in_it == rank_out.end() ? 0 : in_it->second;
        const std::int64_t d = static_cast<std::int64_t>(members.size()) - rank_out[deg] - rank_in;
        if (d < 0) throw InvariantViolation("negative homology dimension; d^2 != 0");
        if (d > 0) dims[deg] = d;
    }
    return dims;
}

BigradedDims tilde_homology(const GridDiagram& g, const SizeLimits& limits) {
    return tilde_homology(build_tilde_complex(g, limits));
}

BigradedDims state_census(const GridDiagram& g, const SizeLimits& limits) {
    BigradedDims dims;
    for_each_state(
        g, [&](const GridState& x) { ++dims[{x.maslov, x.alexander}]; }, limits);
    return dims;
}

// Euler characteristic and division ---------------------------------------------

namespace {

// Exact division of sum p[a] q^a by (1 + sign * q^-1). Returns nullopt when
// there is a remainder.
std::optional<std::map<int, std::int64_t>> divide_by_linear(const std::map<int, std::int64_t>& p, int sign) {
    if (p.empty()) return std::map<int, std::int64_t>{};
    const int lo = p.begin()->first;
    const int hi = p.rbegin()->first;
    // (1 + sign q^-1) s = p  =>  s[a] = p[a] - sign * s[a+1], top down.
    std::map<int, std::int64_t> s;
    std::int64_t above = 0;
    for (int a = hi; a >= lo; --a) {
        const auto it = p.find(a);
        const std::int64_t pa = it == p.end() ? 0 : it->second;
        const std::int64_t sa = pa - sign * above;
        if (a == lo) {
            if (sa != 0) return std::nullopt;
            break;
        }
        if (sa != 0) s[a] = sa;
        above = sa;
    }
    return s;
}

} // namespace

LaurentPoly alexander_from_euler(const BigradedDims& dims, int n) {
    std::map<int, std::int64_t> chi;
    for (const auto& [deg, d] : dims) chi[deg.alexander] += (deg.maslov % 2 == 0) ? d : -d;
    std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
    for (int i = 0; i < n - 1; ++i) {
        auto q = divide_by_linear(chi, -1);
        if (!q) throw ValidationError("Euler characteristic is not divisible by (1 - q^-1)^(n-1)");
        chi = std::move(*q);
    }
    if (chi.empty()) throw ValidationError("Euler characteristic vanishes; not a knot grid");
    const int lo = chi.begin()->first;
    const int hi = chi.rbegin()->first;
    if ((hi - lo) % 2 != 0) throw ValidationError("Euler characteristic has odd span; not a knot grid");
    const int shift = -(lo + hi) / 2;
    LaurentPoly delta;
    for (const auto& [e, c] : chi) delta.coeffs[e + shift] = c;
    if (delta.evaluate_at_one() < 0)
        for (auto& [_, c] : delta.coeffs) c = -c;
    if (delta.evaluate_at_one() != 1 || !delta.symmetric())
        throw ValidationError("quotient " + delta.to_string() + " is not the Alexander polynomial of a knot");
    return delta;
}

BigradedDims hat_homology_from_tilde(const BigradedDims& tilde, int n) {
    // The factor has gradings (0,0) and (-1,-1), so it preserves M - A and
    // each diagonal divides separately by (1 + q^-1)^(n-1).
    std::map<int, std::map<int, std::int64_t>> diagonals;
    for (const auto& [deg, d] : tilde) diagonals[deg.maslov - deg.alexander][deg.alexander] = d;
    BigradedDims hat;
    for (auto& [delta, poly] : diagonals) {
        for (int i = 0; i < n - 1; ++i) {
            auto q = divide_by_linear(poly, +1);
            if (!q) throw InvariantViolation("tilde homology is not a multiple of the (n-1)-fold factor");
            poly = std::move(*q);
        }
        for (const auto& [a, d] : poly) {
            if (d < 0) throw InvariantViolation("negative hat homology dimension");
            if (d > 0) hat[{a + delta, a}] = d;
        }
    }
    return hat;
}

std::optional<int> thin_diagonal(const BigradedDims& dims) {
    std::optional<int> delta;
    for (const auto& [deg, d] : dims) {
        if (d == 0) continue;
        const int here = deg.maslov - deg.alexander;
        if (delta && *delta != here) return std::nullopt;
        delta = here;
    }
    return delta;
}

std::string poincare_string(const BigradedDims& dims) {
    std::vector<std::pair<Bigrading, std::int64_t>> terms(dims.begin(), dims.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a.first.alexander != b.first.alexander ? a.first.alexander > b.first.alexander
                                                      : a.first.maslov > b.first.maslov;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [deg, d] : terms) {
        if (!first) out << " + ";
        first = false;
        if (d != 1) out << d;
        out << "u^" << deg.maslov << " q^" << deg.alexander;
    }
    return first ? "0" : out.str();
}

// Dense elimination ------------------------------------------------------------

namespace {

constexpr std::int64_t kZero = std::numeric_limits<std::int64_t>::min();

class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t n) : n_(n), cells_(n * n, kZero) {}
    std::int64_t& at(std::size_t row, std::size_t col) { return cells_[row * n_ + col]; }
    std::int64_t at(std::size_t row, std::size_t col) const { return cells_[row * n_ + col]; }

    // cell += v^e over F_2; parallel terms must carry equal exponents.
    void add(std::size_t row, std::size_t col, std::int64_t e) {
        auto& cell = at(row, col);
        if (cell == kZero) {
            cell = e;
        } else if (cell == e) {
            cell = kZero;
        } else {
            throw InvariantViolation("dense elimination met an inhomogeneous entry");
        }
    }

private:
    std::size_t n_;
    std::vector<std::int64_t> cells_;
};

} // namespace

BarSummary brute_force_homology_at_t(const TModComplex& c, std::size_t max_generators) {
    const std::size_t n = c.size();
    if (n > max_generators)
        throw ValidationError("oracle elimination is limited to " + std::to_string(max_generators) +
                              " generators, got " + std::to_string(n));
    const std::int64_t den = c.t.denominator();
    auto scale = [den](const Rational& r) {
        const Rational s = r * den;
        if (s.denominator() != 1) throw InvariantViolation("exponent outside Z + tZ");
        return s.numerator();
    };

    // Rows index the target basis, columns the source basis.
    DenseMatrix d(n);
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& a : c.out[x]) d.add(a.dst, x, scale(a.alpha));

    std::vector<bool> row_done(n, false);
    std::vector<bool> col_done(n, false);
    // Minimum exponent of each open column over open rows; kZero when empty.
    std::vector<std::int64_t> col_min(n, kZero);
    std::vector<std::size_t> col_min_row(n, 0);
    auto refresh = [&](std::size_t col) {
        col_min[col] = kZero;
        for (std::size_t r = 0; r < n; ++r) {
            if (row_done[r]) continue;
            const auto e = d.at(r, col);
            if (e != kZero && (col_min[col] == kZero || e < col_min[col])) {
                col_min[col] = e;
                col_min_row[col] = r;
            }
        }
    };
    for (std::size_t col = 0; col < n; ++col) refresh(col);

    BarSummary result;
    result.t = c.t;
    std::vector<Rational> pivot_row_grades;
    std::vector<Rational> pivot_col_grades;
    while (true) {
        std::size_t pc = n;
        for (std::size_t col = 0; col < n; ++col) {
            if (col_done[col] || col_min[col] == kZero) continue;
            if (pc == n || col_min[col] < col_min[pc]) pc = col;
        }
        if (pc == n) break;
        const std::size_t pr = col_min_row[pc];
        const std::int64_t e = d.at(pr, pc);

        // Row operations clear the pivot column.
        std::vector<std::size_t> dirty;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == pr || d.at(r, pc) == kZero) continue;
            const std::int64_t shift = d.at(r, pc) - e;
            if (shift < 0) throw InvariantViolation("pivot is not of minimal exponent in its column");
            for (std::size_t col = 0; col < n; ++col)
                if (d.at(pr, col) != kZero) d.add(r, col, d.at(pr, col) + shift);
        }
        // Column operations clear the pivot row; with the column already
        // cleared they only touch row pr.
        for (std::size_t col = 0; col < n; ++col) {
            if (col == pc || d.at(pr, col) == kZero) continue;
            if (d.at(pr, col) < e) throw InvariantViolation("pivot is not of minimal exponent in its row");
            d.at(pr, col) = kZero;
            dirty.push_back(col);
        }
        row_done[pr] = true;
        col_done[pc] = true;
        pivot_row_grades.push_back(c.grt[pr]);
        pivot_col_grades.push_back(c.grt[pc]);
        if (e > 0) result.bars.push_back({c.grt[pr], Rational(e, den)});
        // Row operations may have changed any column that row pr touched.
        for (const auto col : dirty) refresh(col);
        for (std::size_t col = 0; col < n; ++col)
            if (!col_done[col] && col_min[col] != kZero && row_done[col_min_row[col]]) refresh(col);
    }

    // Free part: all gradings minus pivot rows minus pivot columns.
    std::vector<Rational> free(c.grt.begin(), c.grt.end());
    auto remove = [&free](const Rational& g) {
        const auto it = std::find(free.begin(), free.end(), g);
        if (it == free.end()) throw InvariantViolation("graded rank count does not balance");
        free.erase(it);
    };
    for (const auto& g : pivot_row_grades) remove(g);
    for (const auto& g : pivot_col_grades) remove(g);
    for (const auto& g : free) result.bars.push_back({g, std::nullopt});
    canonicalize(result);
    return result;
}

} // namespace gridups
