#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridups {

// Coordinates: rows are indexed bottom-to-top, columns left-to-right. Markings
// sit at cell centres (c + 1/2, r + 1/2); state points sit on lattice points
// (i, perm[i]). The grid is toroidal for rectangles and planar (fundamental
// domain [0,n)^2) for the grading formulas.

using Permutation = std::vector<int>;

/// Upper bound on grid size; n! states are enumerated, so the default keeps
/// the state space under ~3.6e5.
struct SizeLimits {
    int max_n = 9;

    /// Defaults overridden by GRIDUPS_MAX_N when set.
    static SizeLimits from_env();
};

/// An n x n grid diagram given by the column of the O and the X in each row.
class GridDiagram {
public:
    /// Validates both permutations and the no-collision rule; throws
    /// ValidationError naming the offending row or column.
    GridDiagram(std::vector<int> sigma_o, std::vector<int> sigma_x, std::string name = {});

    int size() const noexcept { return static_cast<int>(o_.size()); }
    std::span<const int> o() const noexcept { return o_; }
    std::span<const int> x() const noexcept { return x_; }
    int o_col(int row) const { return o_[static_cast<std::size_t>(row)]; }
    int x_col(int row) const { return x_[static_cast<std::size_t>(row)]; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Same markings; the name is a label only.
    bool operator==(const GridDiagram& other) const noexcept {
        return o_ == other.o_ && x_ == other.x_;
    }

private:
    std::vector<int> o_;
    std::vector<int> x_;
    std::string name_;
};

struct Bigrading {
    int maslov = 0;
    int alexander = 0;
    bool operator==(const Bigrading&) const = default;
    auto operator<=>(const Bigrading&) const = default;
};

struct GridState {
    Permutation perm;
    int maslov = 0;
    int alexander = 0;
};

/// A toroidal rectangle from x to y: x occupies the lower-left and upper-right
/// corners, y the other two. The rectangle spans columns left, left+1, ...,
/// right-1 (mod n).
struct Rectangle {
    Permutation source;
    Permutation target;
    int left = 0;
    int right = 0;
    int count_o = 0;
    int count_x = 0;
    bool empty = false;
};

// Text and JSON I/O --------------------------------------------------------

/// Parses the two-line text format ("O: c0 c1 ..." then "X: ..."); lines
/// starting with '#' and blank lines are ignored. Errors carry line/field.
GridDiagram parse_grid(std::string_view text, std::string name = {});

/// {"n": .., "O": [..], "X": [..], "name": ..}; "n" and "name" optional.
GridDiagram parse_grid_json(std::string_view text);

std::string format_grid(const GridDiagram& g);
std::string format_grid_json(const GridDiagram& g);

/// Reads a grid file; ".json" files use the JSON form. The name defaults to
/// the file stem.
GridDiagram load_grid_file(const std::string& path);

// Moves --------------------------------------------------------------------

/// Mirror image: every marking column c goes to n-1-c.
GridDiagram reflect_horizontal(const GridDiagram& g);

/// Splits the X of `row` into a 2x2 block (X at SW and NE, new O at NW),
/// inserting a new row above `row` and a new column right of the X. The
/// result represents the same knot on an (n+1)-grid.
GridDiagram stabilize(const GridDiagram& g, int row);

// States -------------------------------------------------------------------

std::uint64_t factorial(int n);

/// Number of link components traced by the markings.
int component_count(const GridDiagram& g);

/// Throws ValidationError unless the grid traces a single component.
void require_knot(const GridDiagram& g);

/// Throws CapExceeded when g.size() > limits.max_n.
void check_size(const GridDiagram& g, const SizeLimits& limits);

/// Lexicographic (Lehmer) rank; perm must be a permutation of 0..n-1, n <= 12.
std::uint32_t permutation_rank(std::span<const int> perm);
Permutation permutation_unrank(std::uint32_t rank, int n);

Bigrading bigrading(const GridDiagram& g, std::span<const int> perm);

/// Calls `fn` for every state in rank order without materialising the set.
void for_each_state(const GridDiagram& g, const std::function<void(const GridState&)>& fn,
                    const SizeLimits& limits = {});

std::vector<GridState> enumerate_states(const GridDiagram& g, const SizeLimits& limits = {});

/// All empty rectangles starting at the state `perm`.
std::vector<Rectangle> empty_rectangles(const GridDiagram& g, std::span<const int> perm);

/// All rectangles (empty or not) from `source` to `target`; at most two.
std::vector<Rectangle> rectangles_between(const GridDiagram& g, std::span<const int> source,
                                          std::span<const int> target);

} // namespace gridups
