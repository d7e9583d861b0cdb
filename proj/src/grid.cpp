#include "gridups/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "gridups/detail/grid_kernel.hpp"
#include "gridups/errors.hpp"

namespace gridups {

namespace {

void check_permutation(const std::vector<int>& cols, char marking) {
    const int n = static_cast<int>(cols.size());
    std::vector<int> seen_in_row(static_cast<std::size_t>(n), -1);
    for (int r = 0; r < n; ++r) {
        const int c = cols[static_cast<std::size_t>(r)];
        if (c < 0 || c >= n) {
            throw ValidationError(std::string(1, marking) + " marking in row " + std::to_string(r) +
                                  " has column " + std::to_string(c) + " outside 0.." +
                                  std::to_string(n - 1));
        }
        auto& prev = seen_in_row[static_cast<std::size_t>(c)];
        if (prev >= 0) {
            throw ValidationError("column " + std::to_string(c) + " holds two " +
                                  std::string(1, marking) + " markings (rows " +
                                  std::to_string(prev) + " and " + std::to_string(r) + ")");
        }
        prev = r;
    }
}

} // namespace

CapExceeded::CapExceeded(int n, int cap)
    : Error("grid size " + std::to_string(n) + " exceeds the state-space cap max_n=" +
            std::to_string(cap) + " (" + std::to_string(factorial(n)) +
            " states); raise it with --max-n or GRIDUPS_MAX_N"),
      n_(n), cap_(cap) {}

SizeLimits SizeLimits::from_env() {
    SizeLimits limits;
    if (const char* env = std::getenv("GRIDUPS_MAX_N"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 2 || v > detail::kMaxGrid)
            throw ValidationError("GRIDUPS_MAX_N must be an integer in 2.." +
                                  std::to_string(detail::kMaxGrid));
        limits.max_n = static_cast<int>(v);
    }
    return limits;
}

GridDiagram::GridDiagram(std::vector<int> sigma_o, std::vector<int> sigma_x, std::string name)
    : o_(std::move(sigma_o)), x_(std::move(sigma_x)), name_(std::move(name)) {
    if (o_.size() != x_.size()) {
        throw ValidationError("O and X rows differ in length (" + std::to_string(o_.size()) +
                              " vs " + std::to_string(x_.size()) + ")");
    }
    if (o_.size() < 2) throw ValidationError("grid size must be at least 2");
    if (o_.size() > static_cast<std::size_t>(detail::kMaxGrid))
        throw ValidationError("grid size above " + std::to_string(detail::kMaxGrid) +
                              " is not supported");
    check_permutation(o_, 'O');
    check_permutation(x_, 'X');
    for (std::size_t r = 0; r < o_.size(); ++r) {
        if (o_[r] == x_[r]) throw ValidationError("marking collision in row " + std::to_string(r));
    }
}

GridDiagram reflect_horizontal(const GridDiagram& g) {
    const int n = g.size();
    std::vector<int> o(g.o().begin(), g.o().end());
    std::vector<int> x(g.x().begin(), g.x().end());
    for (auto& c : o) c = n - 1 - c;
    for (auto& c : x) c = n - 1 - c;
    return GridDiagram(std::move(o), std::move(x), g.name().empty() ? "" : "m(" + g.name() + ")");
}

GridDiagram stabilize(const GridDiagram& g, int row) {
    const int n = g.size();
    if (row < 0 || row >= n)
        throw ValidationError("stabilization row " + std::to_string(row) + " out of range 0.." +
                              std::to_string(n - 1));
    const int c = g.x_col(row);
    auto shift_col = [c](int k) { return k > c ? k + 1 : k; };

    std::vector<int> o(static_cast<std::size_t>(n + 1));
    std::vector<int> x(static_cast<std::size_t>(n + 1));
    for (int r = 0; r < n; ++r) {
        const int nr = r <= row ? r : r + 1;
        // The O that shared column c moves right; the split X stays put.
        o[static_cast<std::size_t>(nr)] = g.o_col(r) == c ? c + 1 : shift_col(g.o_col(r));
        x[static_cast<std::size_t>(nr)] = shift_col(g.x_col(r));
    }
    o[static_cast<std::size_t>(row + 1)] = c;
    x[static_cast<std::size_t>(row + 1)] = c + 1;
    return GridDiagram(std::move(o), std::move(x), g.name());
}

int component_count(const GridDiagram& g) {
    const int n = g.size();
    std::vector<int> o_row_of_col(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) o_row_of_col[static_cast<std::size_t>(g.o_col(r))] = r;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int components = 0;
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        ++components;
        // Row r -> (its X column) -> row of the O in that column.
        for (int r = start; !seen[static_cast<std::size_t>(r)];
             r = o_row_of_col[static_cast<std::size_t>(g.x_col(r))])
            seen[static_cast<std::size_t>(r)] = true;
    }
    return components;
}

void require_knot(const GridDiagram& g) {
    if (const int k = component_count(g); k != 1)
        throw ValidationError("grid represents a " + std::to_string(k) +
                              "-component link; only knots are supported");
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

void check_size(const GridDiagram& g, const SizeLimits& limits) {
    if (g.size() > limits.max_n) throw CapExceeded(g.size(), limits.max_n);
}

std::uint32_t permutation_rank(std::span<const int> perm) {
    if (perm.size() > static_cast<std::size_t>(detail::kMaxGrid))
        throw ValidationError("permutation too long to rank");
    return detail::rank_of(perm.data(), static_cast<int>(perm.size()));
}

Permutation permutation_unrank(std::uint32_t rank, int n) {
    if (n < 0 || n > detail::kMaxGrid) throw ValidationError("permutation length out of range");
    Permutation p(static_cast<std::size_t>(n));
    detail::unrank_into(rank, n, p.data());
    return p;
}

namespace {

void require_state(const GridDiagram& g, std::span<const int> perm) {
    const int n = g.size();
    if (static_cast<int>(perm.size()) != n)
        throw ValidationError("state has " + std::to_string(perm.size()) +
                              " entries, grid has size " + std::to_string(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw ValidationError("state is not a permutation of 0.." + std::to_string(n - 1));
        seen[static_cast<std::size_t>(v)] = true;
    }
}

} // namespace

Bigrading bigrading(const GridDiagram& g, std::span<const int> perm) {
    require_state(g, perm);
    const detail::GridKernel kernel(g);
    if (kernel.doubled_alexander(perm.data()) % 2 != 0)
        throw ValidationError("half-integral Alexander grading: the grid is not a knot diagram");
    return kernel.grading(perm.data());
}

void for_each_state(const GridDiagram& g, const std::function<void(const GridState&)>& fn,
                    const SizeLimits& limits) {
    check_size(g, limits);
    const detail::GridKernel kernel(g);
    const int n = g.size();
    GridState state;
    state.perm.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) state.perm[static_cast<std::size_t>(i)] = i;
    do {
        const auto gr = kernel.grading(state.perm.data());
        state.maslov = gr.maslov;
        state.alexander = gr.alexander;
        fn(state);
    } while (std::next_permutation(state.perm.begin(), state.perm.end()));
}

std::vector<GridState> enumerate_states(const GridDiagram& g, const SizeLimits& limits) {
    std::vector<GridState> states;
    check_size(g, limits);
    states.reserve(static_cast<std::size_t>(factorial(g.size())));
    for_each_state(g, [&](const GridState& s) { states.push_back(s); }, limits);
    return states;
}

std::vector<Rectangle> empty_rectangles(const GridDiagram& g, std::span<const int> perm) {
    require_state(g, perm);
    const detail::GridKernel kernel(g);
    std::vector<Rectangle> out;
    kernel.for_each_empty_rectangle(perm.data(), [&](int left, int right, int co, int cx) {
        Rectangle r;
        r.source.assign(perm.begin(), perm.end());
        r.target = r.source;
        std::swap(r.target[static_cast<std::size_t>(left)], r.target[static_cast<std::size_t>(right)]);
        r.left = left;
        r.right = right;
        r.count_o = co;
        r.count_x = cx;
        r.empty = true;
        out.push_back(std::move(r));
    });
    return out;
}

std::vector<Rectangle> rectangles_between(const GridDiagram& g, std::span<const int> source,
                                          std::span<const int> target) {
    require_state(g, source);
    require_state(g, target);
    const int n = g.size();
    std::vector<int> diff;
    for (int i = 0; i < n; ++i)
        if (source[static_cast<std::size_t>(i)] != target[static_cast<std::size_t>(i)]) diff.push_back(i);
    if (diff.size() != 2) return {};
    if (source[static_cast<std::size_t>(diff[0])] != target[static_cast<std::size_t>(diff[1])] ||
        source[static_cast<std::size_t>(diff[1])] != target[static_cast<std::size_t>(diff[0])])
        return {};
    const detail::GridKernel kernel(g);
    std::vector<Rectangle> out;
    for (int pick = 0; pick < 2; ++pick) {
        const int left = diff[static_cast<std::size_t>(pick)];
        const int right = diff[static_cast<std::size_t>(1 - pick)];
        const int base = source[static_cast<std::size_t>(left)];
        const int width = kernel.wrap(right - left);
        const int height = kernel.wrap(source[static_cast<std::size_t>(right)] - base);
        Rectangle r;
        r.source.assign(source.begin(), source.end());
        r.target.assign(target.begin(), target.end());
        r.left = left;
        r.right = right;
        r.count_o = kernel.count_in(kernel.o(), left, width, base, height);
        r.count_x = kernel.count_in(kernel.x(), left, width, base, height);
        r.empty = true;
        for (int a = 1; a < width; ++a) {
            const int d = kernel.wrap(source[static_cast<std::size_t>(kernel.wrap(left + a))] - base);
            if (d > 0 && d < height) r.empty = false;
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace gridups
