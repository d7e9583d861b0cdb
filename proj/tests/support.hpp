#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gridups/dataset.hpp"
#include "gridups/grid.hpp"

namespace testing {

inline const gridups::GridDiagram& unknot2() {
    static const gridups::GridDiagram g({0, 1}, {1, 0}, "unknot");
    return g;
}

inline const gridups::GridDiagram& trefoil5() {
    static const gridups::GridDiagram g({1, 2, 3, 4, 0}, {4, 0, 1, 2, 3}, "trefoil");
    return g;
}

inline const gridups::Dataset& dataset() {
    static const gridups::Dataset ds = gridups::load_dataset();
    return ds;
}

inline const gridups::GridDiagram& entry(const std::string& name) { return dataset().at(name).grid; }

/// Random knot grids of size n (rejection sampling on the component count).
inline std::vector<gridups::GridDiagram> random_knot_grids(int n, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<int> o(static_cast<std::size_t>(n));
    std::vector<int> x(static_cast<std::size_t>(n));
    std::iota(o.begin(), o.end(), 0);
    std::iota(x.begin(), x.end(), 0);
    std::vector<gridups::GridDiagram> out;
    while (static_cast<int>(out.size()) < count) {
        std::shuffle(o.begin(), o.end(), rng);
        std::shuffle(x.begin(), x.end(), rng);
        bool collide = false;
        for (int r = 0; r < n; ++r) collide = collide || o[static_cast<std::size_t>(r)] == x[static_cast<std::size_t>(r)];
        if (collide) continue;
        gridups::GridDiagram g(o, x);
        if (gridups::component_count(g) == 1) out.push_back(g);
    }
    return out;
}

} // namespace testing
