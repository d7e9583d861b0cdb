#pragma once

// Hot-path grid routines on raw fixed-size arrays. Everything here is pure and
// thread-safe; the public API in grid.hpp wraps it.

#include <array>
#include <cstdint>

#include "gridups/grid.hpp"

namespace gridups::detail {

inline constexpr int kMaxGrid = 12;

using PermArray = std::array<int, kMaxGrid>;

class GridKernel {
public:
    explicit GridKernel(const GridDiagram& g) : n_(g.size()) {
        for (int r = 0; r < n_; ++r) {
            o_[static_cast<std::size_t>(r)] = g.o_col(r);
            x_[static_cast<std::size_t>(r)] = g.x_col(r);
        }
        oo_ = self_pairs(o_);
        xx_ = self_pairs(x_);
    }

    int size() const noexcept { return n_; }

    Bigrading grading(const int* perm) const noexcept {
        int xx = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (perm[i] < perm[j]) ++xx;
        const int m_o = xx - cross_pairs(perm, o_) + oo_ + 1;
        const int m_x = xx - cross_pairs(perm, x_) + xx_ + 1;
        // A = (M_O - M_X)/2 - (n-1)/2; the numerator is even for knot grids.
        return {m_o, (m_o - m_x - (n_ - 1)) / 2};
    }

    /// 2A before halving; odd values mean the diagram is not a knot grid.
    int doubled_alexander(const int* perm) const noexcept {
        const int c_o = cross_pairs(perm, o_);
        const int c_x = cross_pairs(perm, x_);
        return (c_x - c_o) + oo_ - xx_ - (n_ - 1);
    }

    /// Calls fn(left, right, count_o, count_x) for every empty rectangle out of
    /// perm. The target state is perm with columns left/right swapped.
    template <class Fn>
    void for_each_empty_rectangle(const int* perm, Fn&& fn) const {
        for (int left = 0; left < n_; ++left) {
            const int base = perm[left];
            for (int right = 0; right < n_; ++right) {
                if (right == left) continue;
                const int width = wrap(right - left);
                const int height = wrap(perm[right] - base);
                bool empty = true;
                for (int a = 1; a < width && empty; ++a) {
                    const int d = wrap(perm[wrap(left + a)] - base);
                    if (d > 0 && d < height) empty = false;
                }
                if (!empty) continue;
                fn(left, right, count_in(o_, left, width, base, height),
                   count_in(x_, left, width, base, height));
            }
        }
    }

    /// Markings of `marks` inside the rectangle spanning `width` columns from
    /// `left` and `height` rows from `bottom`.
    int count_in(const PermArray& marks, int left, int width, int bottom, int height) const noexcept {
        int count = 0;
        for (int b = 0; b < height; ++b) {
            const int row = wrap(bottom + b);
            if (wrap(marks[static_cast<std::size_t>(row)] - left) < width) ++count;
        }
        return count;
    }

    const PermArray& o() const noexcept { return o_; }
    const PermArray& x() const noexcept { return x_; }

    int wrap(int v) const noexcept {
        v %= n_;
        return v < 0 ? v + n_ : v;
    }

private:
    // I(x,M) + I(M,x) for state points (2i, 2perm[i]) and markings
    // (2c+1, 2r+1), with I counting strictly south-west pairs.
    int cross_pairs(const int* perm, const PermArray& marks) const noexcept {
        int count = 0;
        for (int i = 0; i < n_; ++i) {
            for (int r = 0; r < n_; ++r) {
                const int c = marks[static_cast<std::size_t>(r)];
                if (i <= c && perm[i] <= r) ++count;
                if (c < i && r < perm[i]) ++count;
            }
        }
        return count;
    }

    int self_pairs(const PermArray& marks) const noexcept {
        int count = 0;
        for (int r = 0; r < n_; ++r)
            for (int s = r + 1; s < n_; ++s)
                if (marks[static_cast<std::size_t>(r)] < marks[static_cast<std::size_t>(s)]) ++count;
        return count;
    }

    int n_;
    PermArray o_{};
    PermArray x_{};
    int oo_ = 0;
    int xx_ = 0;
};

inline std::uint32_t rank_of(const int* perm, int n) noexcept {
    // Lehmer code in factorial base.
    std::uint32_t rank = 0;
    for (int i = 0; i < n; ++i) {
        std::uint32_t smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i]) ++smaller;
        rank = rank * static_cast<std::uint32_t>(n - i) + smaller;
    }
    return rank;
}

inline void unrank_into(std::uint32_t rank, int n, int* perm) noexcept {
    std::array<int, kMaxGrid> digits{};
    for (int i = n - 1; i >= 0; --i) {
        const auto base = static_cast<std::uint32_t>(n - i);
        digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
        rank /= base;
    }
    std::array<bool, kMaxGrid> used{};
    for (int i = 0; i < n; ++i) {
        int skip = digits[static_cast<std::size_t>(i)];
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            if (skip-- == 0) {
                perm[i] = v;
                used[static_cast<std::size_t>(v)] = true;
                break;
            }
        }
    }
}

} // namespace gridups::detail
