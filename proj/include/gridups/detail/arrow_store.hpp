#pragma once

// Mutable sparse mod-2 arrow storage with zig-zag cancellation.
//
// An arrow src -> dst carries a weight W (a U-power or a scaled v-exponent).
// Because every complex handled here is homogeneous, two parallel arrows
// always carry the same weight and adding them cancels mod 2; a toggle that
// meets a different weight means the input was not homogeneous.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridups/errors.hpp"

namespace gridups::detail {

template <class W>
struct Arc {
    std::uint32_t dst;
    W weight;
};

template <class W>
class ArrowStore {
public:
    explicit ArrowStore(std::size_t vertices) : out_(vertices), in_(vertices) {}

    /// Takes per-source arc lists that are already sorted by dst and free of
    /// duplicates, and derives the incoming lists.
    explicit ArrowStore(std::vector<std::vector<Arc<W>>> out) : out_(std::move(out)), in_(out_.size()) {
        std::vector<std::uint32_t> in_degree(out_.size(), 0);
        for (const auto& arcs : out_)
            for (const auto& a : arcs) ++in_degree[a.dst];
        for (std::size_t v = 0; v < in_.size(); ++v) in_[v].reserve(in_degree[v]);
        for (std::size_t src = 0; src < out_.size(); ++src)
            for (const auto& a : out_[src]) in_[a.dst].push_back(static_cast<std::uint32_t>(src));
        // Sources were visited in increasing order, so each in-list is sorted.
    }

    std::size_t vertex_count() const noexcept { return out_.size(); }
    std::span<const Arc<W>> out(std::uint32_t v) const noexcept { return out_[v]; }
    std::span<const std::uint32_t> in(std::uint32_t v) const noexcept { return in_[v]; }

    std::optional<W> weight(std::uint32_t src, std::uint32_t dst) const {
        const auto& arcs = out_[src];
        const auto it = find_arc(arcs, dst);
        if (it == arcs.end() || it->dst != dst) return std::nullopt;
        return it->weight;
    }

    /// Adds src -> dst mod 2. Returns true when the arrow is present afterwards.
    bool toggle(std::uint32_t src, std::uint32_t dst, W weight) {
        auto& arcs = out_[src];
        auto it = find_arc(arcs, dst);
        auto& sources = in_[dst];
        auto jt = std::lower_bound(sources.begin(), sources.end(), src);
        if (it != arcs.end() && it->dst == dst) {
            if (!(it->weight == weight)) {
                throw InvariantViolation("inhomogeneous arrow " + std::to_string(src) + " -> " +
                                         std::to_string(dst) + ": parallel contributions disagree");
            }
            arcs.erase(it);
            sources.erase(jt);
            return false;
        }
        arcs.insert(it, Arc<W>{dst, weight});
        sources.insert(jt, src);
        return true;
    }

    /// Deletes every arrow touching v.
    void isolate(std::uint32_t v) {
        for (const auto& a : out_[v]) {
            auto& sources = in_[a.dst];
            sources.erase(std::lower_bound(sources.begin(), sources.end(), v));
        }
        for (const auto src : in_[v]) {
            auto& arcs = out_[src];
            arcs.erase(find_arc(arcs, v));
        }
        std::vector<Arc<W>>().swap(out_[v]);
        std::vector<std::uint32_t>().swap(in_[v]);
    }

    /// Splits off the pivot x -> y and rewires the rest of the complex: for
    /// every a -> y and x -> b (a != x, b != y) the arrow a -> b is toggled
    /// with weight combine(w(a,y), w(x,y), w(x,b)). `touched(a, b, present)`
    /// sees every toggle. Both x and y end up isolated.
    template <class Combine, class Touched>
    void cancel(std::uint32_t x, std::uint32_t y, Combine&& combine, Touched&& touched) {
        const W pivot = *weight(x, y);
        std::vector<std::pair<std::uint32_t, W>> into_y;
        into_y.reserve(in_[y].size());
        for (const auto a : in_[y])
            if (a != x) into_y.emplace_back(a, *weight(a, y));
        std::vector<Arc<W>> from_x;
        from_x.reserve(out_[x].size());
        for (const auto& b : out_[x])
            if (b.dst != y) from_x.push_back(b);

        isolate(x);
        isolate(y);
        for (const auto& [a, w_ay] : into_y) {
            for (const auto& b : from_x) {
                if (a == b.dst) throw InvariantViolation("cancellation would create a self-arrow");
                const W w = combine(w_ay, pivot, b.weight);
                touched(a, b.dst, toggle(a, b.dst, w));
            }
        }
    }

private:
    static auto find_arc(std::vector<Arc<W>>& arcs, std::uint32_t dst) {
        return std::lower_bound(arcs.begin(), arcs.end(), dst,
                                [](const Arc<W>& a, std::uint32_t d) { return a.dst < d; });
    }
    static auto find_arc(const std::vector<Arc<W>>& arcs, std::uint32_t dst) {
        return std::lower_bound(arcs.begin(), arcs.end(), dst,
                                [](const Arc<W>& a, std::uint32_t d) { return a.dst < d; });
    }

    std::vector<std::vector<Arc<W>>> out_;
    std::vector<std::vector<std::uint32_t>> in_;
};

/// Arrows created by cancelling x -> y, at most.
template <class W>
std::uint64_t markowitz_cost(const ArrowStore<W>& store, std::uint32_t x, std::uint32_t y) {
    return static_cast<std::uint64_t>(store.out(x).size() - 1) * (store.in(y).size() - 1);
}

} // namespace gridups::detail
