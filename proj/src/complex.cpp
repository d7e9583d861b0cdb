#include "gridups/complex.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <queue>
#include <tuple>
#include <string>
#include <utility>

#include "json.hpp"

#include "gridups/detail/arrow_store.hpp"
#include "gridups/detail/grid_kernel.hpp"
#include "gridups/errors.hpp"

namespace gridups {

FilteredUComplex::FilteredUComplex(std::vector<Bigrading> gens, std::vector<std::vector<UArrow>> out,
                                   std::vector<std::uint32_t> provenance)
    : gens_(std::move(gens)), out_(std::move(out)), provenance_(std::move(provenance)) {
    if (out_.size() != gens_.size())
        throw InvariantViolation("arrow table size does not match generator count");
    if (!provenance_.empty() && provenance_.size() != gens_.size())
        throw InvariantViolation("provenance size does not match generator count");
    for (auto& arcs : out_) {
        std::sort(arcs.begin(), arcs.end(), [](const UArrow& a, const UArrow& b) { return a.dst < b.dst; });
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (arcs[i].dst >= gens_.size()) throw InvariantViolation("arrow target out of range");
            if (i > 0 && arcs[i].dst == arcs[i - 1].dst)
                throw InvariantViolation("duplicate arrow; mod-2 sums must be collapsed");
        }
    }
}

std::size_t FilteredUComplex::arrow_count() const noexcept {
    std::size_t n = 0;
    for (const auto& arcs : out_) n += arcs.size();
    return n;
}

int FilteredUComplex::alexander_span() const noexcept {
    if (gens_.empty()) return 0;
    const auto [lo, hi] = std::minmax_element(gens_.begin(), gens_.end(), [](const auto& a, const auto& b) {
        return a.alexander < b.alexander;
    });
    return hi->alexander - lo->alexander;
}

std::size_t TildeComplex::arrow_count() const noexcept {
    std::size_t n = 0;
    for (const auto& arcs : out) n += arcs.size();
    return n;
}

namespace {

// Shared parallel kernel: one pass over all states by rank. `keep(o, x)`
// selects which rectangles contribute.
template <class Keep>
std::pair<std::vector<Bigrading>, std::vector<std::vector<UArrow>>> build_parallel(const GridDiagram& g,
                                                                                  const SizeLimits& limits,
                                                                                  Keep keep) {
    check_size(g, limits);
    require_knot(g);
    const detail::GridKernel kernel(g);
    const int n = g.size();
    const auto count = static_cast<std::int64_t>(factorial(n));
    std::vector<Bigrading> gens(static_cast<std::size_t>(count));
    std::vector<std::vector<UArrow>> out(static_cast<std::size_t>(count));
    std::atomic<bool> inhomogeneous{false};

#pragma omp parallel for schedule(dynamic, 512)
    for (std::int64_t s = 0; s < count; ++s) {
        detail::PermArray perm{};
        detail::unrank_into(static_cast<std::uint32_t>(s), n, perm.data());
        gens[static_cast<std::size_t>(s)] = kernel.grading(perm.data());
        std::vector<UArrow> arcs;
        kernel.for_each_empty_rectangle(perm.data(), [&](int left, int right, int co, int cx) {
            if (!keep(co, cx)) return;
            std::swap(perm[static_cast<std::size_t>(left)], perm[static_cast<std::size_t>(right)]);
            arcs.push_back({detail::rank_of(perm.data(), n), static_cast<std::uint32_t>(co)});
            std::swap(perm[static_cast<std::size_t>(left)], perm[static_cast<std::size_t>(right)]);
        });
        std::sort(arcs.begin(), arcs.end(), [](const UArrow& a, const UArrow& b) {
            return a.dst < b.dst || (a.dst == b.dst && a.k < b.k);
        });
        // The two rectangles into the same target cancel mod 2.
        std::vector<UArrow> kept;
        kept.reserve(arcs.size());
        for (std::size_t i = 0; i < arcs.size();) {
            if (i + 1 < arcs.size() && arcs[i + 1].dst == arcs[i].dst) {
                if (arcs[i + 1].k != arcs[i].k) inhomogeneous = true;
                i += 2;
            } else {
                kept.push_back(arcs[i]);
                ++i;
            }
        }
        out[static_cast<std::size_t>(s)] = std::move(kept);
    }
    if (inhomogeneous) throw InvariantViolation("rectangles into one target disagree on #O");
    return {std::move(gens), std::move(out)};
}

} // namespace

FilteredUComplex build_quotient_complex(const GridDiagram& g, const SizeLimits& limits) {
    auto [gens, out] = build_parallel(g, limits, [](int, int) { return true; });
    std::vector<std::uint32_t> provenance(gens.size());
    for (std::size_t i = 0; i < provenance.size(); ++i) provenance[i] = static_cast<std::uint32_t>(i);
    return FilteredUComplex(std::move(gens), std::move(out), std::move(provenance));
}

FilteredUComplex build_quotient_complex_serial(const GridDiagram& g, const SizeLimits& limits) {
    check_size(g, limits);
    require_knot(g);
    const auto count = static_cast<std::size_t>(factorial(g.size()));
    std::vector<Bigrading> gens(count);
    std::vector<std::vector<UArrow>> out(count);
    for_each_state(
        g,
        [&](const GridState& x) {
            const auto id = permutation_rank(x.perm);
            gens[id] = {x.maslov, x.alexander};
            std::map<std::uint32_t, std::vector<std::uint32_t>> hits;
            for (const auto& r : empty_rectangles(g, x.perm))
                hits[permutation_rank(r.target)].push_back(static_cast<std::uint32_t>(r.count_o));
            for (const auto& [dst, ks] : hits) {
                if (ks.size() % 2 == 1) out[id].push_back({dst, ks.front()});
            }
        },
        limits);
    std::vector<std::uint32_t> provenance(count);
    for (std::size_t i = 0; i < count; ++i) provenance[i] = static_cast<std::uint32_t>(i);
    return FilteredUComplex(std::move(gens), std::move(out), std::move(provenance));
}

TildeComplex build_tilde_complex(const GridDiagram& g, const SizeLimits& limits) {
    auto [gens, out] = build_parallel(g, limits, [](int co, int cx) { return co == 0 && cx == 0; });
    TildeComplex t;
    t.gens = std::move(gens);
    t.out.resize(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        t.out[i].reserve(out[i].size());
        for (const auto& a : out[i]) t.out[i].push_back(a.dst);
    }
    return t;
}

bool has_cancellable_arrow(const FilteredUComplex& c) {
    for (std::uint32_t x = 0; x < c.size(); ++x)
        for (const auto& a : c.arrows_from(x))
            if (a.k == 0 && c.gen(a.dst).alexander == c.gen(x).alexander) return true;
    return false;
}

FilteredUComplex reduce(const FilteredUComplex& c) {
    const auto n = static_cast<std::uint32_t>(c.size());
    std::vector<std::vector<detail::Arc<std::uint32_t>>> arcs(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        arcs[x].reserve(c.arrows_from(x).size());
        for (const auto& a : c.arrows_from(x)) arcs[x].push_back({a.dst, a.k});
    }
    detail::ArrowStore<std::uint32_t> store(std::move(arcs));
    const auto gens = c.generators();
    auto eligible = [&](std::uint32_t x, std::uint32_t y, std::uint32_t k) {
        return k == 0 && gens[x].alexander == gens[y].alexander;
    };

    // Pivots in order of Markowitz cost (in(y) - 1)(out(x) - 1), then
    // (source, target). Costs are refreshed lazily when an entry surfaces.
    using Entry = std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::uint32_t x = 0; x < n; ++x)
        for (const auto& a : store.out(x))
            if (eligible(x, a.dst, a.weight)) heap.emplace(detail::markowitz_cost(store, x, a.dst), x, a.dst);

    std::vector<bool> alive(n, true);
    while (!heap.empty()) {
        const auto [cost, x, y] = heap.top();
        heap.pop();
        if (!alive[x] || !alive[y]) continue;
        const auto k = store.weight(x, y);
        if (!k || *k != 0) continue;
        if (const auto now = detail::markowitz_cost(store, x, y); now > cost) {
            heap.emplace(now, x, y);
            continue;
        }
        store.cancel(
            x, y, [](std::uint32_t k_ay, std::uint32_t, std::uint32_t k_xb) { return k_ay + k_xb; },
            [&](std::uint32_t a, std::uint32_t b, bool present) {
                if (present && eligible(a, b, *store.weight(a, b)))
                    heap.emplace(detail::markowitz_cost(store, a, b), a, b);
            });
        alive[x] = false;
        alive[y] = false;
    }

    std::vector<std::uint32_t> new_id(n, 0);
    std::vector<Bigrading> kept_gens;
    std::vector<std::uint32_t> kept_prov;
    for (std::uint32_t x = 0; x < n; ++x) {
        if (!alive[x]) continue;
        new_id[x] = static_cast<std::uint32_t>(kept_gens.size());
        kept_gens.push_back(gens[x]);
        kept_prov.push_back(c.provenance().empty() ? x : c.provenance()[x]);
    }
    std::vector<std::vector<UArrow>> out(kept_gens.size());
    for (std::uint32_t x = 0; x < n; ++x) {
        if (!alive[x]) continue;
        auto& dst = out[new_id[x]];
        for (const auto& a : store.out(x)) dst.push_back({new_id[a.dst], a.weight});
    }
    return FilteredUComplex(std::move(kept_gens), std::move(out), std::move(kept_prov));
}

FilteredUComplex dualize(const FilteredUComplex& c) {
    std::vector<Bigrading> gens;
    gens.reserve(c.size());
    for (const auto& g : c.generators()) gens.push_back({-g.maslov, -g.alexander});
    std::vector<std::vector<UArrow>> out(c.size());
    for (std::uint32_t x = 0; x < c.size(); ++x)
        for (const auto& a : c.arrows_from(x)) out[a.dst].push_back({x, a.k});
    std::vector<std::uint32_t> prov(c.provenance().begin(), c.provenance().end());
    return FilteredUComplex(std::move(gens), std::move(out), std::move(prov));
}

FilteredUComplex shift_gradings(const FilteredUComplex& c, int dm, int da) {
    std::vector<Bigrading> gens;
    gens.reserve(c.size());
    for (const auto& g : c.generators()) gens.push_back({g.maslov + dm, g.alexander + da});
    std::vector<std::vector<UArrow>> out(c.size());
    for (std::uint32_t x = 0; x < c.size(); ++x) {
        const auto arcs = c.arrows_from(x);
        out[x].assign(arcs.begin(), arcs.end());
    }
    std::vector<std::uint32_t> prov(c.provenance().begin(), c.provenance().end());
    return FilteredUComplex(std::move(gens), std::move(out), std::move(prov));
}

namespace {

void note_failure(ComplexCheck& check, const std::string& what) {
    if (check.first_failure.empty()) check.first_failure = what;
}

} // namespace

ComplexCheck check_complex(const FilteredUComplex& c) {
    ComplexCheck check;
    const auto gens = c.generators();
    for (std::uint32_t x = 0; x < c.size(); ++x) {
        for (const auto& a : c.arrows_from(x)) {
            const int twice_k = gens[a.dst].maslov - gens[x].maslov + 1;
            if (twice_k != 2 * static_cast<int>(a.k)) {
                check.maslov_homogeneous = false;
                note_failure(check, "arrow " + std::to_string(x) + " -> " + std::to_string(a.dst) +
                                        " breaks M(y) - M(x) + 1 = 2k");
            }
            if (gens[x].alexander - gens[a.dst].alexander + static_cast<int>(a.k) < 0) {
                check.filtered = false;
                note_failure(check, "arrow " + std::to_string(x) + " -> " + std::to_string(a.dst) +
                                        " raises the Alexander filtration");
            }
        }
    }
    // d^2: collect every two-step path by (target, total U-power); each
    // bucket must have even size.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> paths;
    for (std::uint32_t x = 0; x < c.size(); ++x) {
        paths.clear();
        for (const auto& a : c.arrows_from(x))
            for (const auto& b : c.arrows_from(a.dst)) paths.emplace_back(b.dst, a.k + b.k);
        std::sort(paths.begin(), paths.end());
        for (std::size_t i = 0; i < paths.size();) {
            std::size_t j = i;
            while (j < paths.size() && paths[j] == paths[i]) ++j;
            if ((j - i) % 2 == 1) {
                check.d_squared_zero = false;
                note_failure(check, "d^2 has a U^" + std::to_string(paths[i].second) + " term from " +
                                        std::to_string(x) + " to " + std::to_string(paths[i].first));
                break;
            }
            i = j;
        }
    }
    return check;
}

ComplexCheck check_tilde_complex(const TildeComplex& c) {
    ComplexCheck check;
    std::vector<std::uint32_t> paths;
    for (std::uint32_t x = 0; x < c.gens.size(); ++x) {
        for (const auto y : c.out[x]) {
            if (c.gens[y].alexander != c.gens[x].alexander) {
                check.filtered = false;
                note_failure(check, "tilde arrow changes A");
            }
            if (c.gens[y].maslov != c.gens[x].maslov - 1) {
                check.maslov_homogeneous = false;
                note_failure(check, "tilde arrow does not drop M by one");
            }
        }
        paths.clear();
        for (const auto y : c.out[x])
            for (const auto z : c.out[y]) paths.push_back(z);
        std::sort(paths.begin(), paths.end());
        for (std::size_t i = 0; i < paths.size();) {
            std::size_t j = i;
            while (j < paths.size() && paths[j] == paths[i]) ++j;
            if ((j - i) % 2 == 1) {
                check.d_squared_zero = false;
                note_failure(check, "tilde d^2 != 0 at generator " + std::to_string(x));
                break;
            }
            i = j;
        }
    }
    return check;
}

std::string complex_to_json(const FilteredUComplex& c) {
    nlohmann::json gens = nlohmann::json::array();
    for (std::uint32_t x = 0; x < c.size(); ++x)
        gens.push_back({{"id", x}, {"M", c.gen(x).maslov}, {"A", c.gen(x).alexander}});
    nlohmann::json arrows = nlohmann::json::array();
    for (std::uint32_t x = 0; x < c.size(); ++x)
        for (const auto& a : c.arrows_from(x)) arrows.push_back({{"src", x}, {"dst", a.dst}, {"k", a.k}});
    return nlohmann::json{{"generators", gens}, {"arrows", arrows}}.dump();
}

FilteredUComplex complex_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        const auto& jg = j.at("generators");
        std::vector<Bigrading> gens(jg.size());
        std::vector<bool> seen(jg.size(), false);
        for (const auto& g : jg) {
            const auto id = g.at("id").get<std::size_t>();
            if (id >= gens.size() || seen[id]) throw ValidationError("complex JSON: bad generator id");
            seen[id] = true;
            gens[id] = {g.at("M").get<int>(), g.at("A").get<int>()};
        }
        std::vector<std::vector<UArrow>> out(gens.size());
        for (const auto& a : j.at("arrows")) {
            const auto src = a.at("src").get<std::size_t>();
            if (src >= gens.size()) throw ValidationError("complex JSON: arrow source out of range");
            out[src].push_back({a.at("dst").get<std::uint32_t>(), a.at("k").get<std::uint32_t>()});
        }
        return FilteredUComplex(std::move(gens), std::move(out));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed complex JSON: ") + e.what());
    } catch (const InvariantViolation& e) {
        throw ValidationError(std::string("complex JSON: ") + e.what());
    }
}

} // namespace gridups
