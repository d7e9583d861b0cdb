#include "gridups/tmod.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "json.hpp"

#include "gridups/detail/arrow_store.hpp"
#include "gridups/errors.hpp"

namespace gridups {

std::vector<Rational> BarSummary::infinite_gradings() const {
    std::vector<Rational> gs;
    for (const auto& b : bars)
        if (b.infinite()) gs.push_back(b.g);
    std::sort(gs.begin(), gs.end(), std::greater<>());
    return gs;
}

std::size_t BarSummary::infinite_count() const {
    return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [](const Bar& b) { return b.infinite(); }));
}

void canonicalize(BarSummary& s) {
    std::sort(s.bars.begin(), s.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.g != b.g) return a.g > b.g;
        if (a.infinite() != b.infinite()) return b.infinite();
        return !a.infinite() && *a.len < *b.len;
    });
}

TModComplex t_modify(const FilteredUComplex& c, const Rational& t) {
    if (t < Rational(0) || t > Rational(1)) throw ValidationError("t = " + to_string(t) + " is outside [0, 1]");
    TModComplex m;
    m.t = t;
    m.grt.reserve(c.size());
    for (const auto& g : c.generators()) m.grt.push_back(Rational(g.maslov) - t * g.alexander);
    m.out.resize(c.size());
    for (std::uint32_t x = 0; x < c.size(); ++x) {
        auto& arcs = m.out[x];
        arcs.reserve(c.arrows_from(x).size());
        for (const auto& a : c.arrows_from(x)) {
            const int drop = c.gen(x).alexander - c.gen(a.dst).alexander;
            arcs.push_back({a.dst, Rational(2 * static_cast<std::int64_t>(a.k)) + t * drop});
        }
    }
    return m;
}

TModCheck check_tmod_complex(const TModComplex& c) {
    TModCheck check;
    auto fail = [&](const std::string& what) {
        if (check.first_failure.empty()) check.first_failure = what;
    };
    std::vector<std::pair<std::uint32_t, Rational>> paths;
    for (std::uint32_t x = 0; x < c.size(); ++x) {
        for (const auto& a : c.out[x]) {
            if (a.alpha != c.grt[a.dst] - c.grt[x] + 1) {
                check.homogeneous = false;
                fail("arrow " + std::to_string(x) + " -> " + std::to_string(a.dst) + " is not of degree -1");
            }
            if (a.alpha < Rational(0)) {
                check.nonnegative = false;
                fail("arrow " + std::to_string(x) + " -> " + std::to_string(a.dst) + " has a negative exponent");
            }
        }
        paths.clear();
        for (const auto& a : c.out[x])
            for (const auto& b : c.out[a.dst]) paths.emplace_back(b.dst, a.alpha + b.alpha);
        std::sort(paths.begin(), paths.end());
        for (std::size_t i = 0; i < paths.size();) {
            std::size_t j = i;
            while (j < paths.size() && paths[j] == paths[i]) ++j;
            if ((j - i) % 2 == 1) {
                check.d_squared_zero = false;
                fail("d_t^2 != 0 starting at generator " + std::to_string(x));
                break;
            }
            i = j;
        }
    }
    return check;
}

BarSummary homology_at_t(const TModComplex& c) {
    // Every exponent is an integer combination of 1 and t, so scaling by the
    // denominator of t turns the whole elimination into integer arithmetic.
    const std::int64_t den = c.t.denominator();
    auto scaled = [den](const Rational& r) {
        const Rational s = r * den;
        if (s.denominator() != 1) throw InvariantViolation("exponent " + to_string(r) + " outside Z + tZ");
        return s.numerator();
    };

    const auto n = static_cast<std::uint32_t>(c.size());
    std::vector<std::vector<detail::Arc<std::int64_t>>> arcs(n);
    // Pivots: least exponent first; among equal exponents the least Markowitz
    // cost, refreshed lazily, then (source, target).
    using Entry = std::tuple<std::int64_t, std::uint64_t, std::uint32_t, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::uint32_t x = 0; x < n; ++x) {
        arcs[x].reserve(c.out[x].size());
        for (const auto& a : c.out[x]) {
            const auto w = scaled(a.alpha);
            if (w < 0) throw InvariantViolation("negative v-exponent on input arrow");
            arcs[x].push_back({a.dst, w});
        }
    }
    detail::ArrowStore<std::int64_t> store(std::move(arcs));
    for (std::uint32_t x = 0; x < n; ++x)
        for (const auto& a : store.out(x)) heap.emplace(a.weight, detail::markowitz_cost(store, x, a.dst), x, a.dst);
    std::vector<bool> alive(n, true);

    BarSummary result;
    result.t = c.t;
    while (!heap.empty()) {
        const auto [w, cost, x, y] = heap.top();
        heap.pop();
        if (!alive[x] || !alive[y]) continue;
        const auto current = store.weight(x, y);
        if (!current || *current != w) continue;  // stale entry
        if (const auto now = detail::markowitz_cost(store, x, y); now > cost) {
            heap.emplace(w, now, x, y);
            continue;
        }
        // a -> b picks up v^{w(a,y) - w(x,y) + w(x,b)}; minimality of w keeps
        // every new exponent >= w.
        store.cancel(
            x, y, [](std::int64_t w_ay, std::int64_t w_xy, std::int64_t w_xb) { return w_ay - w_xy + w_xb; },
            [&](std::uint32_t a, std::uint32_t b, bool present) {
                if (present) heap.emplace(*store.weight(a, b), detail::markowitz_cost(store, a, b), a, b);
            });
        alive[x] = false;
        alive[y] = false;
        if (w > 0) result.bars.push_back({c.grt[y], Rational(w, den)});
    }
    for (std::uint32_t x = 0; x < n; ++x)
        if (alive[x]) result.bars.push_back({c.grt[x], std::nullopt});
    canonicalize(result);
    return result;
}

Rational max_infinite_grading(const BarSummary& s) {
    std::optional<Rational> best;
    for (const auto& b : s.bars)
        if (b.infinite() && (!best || b.g > *best)) best = b.g;
    if (!best) throw InvariantViolation("homology has no free summand at t = " + to_string(s.t));
    return *best;
}

Rational upsilon_at(const FilteredUComplex& c, const Rational& t) {
    return max_infinite_grading(homology_at_t(t_modify(c, t)));
}

std::string bars_to_json(const BarSummary& s) {
    nlohmann::json bars = nlohmann::json::array();
    for (const auto& b : s.bars)
        bars.push_back({{"g", to_string(b.g)}, {"len", b.len ? to_string(*b.len) : std::string("inf")}});
    return nlohmann::json{{"t", to_string(s.t)}, {"bars", bars}}.dump();
}

BarSummary bars_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        BarSummary s;
        s.t = parse_rational(j.at("t").get<std::string>());
        for (const auto& b : j.at("bars")) {
            const auto len = b.at("len").get<std::string>();
            s.bars.push_back({parse_rational(b.at("g").get<std::string>()),
                              len == "inf" ? std::nullopt : std::optional<Rational>(parse_rational(len))});
        }
        canonicalize(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed bar JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("bar JSON: ") + e.what());
    }
}

} // namespace gridups
