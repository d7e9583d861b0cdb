#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "gridups/complex.hpp"
#include "gridups/errors.hpp"
#include "gridups/oracle.hpp"
#include "support.hpp"

using namespace gridups;

namespace {

std::multiset<Bigrading> grading_multiset(const FilteredUComplex& c) {
    return {c.generators().begin(), c.generators().end()};
}

} // namespace

TEST_CASE("unknot complex") {
    const auto c = build_quotient_complex(testing::unknot2());
    REQUIRE(c.size() == 2);
    // Two rectangles per target cancel on the 2x2 torus.
    CHECK(c.arrow_count() == 0);
    CHECK(grading_multiset(c) == std::multiset<Bigrading>{{0, 0}, {-1, -1}});
    CHECK(check_complex(c).ok());
}

TEST_CASE("trefoil complex passes every structural check") {
    const auto c = build_quotient_complex(testing::trefoil5());
    CHECK(c.size() == 120);
    CHECK(c.arrow_count() > 0);
    const auto chk = check_complex(c);
    CHECK_MESSAGE(chk.ok(), chk.first_failure);
    for (std::uint32_t i = 0; i < c.size(); ++i) CHECK(c.provenance()[i] == i);
}

TEST_CASE("parallel build equals the serial reference") {
    std::vector<GridDiagram> grids{testing::unknot2(), testing::trefoil5(), testing::entry("4_1"),
                                   testing::entry("5_2")};
    for (const auto& g : testing::random_knot_grids(6, 3, 5)) grids.push_back(g);
    for (const auto& g : grids) CHECK(build_quotient_complex(g) == build_quotient_complex_serial(g));
}

TEST_CASE("arrow exponents count O markings and the filtration drop counts X markings") {
    for (const auto& g : {testing::trefoil5(), testing::entry("4_1")}) {
        const auto c = build_quotient_complex(g);
        for (std::uint32_t x = 0; x < c.size(); ++x) {
            const auto px = permutation_unrank(x, g.size());
            for (const auto& a : c.arrows_from(x)) {
                const auto py = permutation_unrank(a.dst, g.size());
                const auto rects = rectangles_between(g, px, py);
                const auto empty = std::count_if(rects.begin(), rects.end(), [](const Rectangle& r) { return r.empty; });
                CHECK(empty % 2 == 1);
                const auto& r = *std::find_if(rects.begin(), rects.end(), [](const Rectangle& q) { return q.empty; });
                CHECK(a.k == static_cast<std::uint32_t>(r.count_o));
                CHECK(c.gen(x).alexander - c.gen(a.dst).alexander + static_cast<int>(a.k) == r.count_x);
            }
        }
    }
}

TEST_CASE("tilde complex") {
    const auto t = build_tilde_complex(testing::trefoil5());
    CHECK(t.gens.size() == 120);
    CHECK(check_tilde_complex(t).ok());
    // Every tilde arrow is a k = 0 arrow without Alexander drop.
    const auto c = build_quotient_complex(testing::trefoil5());
    std::size_t flat = 0;
    for (std::uint32_t x = 0; x < c.size(); ++x)
        for (const auto& a : c.arrows_from(x))
            if (a.k == 0 && c.gen(x).alexander == c.gen(a.dst).alexander) ++flat;
    CHECK(flat == t.arrow_count());
}

TEST_CASE("reduce leaves the tilde homology rank") {
    for (const auto& g : {testing::trefoil5(), testing::entry("4_1"), testing::entry("5_2")}) {
        const auto c = build_quotient_complex(g);
        const auto r = reduce(c);
        CHECK_FALSE(has_cancellable_arrow(r));
        CHECK(r.size() == static_cast<std::size_t>(total_dimension(tilde_homology(g))));
        const auto chk = check_complex(r);
        CHECK_MESSAGE(chk.ok(), chk.first_failure);
        CHECK(r.alexander_span() <= c.alexander_span());
        // Provenance points at the original state with the same bigrading.
        for (std::uint32_t i = 0; i < r.size(); ++i) CHECK(c.gen(r.provenance()[i]) == r.gen(i));
    }
    const auto t = reduce(build_quotient_complex(testing::trefoil5()));
    CHECK(t.size() == 48);
    CHECK(reduce(t) == t);
}

TEST_CASE("dualize") {
    const auto u = dualize(build_quotient_complex(testing::unknot2()));
    CHECK(grading_multiset(u) == std::multiset<Bigrading>{{0, 0}, {1, 1}});
    const auto c = reduce(build_quotient_complex(testing::trefoil5()));
    const auto d = dualize(c);
    CHECK(d.size() == c.size());
    CHECK(d.arrow_count() == c.arrow_count());
    CHECK(check_complex(d).ok());
    CHECK(dualize(d) == c);
}

TEST_CASE("shift_gradings") {
    const auto c = build_quotient_complex(testing::unknot2());
    const auto s = shift_gradings(c, 1, 1);
    CHECK(grading_multiset(s) == std::multiset<Bigrading>{{1, 1}, {0, 0}});
    CHECK(shift_gradings(s, -1, -1) == c);
}

TEST_CASE("JSON round trip") {
    const auto c = reduce(build_quotient_complex(testing::entry("4_1")));
    CHECK(complex_from_json(complex_to_json(c)) == c);
    CHECK_THROWS_AS(complex_from_json("{}"), ValidationError);
    CHECK_THROWS_AS(complex_from_json(R"({"generators":[{"id":0,"M":0,"A":0}],"arrows":[{"src":0,"dst":3,"k":0}]})"),
                    Error);
}

TEST_CASE("constructor rejects malformed arrow lists") {
    CHECK_THROWS_AS(FilteredUComplex({{0, 0}}, {{UArrow{1, 0}}}), InvariantViolation);
    CHECK_THROWS_AS(FilteredUComplex({{0, 0}, {-1, 0}}, {{UArrow{1, 0}, UArrow{1, 0}}, {}}), InvariantViolation);
}

TEST_CASE("check_complex catches broken complexes") {
    SUBCASE("Maslov") {
        const FilteredUComplex c({{0, 0}, {0, 0}}, {{UArrow{1, 0}}, {}});
        const auto chk = check_complex(c);
        CHECK_FALSE(chk.maslov_homogeneous);
        CHECK_FALSE(chk.first_failure.empty());
    }
    SUBCASE("filtration") {
        const FilteredUComplex c({{0, 0}, {-1, 1}}, {{UArrow{1, 0}}, {}});
        CHECK_FALSE(check_complex(c).filtered);
    }
    SUBCASE("d squared") {
        const FilteredUComplex c({{0, 0}, {-1, 0}, {-2, 0}}, {{UArrow{1, 0}}, {UArrow{2, 0}}, {}});
        CHECK_FALSE(check_complex(c).d_squared_zero);
    }
    SUBCASE("d squared cancels in pairs") {
        const FilteredUComplex c({{0, 0}, {-1, 0}, {-1, 0}, {-2, 0}},
                                 {{UArrow{1, 0}, UArrow{2, 0}}, {UArrow{3, 0}}, {UArrow{3, 0}}, {}});
        CHECK(check_complex(c).ok());
    }
    SUBCASE("tilde") {
        TildeComplex t{{{0, 0}, {-1, 1}}, {{1}, {}}};
        CHECK_FALSE(check_tilde_complex(t).ok());
    }
}
