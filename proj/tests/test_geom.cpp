#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cisolate/geom/grid.hpp"

using namespace cisolate;

namespace {

GridSquare sq(long x, long y, std::int64_t level = 0) { return {level, x, y}; }
DyadicComplex dc(long re, long im = 0) { return {Dyadic(re), Dyadic(im)}; }
Dyadic dy(long m, std::int64_t e) { return Dyadic(mpz_class(m), e); }
const Grid kGrid{dc(0)};

}  // namespace

TEST(Components, CornerContactConnects) {
    EXPECT_EQ(connected_components({sq(0, 0), sq(1, 1)}).size(), 1u);
    EXPECT_EQ(connected_components({sq(0, 0), sq(2, 0)}).size(), 2u);
    auto cs = connected_components({sq(5, 5), sq(1, 1), sq(0, 0), sq(1, 0)});
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0].size(), 3u);
    EXPECT_EQ(cs[1].size(), 1u);
    EXPECT_EQ(cs[0].squares.front(), sq(0, 0));
}

TEST(Components, MixedLevelsRejected) { EXPECT_THROW(connected_components({sq(0, 0), sq(0, 1, 1)}), Error); }

TEST(Components, PartitionProperties) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        std::vector<GridSquare> in;
        for (int i = 0; i < 30; ++i) in.push_back(sq(static_cast<long>(rng() % 12), static_cast<long>(rng() % 12), -3));
        std::set<GridSquare> uniq(in.begin(), in.end());
        auto cs = connected_components(in);
        std::size_t total = 0;
        for (const auto& c : cs) {
            total += c.size();
            EXPECT_EQ(connected_components(c.squares).size(), 1u);
        }
        EXPECT_EQ(total, uniq.size());
        // distinct classes never touch
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                for (const auto& a : cs[i].squares)
                    for (const auto& b : cs[j].squares) {
                        EXPECT_FALSE(abs(a.ix - b.ix) <= 1 && abs(a.iy - b.iy) <= 1);
                    }
        // deterministic order: by smallest square
        for (std::size_t i = 1; i < cs.size(); ++i) EXPECT_LT(cs[i - 1].squares.front(), cs[i].squares.front());
    }
}

TEST(Frame, SingleSquare) {
    ComponentFrame f = frame(kGrid, Component{{sq(0, 0)}});
    EXPECT_EQ(f.corner, dc(0));
    EXPECT_EQ(f.width, Dyadic(1));
    EXPECT_EQ(f.center, (DyadicComplex{dy(1, -1), dy(1, -1)}));
    EXPECT_EQ(f.disk.radius, dy(3, -2));
}

TEST(Frame, TopAndLeftAreFlush) {
    ComponentFrame f = frame(kGrid, Component{{sq(0, 0), sq(1, 0)}});
    EXPECT_EQ(f.width, Dyadic(2));
    EXPECT_EQ(f.corner, dc(0, -1));
    EXPECT_EQ(f.center, dc(1, 0));
    EXPECT_EQ(f.disk.radius, dy(3, -1));

    ComponentFrame l = frame(kGrid, Component{{sq(0, 0), sq(0, 1), sq(1, 1)}});
    EXPECT_EQ(l.width, Dyadic(2));
    EXPECT_EQ(l.disk.radius, dy(3, -1));
}

TEST(Frame, ContainsComponent) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 100; ++t) {
        std::vector<GridSquare> in;
        for (int i = 0; i < 6; ++i) in.push_back(sq(static_cast<long>(rng() % 4), static_cast<long>(rng() % 4), -2));
        for (const auto& c : connected_components(in)) {
            ComponentFrame f = frame(kGrid, c);
            for (const auto& s : c.squares) {
                Rect r = kGrid.rect(s);
                EXPECT_GE(r.x0, f.corner.re);
                EXPECT_GE(r.y0, f.corner.im);
                EXPECT_LE(r.x1, f.corner.re + f.width);
                EXPECT_LE(r.y1, f.corner.im + f.width);
                for (const auto& p : {DyadicComplex{r.x0, r.y0}, DyadicComplex{r.x1, r.y1}, DyadicComplex{r.x0, r.y1},
                                      DyadicComplex{r.x1, r.y0}})
                    EXPECT_TRUE(f.disk.contains(p));
            }
        }
    }
}

TEST(Neighborhood, FarComponentsAreDisjoint) {
    ComponentFrame f = frame(kGrid, Component{{sq(0, 0)}});
    EXPECT_TRUE(neighborhood_disjoint(kGrid, f, Component{{sq(100, 0)}}));
    EXPECT_FALSE(neighborhood_disjoint(kGrid, f, Component{{sq(2, 0)}}));
}

TEST(Neighborhood, BoundaryContactCountsAsIntersection) {
    // centre (1/2, 1/2), 4 Delta radius 3; a unit square starting at x = 7/2
    Grid g{dc(0)};
    Component c{{sq(0, 0)}};
    ComponentFrame f = frame(g, c);
    Component far{{GridSquare{-1, 7, 1}}};  // [7/2, 4] x [1/2, 1]
    EXPECT_FALSE(neighborhood_disjoint(g, f, far));
    Component farther{{GridSquare{-3, 29, 4}}};  // [29/8, 30/8] x [1/2, 5/8]
    EXPECT_TRUE(neighborhood_disjoint(g, f, farther));
}

TEST(Distance, Invariant) {
    std::vector<Component> adjacent{Component{{sq(0, 0)}}, Component{{sq(1, 0)}}};
    EXPECT_FALSE(distance_lower_bound_invariant(kGrid, adjacent));
    std::vector<Component> spaced{Component{{sq(0, 0)}}, Component{{sq(2, 0)}}};
    EXPECT_TRUE(distance_lower_bound_invariant(kGrid, spaced));
    EXPECT_TRUE(distance_lower_bound_invariant(kGrid, {Component{{sq(0, 0)}}}));
    // different levels: the larger width is what counts
    std::vector<Component> mixed{Component{{sq(0, 0, 1)}}, Component{{sq(3, 0, 0)}}};
    EXPECT_FALSE(distance_lower_bound_invariant(kGrid, mixed));  // gap 1 < 2
    std::vector<Component> mixed_ok{Component{{sq(0, 0, 1)}}, Component{{sq(4, 0, 0)}}};
    EXPECT_TRUE(distance_lower_bound_invariant(kGrid, mixed_ok));  // gap 2
}

TEST(Points, ClosedMembership) {
    std::vector<Component> cs{Component{{sq(0, 0)}}};
    EXPECT_TRUE(point_in_components(kGrid, {dy(1, -1), dy(1, -1)}, cs));
    EXPECT_TRUE(point_in_components(kGrid, dc(1, 1), cs));
    const Dyadic ulp = Dyadic::pow2(-200);
    EXPECT_FALSE(point_in_components(kGrid, {Dyadic(1) + ulp, Dyadic(1)}, cs));
    EXPECT_TRUE(point_in_enlarged(kGrid, {dy(3, -1), dy(3, -1)}, cs[0]));
    EXPECT_FALSE(point_in_enlarged(kGrid, {dy(3, -1) + ulp, Dyadic(0)}, cs[0]));
}

TEST(Squares, ChildrenAndAncestors) {
    GridSquare s = sq(3, -2, 0);
    auto kids = s.children();
    ASSERT_EQ(kids.size(), 4u);
    for (const auto& k : kids) {
        EXPECT_EQ(k.level, -1);
        EXPECT_EQ(k.ancestor(0), s);
    }
    EXPECT_EQ(kGrid.enclosing_disk(s).radius, dy(3, -2));
}
