#include <catch2/catch_amalgamated.hpp>

#include "finmap/region.hpp"

using namespace finmap;

namespace {
Region iv_open(long an, long ad, long bn, long bd) {
    return make_open_region(Carrier::interval, Rat(an, ad), Rat(bn, bd));
}
Region iv_pt(long n, long d) { return make_point_region(Carrier::interval, Rat(n, d)); }
} // namespace

TEST_CASE("canonical form merges bridged intervals") {
    // (0,1/2) ∪ {1/2} ∪ (1/2,1) = (0,1)
    Region r = make_region(Carrier::interval,
                           {{false, Rat(0), Rat(1, 2)},
                            {true, Rat(1, 2), Rat(1, 2)},
                            {false, Rat(1, 2), Rat(1)}});
    CHECK(r == iv_open(0, 1, 1, 1));

    // half-open [0,1/2) stays {0} ∪ (0,1/2)
    Region h = make_region(Carrier::interval,
                           {{true, Rat(0), Rat(0)}, {false, Rat(0), Rat(1, 2)}});
    REQUIRE(h.comps.size() == 2);
    CHECK(h.comps[0].is_point);
    CHECK_FALSE(h.comps[1].is_point);

    // points inside intervals are absorbed, duplicates dropped
    Region a = make_region(Carrier::interval,
                           {{false, Rat(0), Rat(1)}, {true, Rat(1, 3), Rat(1, 3)},
                            {true, Rat(1, 3), Rat(1, 3)}});
    CHECK(a == iv_open(0, 1, 1, 1));

    // touching opens without the bridge point stay apart
    Region t = make_region(Carrier::interval,
                           {{false, Rat(0), Rat(1, 2)}, {false, Rat(1, 2), Rat(1)}});
    CHECK(t.comps.size() == 2);

    // overlapping opens merge
    Region o = make_region(Carrier::interval,
                           {{false, Rat(0), Rat(2, 3)}, {false, Rat(1, 3), Rat(1)}});
    CHECK(o == iv_open(0, 1, 1, 1));
}

TEST_CASE("intersection follows the worked cover computations") {
    // [0,1) ∩ [0,1/2) = [0,1/2)
    Region b01 = region_union(iv_pt(0, 1), iv_open(0, 1, 1, 1)); // [0,1)
    Region b0h = region_union(iv_pt(0, 1), iv_open(0, 1, 1, 2)); // [0,1/2)
    CHECK(region_intersect(b01, b0h) == b0h);
    // [0,1) ∩ (0,1] ∩ (0,1) = (0,1)
    Region b11 = region_union(iv_open(0, 1, 1, 1), iv_pt(1, 1)); // (0,1]
    Region mid = region_intersect(region_intersect(b01, b11), iv_open(0, 1, 1, 1));
    CHECK(mid == iv_open(0, 1, 1, 1));
    // [0,1) ∩ (0,1] ∩ [0,1/2) ∩ (0,1) = (0,1/2)
    Region u = region_intersect(region_intersect(b01, b11), region_intersect(b0h, iv_open(0, 1, 1, 1)));
    CHECK(u == iv_open(0, 1, 1, 2));
}

TEST_CASE("closure and subset") {
    Region r = iv_open(0, 1, 1, 2);
    Region cl = region_closure(r);
    CHECK(region_contains(cl, Rat(0)));
    CHECK(region_contains(cl, Rat(1, 2)));
    CHECK(region_subset(r, cl));
    CHECK_FALSE(region_subset(cl, r));
    CHECK(region_subset(iv_pt(1, 4), r));
    CHECK_FALSE(region_subset(iv_pt(1, 2), r));

    // closure of (a,b) ∪ (b,c) bridges through b
    Region two = region_union(iv_open(0, 1, 1, 2), iv_open(1, 2, 1, 1));
    auto segs = closed_segments(two);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].lo == 0);
    CHECK(segs[0].hi == 1);
}

TEST_CASE("interval distances") {
    // shared closure point
    CHECK(region_inf_dist(region_union(iv_pt(0, 1), iv_open(0, 1, 1, 2)),
                          region_union(iv_open(1, 2, 1, 1), iv_pt(1, 1))) == Rat(0));
    // {0} vs {1} hausdorff
    CHECK(region_hausdorff_dist(iv_pt(0, 1), iv_pt(1, 1)) == Rat(1));
    // (0,1/4) vs (3/4,1) inf
    CHECK(region_inf_dist(iv_open(0, 1, 1, 4), iv_open(3, 4, 1, 1)) == Rat(1, 2));
    // hausdorff of nested sets: d([0,1], [0,1/2]) = 1/2
    Region whole = region_union(region_union(iv_pt(0, 1), iv_open(0, 1, 1, 1)), iv_pt(1, 1));
    Region half = iv_open(0, 1, 1, 2);
    CHECK(region_hausdorff_dist(whole, half) == Rat(1, 2));
    // gap midpoint matters: A = {1/2}, B = {0} ∪ {1}
    Region b = region_union(iv_pt(0, 1), iv_pt(1, 1));
    CHECK(region_hausdorff_dist(iv_pt(1, 2), b) == Rat(1, 2));
    CHECK(region_diameter(whole) == Rat(1));
    CHECK(region_diameter(iv_pt(1, 2)) == Rat(0));
}

TEST_CASE("circle regions") {
    // arc through 0 lands in cut form
    Region wrap = make_open_region(Carrier::circle, Rat(9, 10), Rat(11, 10));
    REQUIRE(wrap.comps.size() == 3);
    CHECK(region_contains(wrap, Rat(0)));
    CHECK(region_contains(wrap, Rat(19, 20)));
    CHECK(region_contains(wrap, Rat(1, 20)));
    CHECK_FALSE(region_contains(wrap, Rat(1, 2)));

    // full circle
    Region full = make_open_region(Carrier::circle, Rat(0), Rat(2));
    CHECK(is_full_circle(full));
    CHECK(region_diameter(full) == Rat(1, 2));

    // closure wraps the endpoint 1 to 0
    Region arc = make_open_region(Carrier::circle, Rat(3, 4), Rat(1));
    Region cl = region_closure(arc);
    CHECK(region_contains(cl, Rat(0)));
    CHECK(region_contains(cl, Rat(3, 4)));

    // distance across the cut
    Region a = make_point_region(Carrier::circle, Rat(1, 10));
    Region b = make_point_region(Carrier::circle, Rat(9, 10));
    CHECK(region_inf_dist(a, b) == Rat(1, 5));
    CHECK(region_hausdorff_dist(a, b) == Rat(1, 5));

    // antipodal pair forces diameter 1/2
    Region two = region_union(make_point_region(Carrier::circle, Rat(0)),
                              make_point_region(Carrier::circle, Rat(1, 2)));
    CHECK(region_diameter(two) == Rat(1, 2));
    Region quarter = make_open_region(Carrier::circle, Rat(0), Rat(1, 4));
    CHECK(region_diameter(quarter) == Rat(1, 4));
}

TEST_CASE("region text form") {
    CHECK(region_str(iv_pt(1, 2)) == "point 1/2");
    CHECK(region_str(iv_open(0, 1, 1, 2)) == "open 0 1/2");
    Region u = region_union(iv_pt(0, 1), iv_open(0, 1, 1, 2));
    CHECK(region_str(u) == "point 0 + open 0 1/2");
    CHECK(region_str(make_finite_region({"b", "a"})) == "set a b");
}
