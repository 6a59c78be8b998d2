#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "finmap/model.hpp"

using namespace finmap;

namespace {
ModelSystem interval_system() { return ModelSystem(interval_space(), interval_space()); }

MetricSpaceRepr two_points() {
    return finite_space({"x1", "x2"}, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
}
MetricSpaceRepr three_points() {
    return finite_space({"y1", "y2", "y3"},
                        {{Rat(0), Rat(1), Rat(1)},
                         {Rat(1), Rat(0), Rat(1)},
                         {Rat(1), Rat(1), Rat(0)}});
}
ModelSystem discrete_system() { return ModelSystem(two_points(), three_points()); }

PLMap criterion_homeo() {
    return make_pl(Carrier::interval, Carrier::interval,
                   {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(1), Rat(1)}});
}
} // namespace

TEST_CASE("projection of the identity at stage (1,1) has 12 elements") {
    auto sys = interval_system();
    auto st = sys.stage(1, 1);
    auto S = project(identity_map(Carrier::interval), st);
    REQUIRE_FALSE(S.empty_set);
    REQUIRE(S.allowed.size() == 3);
    // classes are ordered 0 < (0,1) < 1
    CHECK(S.allowed[0] == std::vector<int>{0, 1});
    CHECK(S.allowed[1] == std::vector<int>{0, 1, 2});
    CHECK(S.allowed[2] == std::vector<int>{1, 2});
    CHECK(cardinality(S) == 12);

    // the twelve assignments, in odometer order over the class chain
    auto e = expand(S, st.x_classes(), st.y_classes());
    std::vector<std::vector<int>> expected{
        {0, 0, 1}, {0, 0, 2}, {0, 1, 1}, {0, 1, 2}, {0, 2, 1}, {0, 2, 2},
        {1, 0, 1}, {1, 0, 2}, {1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {1, 2, 2}};
    CHECK(e.maps == expected);
}

TEST_CASE("basepoint constant projects to the empty element") {
    auto sys = interval_system();
    auto st = sys.stage(1, 1);
    PLMap b = parse_map_line(Carrier::interval, Carrier::interval, "basepoint");
    CHECK(project(b, st).empty_set);
    PLMap b0 = parse_map_line(Carrier::interval, Carrier::interval, "basepoint: 0");
    CHECK(project(b0, st).empty_set);
    PLMap bbad = parse_map_line(Carrier::interval, Carrier::interval, "basepoint: 1/3");
    CHECK_THROWS_AS(project(bbad, st), PreconditionError);
}

TEST_CASE("non-basepoint constant uses the closure rule") {
    auto sys = interval_system();
    auto st = sys.stage(1, 1);
    auto S = project(make_constant(Carrier::interval, Carrier::interval, cpoint(Rat(1, 2))), st);
    REQUIRE_FALSE(S.empty_set);
    CHECK(S.allowed == std::vector<std::vector<int>>{{1}, {1}, {1}});
    CHECK(cardinality(S) == 1);
}

TEST_CASE("rectangularity: membership is componentwise") {
    auto sys = interval_system();
    auto st = sys.stage(2, 2);
    auto S = project(criterion_homeo(), st);
    auto e = expand(S, st.x_classes(), st.y_classes());
    CHECK((BigInt)e.maps.size() == cardinality(S));
    for (auto& g : e.maps) CHECK(rect_contains(S, g));
    // flip one value outside the allowed set and membership fails
    auto g = e.maps.front();
    for (int v = 0; v < (int)st.y_classes(); ++v) {
        g[0] = v;
        bool in = std::binary_search(S.allowed[0].begin(), S.allowed[0].end(), v);
        CHECK(rect_contains(S, g) == in);
    }
}

TEST_CASE("bond at equal indices is the identity") {
    auto sys = interval_system();
    auto S = project(criterion_homeo(), sys.stage(2, 2));
    CHECK(bond(ModelElement(S), sys, {2, 2}, {2, 2}) == S);
    CHECK(bond(ModelElement(empty_map_set()), sys, {2, 2}, {1, 1}).empty_set);
    CHECK_THROWS_AS(bond(ModelElement(S), sys, {2, 2}, {3, 1}), PreconditionError);
}

TEST_CASE("bond commutes with projection (computed diagram)") {
    auto sys = interval_system();
    std::vector<PLMap> maps{identity_map(Carrier::interval), criterion_homeo(),
                            make_pl(Carrier::interval, Carrier::interval,
                                    {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(0)}}),
                            make_constant(Carrier::interval, Carrier::interval, cpoint(Rat(2, 3)))};
    for (auto& f : maps)
        for (int n = 1; n <= 3; ++n)
            for (int m = 1; m <= 3; ++m) {
                auto fine = project(f, sys.stage(n + 1, m + 1));
                auto coarse = project(f, sys.stage(n, m));
                CHECK(bond(ModelElement(fine), sys, {n + 1, m + 1}, {n, m}) == coarse);
            }
    // the worked 12-element case
    auto S22 = project(identity_map(Carrier::interval), sys.stage(2, 2));
    auto S11 = project(identity_map(Carrier::interval), sys.stage(1, 1));
    CHECK(bond(ModelElement(S22), sys, {2, 2}, {1, 1}) == S11);
}

TEST_CASE("model order: the empty element is the unique maximum") {
    auto sys = interval_system();
    auto st = sys.stage(1, 1);
    auto S = project(identity_map(Carrier::interval), st);
    RectangularMapSet full;
    full.allowed = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    CHECK(model_leq(ModelElement(S), ModelElement(empty_map_set())));
    CHECK(model_leq(ModelElement(full), ModelElement(empty_map_set())));
    CHECK(model_leq(ModelElement(full), ModelElement(S))); // S ⊆ full
    CHECK_FALSE(model_leq(ModelElement(S), ModelElement(full)));
    CHECK_FALSE(model_leq(ModelElement(empty_map_set()), ModelElement(S)));

    // two different singletons are incomparable
    RectangularMapSet a, b;
    a.allowed = {{0}, {0}, {1}};
    b.allowed = {{1}, {0}, {1}};
    CHECK_FALSE(model_leq(ModelElement(a), ModelElement(b)));
    CHECK_FALSE(model_leq(ModelElement(b), ModelElement(a)));
}

TEST_CASE("enumerate_W over families") {
    auto sys = interval_system();
    auto st = sys.stage(1, 1);
    PLMap b = parse_map_line(Carrier::interval, Carrier::interval, "basepoint");
    auto only_base = enumerate_W(st, {b});
    REQUIRE(only_base.W.size() == 1);
    CHECK(only_base.W[0].empty_set);

    auto with_id = enumerate_W(st, {identity_map(Carrier::interval)});
    REQUIRE(with_id.W.size() == 2);
    CHECK(with_id.W[0].empty_set);
    CHECK(cardinality(with_id.W[1]) == 12);
    CHECK(with_id.provenance == WProvenance::sampled);

    // monotone in the family
    auto bigger = enumerate_W(st, {identity_map(Carrier::interval), criterion_homeo()});
    for (auto& w : with_id.W) {
        bool found = false;
        for (auto& v : bigger.W)
            if (v == w) found = true;
        CHECK(found);
    }
}

TEST_CASE("exhaustive W on the 2-point / 3-point discrete stage") {
    auto sys = discrete_system();
    auto st = enumerate_W_exhaustive(sys.stage(1, 1));
    CHECK(st.provenance == WProvenance::exhaustive);
    // nine set maps; the constant at y1 projects to ∅, the rest to singletons
    REQUIRE(st.W.size() == 9);
    CHECK(st.W[0].empty_set);
    for (std::size_t i = 1; i < st.W.size(); ++i) CHECK(cardinality(st.W[i]) == 1);

    // exhaustive enumeration is rejected off its precondition
    auto iv = interval_system();
    CHECK_THROWS_AS(enumerate_W_exhaustive(iv.stage(1, 1)), PreconditionError);
}

TEST_CASE("retract: identity on W, empty-W stages collapse to ∅") {
    auto sys = interval_system();
    auto st = enumerate_W(sys.stage(1, 1), {identity_map(Carrier::interval)});
    auto S = project(identity_map(Carrier::interval), st);
    CHECK(retract(st, ModelElement(S)) == S);
    CHECK(retract(st, ModelElement(empty_map_set())).empty_set);

    PLMap b = parse_map_line(Carrier::interval, Carrier::interval, "basepoint");
    auto only_base = enumerate_W(sys.stage(1, 1), {b});
    RectangularMapSet full;
    full.allowed = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    CHECK(retract(only_base, ModelElement(full)).empty_set);

    auto bare = sys.stage(1, 1);
    CHECK_THROWS_AS(retract(bare, ModelElement(full)), PreconditionError);
}

TEST_CASE("retract on the discrete stage: succeeds iff at most one singleton fits") {
    auto sys = discrete_system();
    auto st = enumerate_W_exhaustive(sys.stage(1, 1));

    // S = {y2,y3} x {y1}: two incomparable singletons of W sit inside S
    RectangularMapSet S;
    S.allowed = {{1, 2}, {0}};
    CHECK_THROWS_AS(retract(st, ModelElement(S)), TotalOrderViolation);
    try {
        retract(st, ModelElement(S));
    } catch (const TotalOrderViolation& v) {
        CHECK(v.first != v.second); // witness pair is archived in the exception
    }

    // S containing only the basepoint-constant assignment: retract lands on ∅
    RectangularMapSet Sbase;
    Sbase.allowed = {{0}, {0}}; // the constant-at-y1 class map is not in W
    CHECK(retract(st, ModelElement(Sbase)).empty_set);

    // S with exactly one W-singleton inside
    RectangularMapSet S1;
    S1.allowed = {{0, 1}, {0}}; // contains (y1,y1) [not in W] and (y2,y1)
    auto r = retract(st, ModelElement(S1));
    CHECK(cardinality(r) == 1);
    CHECK(element_subset(ModelElement(r), ModelElement(S1)));

    // retract(project(f)) = project(f): identity on the image
    std::map<std::string, std::string> t{{"x1", "y2"}, {"x2", "y3"}};
    auto pf = project(make_table(two_points(), three_points(), t), st);
    CHECK(retract(st, ModelElement(pf)) == pf);
}

TEST_CASE("retract monotonicity where defined") {
    auto sys = discrete_system();
    auto st = enumerate_W_exhaustive(sys.stage(1, 1));
    // S ⊆ T with both retracts defined: retract(S) ⊆ retract(T)
    RectangularMapSet S, T;
    S.allowed = {{1}, {0}};
    T.allowed = {{0, 1}, {0}};
    auto rs = retract(st, ModelElement(S));
    auto rt = retract(st, ModelElement(T));
    CHECK(element_subset(ModelElement(rs), ModelElement(rt)));
}

TEST_CASE("threads built from projections bond correctly") {
    auto sys = interval_system();
    auto f = criterion_homeo();
    TruncatedThread t;
    for (int k = 1; k <= 4; ++k)
        t.stages.push_back({{k, k}, project(f, sys.stage(k, k))});
    std::string why;
    CHECK(check_thread(sys, t, &why));

    // tamper with one stage
    TruncatedThread bad = t;
    RectangularMapSet full;
    full.allowed.assign(sys.XQ(3).classes.size(),
                        [&] {
                            std::vector<int> all;
                            for (int j = 0; j < (int)sys.YQ(3).classes.size(); ++j) all.push_back(j);
                            return all;
                        }());
    bad.stages[2].second = full;
    CHECK_FALSE(check_thread(sys, bad, &why));

    // the all-empty thread is a thread
    TruncatedThread empties;
    for (int k = 1; k <= 3; ++k) empties.stages.push_back({{k, k}, empty_map_set()});
    CHECK(check_thread(sys, empties, &why));
}

TEST_CASE("injectivity witnesses") {
    auto sys = interval_system();
    auto f = identity_map(Carrier::interval);
    CHECK_FALSE(injectivity_witness(sys, f, identity_map(Carrier::interval), 8).has_value());

    auto g = make_constant(Carrier::interval, Carrier::interval, cpoint(Rat(1, 2)));
    auto w = injectivity_witness(sys, f, g, 8);
    REQUIRE(w.has_value());
    CHECK(w->n <= 4);
    CHECK(w->m <= 4);

    // two close homeomorphisms are separated at a finer index
    auto h = make_pl(Carrier::interval, Carrier::interval,
                     {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 8)}, {Rat(1), Rat(1)}});
    auto w2 = injectivity_witness(sys, f, h, 16);
    REQUIRE(w2.has_value());
}

TEST_CASE("interval membership pattern") {
    auto sys = interval_system();
    auto st11 = sys.stage(1, 1);
    CHECK(interval_W_pattern(project(identity_map(Carrier::interval), st11), st11));
    CHECK(interval_W_pattern(empty_map_set(), st11));

    // order-convexity failure: allowed(0) = {class 0, class 2} has a gap
    RectangularMapSet gap;
    gap.allowed = {{0, 2}, {0, 1, 2}, {1, 2}};
    CHECK_FALSE(interval_W_pattern(gap, st11));

    // neighbour containment failure
    RectangularMapSet nc;
    nc.allowed = {{0}, {1, 2}, {2}};
    CHECK_FALSE(interval_W_pattern(nc, st11));

    // projections of sampled pl maps satisfy the pattern
    std::mt19937_64 rng(11);
    auto st22 = sys.stage(2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::pair<Rat, Rat>> knots{{Rat(0), Rat(rng() % 9, 8)}};
        int pieces = 1 + (int)(rng() % 3);
        for (int i = 1; i < pieces; ++i)
            knots.emplace_back(Rat(i, pieces), Rat(rng() % 9, 8));
        knots.emplace_back(Rat(1), Rat(rng() % 9, 8));
        auto f = make_pl(Carrier::interval, Carrier::interval, knots);
        CHECK(interval_W_pattern(project(f, st22), st22));
        CHECK(interval_W_pattern(project(f, st11), st11));
    }

    auto ds = discrete_system();
    auto fst = ds.stage(1, 1);
    CHECK_THROWS_AS(interval_W_pattern(empty_map_set(), fst), PreconditionError);
}

TEST_CASE("map set export and import round trip") {
    auto sys = interval_system();
    auto st = sys.stage(2, 2);
    auto S = project(criterion_homeo(), st);
    std::istringstream in(export_map_set(st, S));
    CHECK(import_map_set(st, in) == S);

    std::istringstream e("∅\n");
    CHECK(import_map_set(st, e).empty_set);

    std::istringstream bad("point 0 : point 0\n");
    CHECK_THROWS_AS(import_map_set(st, bad), ParseError); // missing class lines
}
