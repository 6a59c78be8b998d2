#include <catch2/catch_amalgamated.hpp>

#include "finmap/homology.hpp"

using namespace finmap;

namespace {
SimplicialComplex triangle_boundary() {
    return make_complex({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}
SimplicialComplex tetra_boundary() {
    return make_complex({"a", "b", "c", "d"},
                        {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
}
// minimal 6-vertex triangulation of the projective plane (icosahedron quotient)
SimplicialComplex rp2() {
    return make_complex({"1", "2", "3", "4", "5", "6"},
                        {{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"},
                         {"1", "2", "6"}, {"2", "3", "5"}, {"3", "4", "6"}, {"2", "4", "5"},
                         {"3", "5", "6"}, {"2", "4", "6"}});
}
} // namespace

TEST_CASE("smith normal form diagonals") {
    using detail::smith_diagonal;
    CHECK(smith_diagonal({{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(0)}}) ==
          std::vector<BigInt>{BigInt(2)});
    // divisibility normalisation: diag(2,3) ~ diag(1,6)
    auto d = smith_diagonal({{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}});
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == 6);
    // invariant factors via the minor-gcd oracle: for
    // [[2,4,4],[-6,6,12],[10,4,16]]  d1 = gcd(entries) = 2,
    // d1*d2 = gcd(2x2 minors) = 4, d1*d2*d3 = |det| = 624  =>  diag(2,2,156)
    auto c = smith_diagonal({{BigInt(2), BigInt(4), BigInt(4)},
                             {BigInt(-6), BigInt(6), BigInt(12)},
                             {BigInt(10), BigInt(4), BigInt(16)}});
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 2);
    CHECK(c[1] == 2);
    CHECK(c[2] == 156);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(c[i + 1] % c[i] == 0);
}

TEST_CASE("homology of basic complexes") {
    auto point = make_complex({"a"}, {});
    auto hp = homology(point);
    CHECK(hp.betti == std::vector<std::size_t>{1});
    CHECK(hp.torsion[0].empty());

    auto ht = homology(triangle_boundary());
    CHECK(ht.betti == std::vector<std::size_t>{1, 1});
    CHECK(homology_report(ht) == "H_0 = Z\nH_1 = Z\n");

    auto hs = homology(tetra_boundary()); // a 2-sphere
    CHECK(hs.betti == std::vector<std::size_t>{1, 0, 1});

    auto h2 = homology(make_complex({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}}));
    CHECK(h2.betti == std::vector<std::size_t>{2, 0});
}

TEST_CASE("torsion: the projective plane") {
    auto K = rp2();
    REQUIRE(K.simplices_of_dim(2).size() == 10);
    REQUIRE(K.simplices_of_dim(1).size() == 15);
    auto h = homology(K);
    CHECK(h.betti == std::vector<std::size_t>{1, 0, 0});
    REQUIRE(h.torsion[1].size() == 1);
    CHECK(h.torsion[1][0] == 2);
    CHECK(euler_identity_holds(K, h));
    CHECK(homology_report(h) == "H_0 = Z\nH_1 = Z/2\nH_2 = 0\n");
}

TEST_CASE("euler identity across a corpus") {
    for (auto& K : {triangle_boundary(), tetra_boundary(), rp2(),
                    make_complex({"a", "b", "c"}, {{"a", "b", "c"}})})
        CHECK(euler_identity_holds(K, homology(K)));
}

TEST_CASE("homology is invariant under barycentric subdivision") {
    for (auto& K : {triangle_boundary(), tetra_boundary(),
                    make_complex({"a", "b", "c"}, {{"a", "b", "c"}})}) {
        auto h = homology(K);
        auto hs = homology(barycentric_subdivision(K));
        CHECK(h == hs);
    }
}

TEST_CASE("dimension bound") {
    // a 7-simplex has dimension 7 > default bound 6
    auto K = make_complex({"a", "b", "c", "d", "e", "f", "g", "h"},
                          {{"a", "b", "c", "d", "e", "f", "g", "h"}});
    CHECK_THROWS_AS(homology(K), BoundExceeded);
    CHECK_NOTHROW(homology(K, 8));
}

TEST_CASE("H_0 component maps compose") {
    auto K = make_complex({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    auto L = make_complex({"p", "q"}, {});
    auto f = make_simplicial_map(K, L, {0, 0, 1, 1});
    auto g = make_simplicial_map(L, L, {1, 1});
    auto hf = h0_component_map(f);
    auto hg = h0_component_map(g);
    auto hc = h0_component_map(compose(g, f));
    REQUIRE(hf.size() == 2); // two components upstairs
    for (auto& [rep, img] : hf) CHECK(hc.at(rep) == hg.at(img));
}
