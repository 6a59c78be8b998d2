#include <catch2/catch_amalgamated.hpp>

#include "finmap/complex.hpp"
#include "finmap/model.hpp"

using namespace finmap;

namespace {
FinitePoset vee() { return poset_from_covers({"a", "b", "t"}, {{"a", "t"}, {"b", "t"}}); }

SimplicialComplex edge() { return make_complex({"a", "b"}, {{"a", "b"}}); }
SimplicialComplex triangle_boundary() {
    return make_complex({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}
SimplicialComplex full_triangle() { return make_complex({"a", "b", "c"}, {{"a", "b", "c"}}); }
SimplicialComplex two_edges() {
    return make_complex({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
}
SimplicialComplex tetra_boundary() {
    return make_complex({"a", "b", "c", "d"},
                        {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
}
} // namespace

TEST_CASE("complex construction closes downward") {
    auto K = full_triangle();
    CHECK(K.simplices.size() == 7); // 3 + 3 + 1
    CHECK(K.has_simplex({0, 1}));
    CHECK(K.dimension() == 2);
    CHECK(maximal_simplices(K).size() == 1);
    CHECK_THROWS_AS(make_complex({"a"}, {{"a", "zz"}}), PreconditionError);
}

TEST_CASE("order complex") {
    auto anti = poset_from_covers({"a", "b"}, {});
    auto Ka = order_complex(anti);
    CHECK(Ka.simplices == std::vector<std::vector<int>>{{0}, {1}}); // two isolated vertices

    auto chain = poset_from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    auto Kc = order_complex(chain);
    CHECK(Kc.simplices.size() == 7); // the full 2-simplex

    auto Kv = order_complex(vee());
    // path: edges {a,t} and {b,t}, no triangle
    CHECK(Kv.simplices_of_dim(1).size() == 2);
    CHECK(Kv.simplices_of_dim(2).empty());
}

TEST_CASE("face poset") {
    auto pe = face_poset(edge());
    REQUIRE(pe.size() == 3);
    CHECK(pe.leq(pe.index_of("{a}"), pe.index_of("{a,b}")));
    CHECK(pe.leq(pe.index_of("{b}"), pe.index_of("{a,b}")));
    CHECK_FALSE(pe.leq(pe.index_of("{a}"), pe.index_of("{b}")));

    auto pt = face_poset(triangle_boundary());
    CHECK(pt.size() == 6);
    int minimal = 0, maximal = 0;
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (minimal_open(pt, (int)i).size() == 1) ++minimal;
        if (closure_of(pt, (int)i).size() == 1) ++maximal;
    }
    CHECK(minimal == 3);
    CHECK(maximal == 3);

    auto pp = face_poset(make_complex({"a"}, {}));
    CHECK(pp.size() == 1);
}

TEST_CASE("barycentric subdivision by direct flag enumeration") {
    auto Ke = barycentric_subdivision(edge());
    CHECK(Ke.vertices.size() == 3);
    CHECK(Ke.simplices_of_dim(1).size() == 2);

    // full triangle: 7 vertices, 12 edges, 6 triangles
    auto Kt = barycentric_subdivision(full_triangle());
    CHECK(Kt.vertices.size() == 7);
    CHECK(Kt.simplices_of_dim(1).size() == 12);
    CHECK(Kt.simplices_of_dim(2).size() == 6);

    // two isolated points subdivide to themselves
    auto pts = make_complex({"a", "b"}, {});
    CHECK(barycentric_subdivision(pts) == make_complex({"{a}", "{b}"}, {}));
}

TEST_CASE("K(chi(K)) equals the barycentric subdivision, as labelled complexes") {
    for (auto& K : {edge(), triangle_boundary(), full_triangle(), two_edges(), tetra_boundary()})
        CHECK(order_complex(face_poset(K)) == barycentric_subdivision(K));
}

TEST_CASE("induced simplicial maps") {
    auto v = vee();
    auto id = induced_simplicial_map(make_monotone(v, v, std::vector<int>{0, 1, 2}));
    CHECK(id.vertex_img == std::vector<int>{0, 1, 2});

    // constant map collapses everything to one vertex
    auto c = induced_simplicial_map(make_monotone(v, v, std::vector<int>{2, 2, 2}));
    CHECK(c.vertex_img == std::vector<int>{2, 2, 2});

    // non-monotone input is rejected upstream
    CHECK_THROWS_AS(make_monotone(poset_from_covers({"a", "b"}, {{"a", "b"}}),
                                  poset_from_covers({"p", "q"}, {}), std::vector<int>{0, 1}),
                    PreconditionError);
}

TEST_CASE("induced poset maps") {
    auto K = edge();
    auto idp = induced_poset_map(identity_simplicial_map(K));
    for (std::size_t i = 0; i < idp.src.size(); ++i) CHECK(idp.img[i] == (int)i);

    // collapsing an edge to a vertex
    auto pointK = make_complex({"a"}, {});
    auto collapse = make_simplicial_map(K, pointK, {0, 0});
    auto cp = induced_poset_map(collapse);
    for (std::size_t i = 0; i < cp.src.size(); ++i)
        CHECK(cp.dst.labels[cp.img[i]] == "{a}");
}

TEST_CASE("functoriality on small instances") {
    auto v = vee();
    auto swap = make_monotone(v, v, std::vector<int>{1, 0, 2});
    auto cst = make_monotone(v, v, std::vector<int>{2, 2, 2});
    // K(f ∘ g) = K(f) ∘ K(g)
    auto lhs = induced_simplicial_map(make_monotone(v, v, [&] {
        std::vector<int> img(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) img[i] = cst.img[swap.img[i]];
        return img;
    }()));
    auto rhs = compose(induced_simplicial_map(cst), induced_simplicial_map(swap));
    CHECK(lhs.vertex_img == rhs.vertex_img);

    // χ(ψ ∘ φ) = χ(ψ) ∘ χ(φ) for simplicial maps of the edge
    auto K = edge();
    auto flip = make_simplicial_map(K, K, {1, 0});
    auto pflip = induced_poset_map(flip);
    auto pcomp = induced_poset_map(compose(flip, flip));
    for (std::size_t i = 0; i < pcomp.src.size(); ++i)
        CHECK(pcomp.img[i] == pflip.img[pflip.img[i]]);
}

TEST_CASE("bond maps induce simplicial maps on stage posets (small discrete case)") {
    // stage posets: W of the 2-point -> 3-point exhaustive stage at two indices
    auto X = finite_space({"x1", "x2"}, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    auto Y = finite_space({"y1", "y2", "y3"},
                          {{Rat(0), Rat(1), Rat(1)},
                           {Rat(1), Rat(0), Rat(1)},
                           {Rat(1), Rat(1), Rat(0)}});
    ModelSystem sys(X, Y);
    auto fine = enumerate_W_exhaustive(sys.stage(2, 2));
    auto coarse = enumerate_W_exhaustive(sys.stage(1, 1));

    auto poset_of = [&](const ModelStage& st) {
        std::vector<std::string> labels;
        for (auto& w : st.W) labels.push_back(export_map_set(st, w));
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t i = 0; i < st.W.size(); ++i)
            for (std::size_t j = 0; j < st.W.size(); ++j)
                if (model_leq(ModelElement(st.W[i]), ModelElement(st.W[j])))
                    pairs.emplace_back(labels[i], labels[j]);
        return make_poset(labels, pairs);
    };
    auto pf = poset_of(fine), pc = poset_of(coarse);
    std::vector<int> img(pf.size());
    for (std::size_t i = 0; i < fine.W.size(); ++i) {
        auto b = bond(ModelElement(fine.W[i]), sys, {2, 2}, {1, 1});
        img[pf.index_of(export_map_set(fine, fine.W[i]))] =
            pc.index_of(export_map_set(coarse, b));
    }
    auto mono = make_monotone(pf, pc, img); // continuity verified on construction
    auto simp = induced_simplicial_map(mono);
    CHECK(simp.src.vertices.size() == pf.size());
}

TEST_CASE("complex json round trip") {
    for (auto& K : {triangle_boundary(), two_edges(), tetra_boundary()}) {
        auto back = complex_from_json(complex_to_json(K));
        CHECK(back == K);
    }
    CHECK_THROWS_AS(complex_from_json("[]"), ParseError);
    CHECK_THROWS_AS(complex_from_json("{\"vertices\": [\"a\"]}"), ParseError);
}
