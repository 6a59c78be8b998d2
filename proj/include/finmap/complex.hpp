#ifndef FINMAP_COMPLEX_HPP
#define FINMAP_COMPLEX_HPP

#include <json.hpp>

#include "finmap/poset.hpp"

namespace finmap {

// An abstract simplicial complex with labelled vertices.  All simplices are
// stored (downward closed), sorted by dimension then lexicographically.
struct SimplicialComplex {
    std::vector<std::string> vertices;        // sorted
    std::vector<std::vector<int>> simplices;  // sorted vertex index sets

    std::size_t dimension() const {
        std::size_t d = 0;
        for (auto& s : simplices) d = std::max(d, s.size());
        return d == 0 ? 0 : d - 1;
    }

    std::vector<std::vector<int>> simplices_of_dim(std::size_t k) const {
        std::vector<std::vector<int>> out;
        for (auto& s : simplices)
            if (s.size() == k + 1) out.push_back(s);
        return out;
    }

    bool has_simplex(const std::vector<int>& s) const {
        return std::binary_search(simplices.begin(), simplices.end(), s, simplex_less);
    }

    static bool simplex_less(const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }

    std::string simplex_label(const std::vector<int>& s) const {
        std::string l = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) l += ",";
            l += vertices[s[i]];
        }
        return l + "}";
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertices == b.vertices && a.simplices == b.simplices;
    }
};

inline SimplicialComplex make_complex(std::vector<std::string> verts,
                                      const std::vector<std::vector<std::string>>& maximal) {
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw PreconditionError("duplicate vertex label");
    SimplicialComplex K;
    K.vertices = std::move(verts);
    auto idx = [&](const std::string& v) {
        auto it = std::lower_bound(K.vertices.begin(), K.vertices.end(), v);
        if (it == K.vertices.end() || *it != v) throw PreconditionError("unknown vertex '" + v + "'");
        return (int)(it - K.vertices.begin());
    };
    std::set<std::vector<int>> faces;
    for (std::size_t i = 0; i < K.vertices.size(); ++i) faces.insert({(int)i});
    for (auto& m : maximal) {
        std::vector<int> s;
        for (auto& v : m) s.push_back(idx(v));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw PreconditionError("empty simplex");
        // all nonempty subsets
        for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
            std::vector<int> f;
            for (std::size_t b = 0; b < s.size(); ++b)
                if (mask >> b & 1) f.push_back(s[b]);
            faces.insert(f);
        }
    }
    K.simplices.assign(faces.begin(), faces.end());
    std::sort(K.simplices.begin(), K.simplices.end(), SimplicialComplex::simplex_less);
    return K;
}

// ---------------------------------------------------------------------------
// the McCord functors

// K(X): simplices are the nonempty chains of the poset.
inline SimplicialComplex order_complex(const FinitePoset& p) {
    SimplicialComplex K;
    K.vertices = p.labels;
    std::vector<std::vector<int>> chains;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        for (int x = start; x < (int)p.size(); ++x) {
            bool comp = true;
            for (int y : cur)
                if (!p.leq(x, y) && !p.leq(y, x)) { comp = false; break; }
            if (!comp) continue;
            cur.push_back(x);
            chains.push_back(cur);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(0);
    for (auto& c : chains) std::sort(c.begin(), c.end());
    std::sort(chains.begin(), chains.end(), SimplicialComplex::simplex_less);
    chains.erase(std::unique(chains.begin(), chains.end()), chains.end());
    K.simplices = std::move(chains);
    return K;
}

// χ(K): the face poset, elements labelled by their vertex sets, ordered by
// inclusion.  Barycenter labels are the "{a,b,...}" strings, which makes
// K(χ(K)) literally equal to the barycentric subdivision.
inline FinitePoset face_poset(const SimplicialComplex& K) {
    std::vector<std::string> labels;
    for (auto& s : K.simplices) labels.push_back(K.simplex_label(s));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto& s : K.simplices)
        for (auto& t : K.simplices)
            if (std::includes(t.begin(), t.end(), s.begin(), s.end()))
                pairs.emplace_back(K.simplex_label(s), K.simplex_label(t));
    return make_poset(labels, pairs);
}

// K': vertices are the simplices of K, simplices are the flags
// σ_0 ⊂ σ_1 ⊂ ... ⊂ σ_k.  Built directly from the containment relation,
// independently of order_complex/face_poset.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& K) {
    std::vector<std::string> verts;
    for (auto& s : K.simplices) verts.push_back(K.simplex_label(s));
    SimplicialComplex out;
    out.vertices = verts;
    std::sort(out.vertices.begin(), out.vertices.end());
    auto vidx = [&](const std::string& l) {
        return (int)(std::lower_bound(out.vertices.begin(), out.vertices.end(), l) -
                     out.vertices.begin());
    };
    const std::size_t n = K.simplices.size();
    std::vector<std::vector<int>> strictly_contains(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && K.simplices[i].size() < K.simplices[j].size() &&
                std::includes(K.simplices[j].begin(), K.simplices[j].end(),
                              K.simplices[i].begin(), K.simplices[i].end()))
                strictly_contains[i].push_back((int)j);
    std::vector<std::vector<int>> flags;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int top) {
        std::vector<int> flag;
        for (int f : cur) flag.push_back(vidx(K.simplex_label(K.simplices[f])));
        std::sort(flag.begin(), flag.end());
        flags.push_back(flag);
        for (int nxt : strictly_contains[top]) {
            cur.push_back(nxt);
            rec(nxt);
            cur.pop_back();
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        cur = {(int)i};
        rec((int)i);
    }
    std::sort(flags.begin(), flags.end(), SimplicialComplex::simplex_less);
    flags.erase(std::unique(flags.begin(), flags.end()), flags.end());
    out.simplices = std::move(flags);
    return out;
}

// ---------------------------------------------------------------------------
// induced maps

struct SimplicialMap {
    SimplicialComplex src, dst;
    std::vector<int> vertex_img; // src vertex index -> dst vertex index
};

inline SimplicialMap make_simplicial_map(const SimplicialComplex& src,
                                         const SimplicialComplex& dst,
                                         const std::vector<int>& vertex_img) {
    if (vertex_img.size() != src.vertices.size())
        throw PreconditionError("vertex assignment is not total");
    for (auto& s : src.simplices) {
        std::vector<int> img;
        for (int v : s) img.push_back(vertex_img[v]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (!dst.has_simplex(img))
            throw PreconditionError("image of simplex " + src.simplex_label(s) +
                                    " is not a simplex of the target");
    }
    return {src, dst, vertex_img};
}

// 𝒦(φ): a monotone map of posets induces a simplicial map of order complexes
// (chains go to chains).
inline SimplicialMap induced_simplicial_map(const MonotoneMap& phi) {
    SimplicialComplex src = order_complex(phi.src), dst = order_complex(phi.dst);
    std::vector<int> vimg;
    for (std::size_t i = 0; i < phi.src.size(); ++i) {
        const std::string& target = phi.dst.labels[phi.img[i]];
        vimg.push_back((int)(std::lower_bound(dst.vertices.begin(), dst.vertices.end(), target) -
                             dst.vertices.begin()));
    }
    return make_simplicial_map(src, dst, vimg);
}

// χ(ψ): a simplicial map induces a monotone map of face posets, σ ↦ ψ(σ).
inline MonotoneMap induced_poset_map(const SimplicialMap& psi) {
    FinitePoset src = face_poset(psi.src), dst = face_poset(psi.dst);
    std::vector<int> img(src.size(), -1);
    for (auto& s : psi.src.simplices) {
        std::vector<int> t;
        for (int v : s) t.push_back(psi.vertex_img[v]);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        img[src.index_of(psi.src.simplex_label(s))] = dst.index_of(psi.dst.simplex_label(t));
    }
    return make_monotone(src, dst, img);
}

inline SimplicialMap identity_simplicial_map(const SimplicialComplex& K) {
    std::vector<int> id(K.vertices.size());
    std::iota(id.begin(), id.end(), 0);
    return {K, K, id};
}

inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (!(g.src == f.dst)) throw PreconditionError("composing maps of mismatched complexes");
    std::vector<int> img(f.vertex_img.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = g.vertex_img[f.vertex_img[i]];
    return make_simplicial_map(f.src, g.dst, img);
}

// ---------------------------------------------------------------------------
// interchange format: {"vertices": [...], "simplices": [[...], ...]}
// listing the maximal simplices; the closure is computed on load.

inline std::vector<std::vector<int>> maximal_simplices(const SimplicialComplex& K) {
    std::vector<std::vector<int>> out;
    for (auto& s : K.simplices) {
        bool maximal = true;
        for (auto& t : K.simplices)
            if (t.size() > s.size() &&
                std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(s);
    }
    return out;
}

inline std::string complex_to_json(const SimplicialComplex& K) {
    nlohmann::json j;
    j["vertices"] = K.vertices;
    auto& arr = j["simplices"] = nlohmann::json::array();
    for (auto& s : maximal_simplices(K)) {
        nlohmann::json simplex = nlohmann::json::array();
        for (int v : s) simplex.push_back(K.vertices[v]);
        arr.push_back(simplex);
    }
    return j.dump(2) + "\n";
}

inline SimplicialComplex complex_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("complex document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("simplices"))
        throw ParseError("complex document needs 'vertices' and 'simplices'");
    std::vector<std::string> verts;
    for (auto& v : j["vertices"]) {
        if (!v.is_string()) throw ParseError("vertex labels must be strings");
        verts.push_back(v.get<std::string>());
    }
    std::vector<std::vector<std::string>> maximal;
    for (auto& s : j["simplices"]) {
        if (!s.is_array()) throw ParseError("simplices must be arrays of labels");
        std::vector<std::string> simplex;
        for (auto& v : s) simplex.push_back(v.get<std::string>());
        maximal.push_back(simplex);
    }
    return make_complex(verts, maximal);
}

inline long euler_characteristic(const SimplicialComplex& K) {
    long chi = 0;
    for (auto& s : K.simplices) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
}

} // namespace finmap

#endif
