#ifndef FINMAP_HOMOLOGY_HPP
#define FINMAP_HOMOLOGY_HPP

#include "finmap/complex.hpp"
#include "finmap/rational.hpp"

namespace finmap {

// Integer simplicial homology via Smith normal form of the boundary
// matrices, arbitrary precision throughout.  Unreduced Betti numbers;
// torsion coefficients per dimension.
struct HomologyResult {
    std::vector<std::size_t> betti;            // index = dimension
    std::vector<std::vector<BigInt>> torsion;  // coefficients > 1 per dimension

    friend bool operator==(const HomologyResult& a, const HomologyResult& b) {
        return a.betti == b.betti && a.torsion == b.torsion;
    }
};

namespace detail {

// Smith normal form diagonal (nonzero entries, divisibility-normalised).
inline std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> M) {
    std::vector<BigInt> diag;
    std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::size_t r0 = 0, c0 = 0;
    auto abs = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };
    while (r0 < rows && c0 < cols) {
        // find a nonzero pivot of least absolute value
        std::size_t pi = rows, pj = cols;
        BigInt best(0);
        for (std::size_t i = r0; i < rows; ++i)
            for (std::size_t j = c0; j < cols; ++j)
                if (M[i][j] != 0 && (best == 0 || abs(M[i][j]) < best)) {
                    best = abs(M[i][j]);
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break; // all zero
        std::swap(M[r0], M[pi]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(M[i][c0], M[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = r0 + 1; i < rows; ++i) {
                if (M[i][c0] == 0) continue;
                BigInt q = M[i][c0] / M[r0][c0];
                for (std::size_t j = c0; j < cols; ++j) M[i][j] -= q * M[r0][j];
                if (M[i][c0] != 0) { std::swap(M[r0], M[i]); clean = false; }
            }
            for (std::size_t j = c0 + 1; j < cols; ++j) {
                if (M[r0][j] == 0) continue;
                BigInt q = M[r0][j] / M[r0][c0];
                for (std::size_t i = r0; i < rows; ++i) M[i][j] -= q * M[i][c0];
                if (M[r0][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(M[i][c0], M[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            for (std::size_t i = r0 + 1; i < rows && clean; ++i)
                for (std::size_t j = c0 + 1; j < cols && clean; ++j)
                    if (M[i][j] % M[r0][c0] != 0) {
                        for (std::size_t jj = c0; jj < cols; ++jj) M[r0][jj] += M[i][jj];
                        clean = false;
                    }
        }
        diag.push_back(abs(M[r0][c0]));
        ++r0;
        ++c0;
    }
    return diag;
}

inline std::vector<std::vector<BigInt>> boundary_matrix(const SimplicialComplex& K,
                                                        std::size_t k) {
    auto rows_s = K.simplices_of_dim(k - 1);
    auto cols_s = K.simplices_of_dim(k);
    std::map<std::vector<int>, std::size_t> row_index;
    for (std::size_t i = 0; i < rows_s.size(); ++i) row_index[rows_s[i]] = i;
    std::vector<std::vector<BigInt>> M(rows_s.size(), std::vector<BigInt>(cols_s.size(), 0));
    for (std::size_t j = 0; j < cols_s.size(); ++j) {
        const auto& s = cols_s[j];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) face.push_back(s[i]);
            M[row_index.at(face)][j] = (drop % 2 == 0) ? 1 : -1;
        }
    }
    return M;
}

} // namespace detail

inline HomologyResult homology(const SimplicialComplex& K, std::size_t max_dim = 6) {
    const std::size_t dim = K.dimension();
    if (dim > max_dim)
        throw BoundExceeded("complex dimension " + std::to_string(dim) + " exceeds bound " +
                            std::to_string(max_dim));
    std::vector<std::size_t> rank(dim + 2, 0);         // rank of ∂_k
    std::vector<std::vector<BigInt>> tors(dim + 1);
    std::vector<std::size_t> cells(dim + 1, 0);
    for (std::size_t k = 0; k <= dim; ++k) cells[k] = K.simplices_of_dim(k).size();
    for (std::size_t k = 1; k <= dim; ++k) {
        auto diag = detail::smith_diagonal(detail::boundary_matrix(K, k));
        rank[k] = diag.size();
        for (auto& d : diag)
            if (d > 1) tors[k - 1].push_back(d);
    }
    HomologyResult h;
    h.betti.resize(dim + 1);
    h.torsion = tors;
    for (std::size_t k = 0; k <= dim; ++k)
        h.betti[k] = cells[k] - rank[k] - rank[k + 1];
    return h;
}

// One line per dimension: "H_k = Z^b ⊕ Z/t1 ⊕ ...", "H_k = 0" when trivial.
inline std::string homology_report(const HomologyResult& h) {
    std::ostringstream os;
    for (std::size_t k = 0; k < h.betti.size(); ++k) {
        os << "H_" << k << " = ";
        std::vector<std::string> parts;
        if (h.betti[k] == 1) parts.push_back("Z");
        else if (h.betti[k] > 1) parts.push_back("Z^" + std::to_string(h.betti[k]));
        for (auto& t : h.torsion[k]) parts.push_back("Z/" + t.str());
        if (parts.empty()) os << "0";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) os << " ⊕ ";
            os << parts[i];
        }
        os << "\n";
    }
    return os.str();
}

// Alternating-sum check: χ(K) = Σ (-1)^k b_k.  Torsion does not contribute.
inline bool euler_identity_holds(const SimplicialComplex& K, const HomologyResult& h) {
    long lhs = euler_characteristic(K);
    long rhs = 0;
    for (std::size_t k = 0; k < h.betti.size(); ++k)
        rhs += (k % 2 == 0 ? 1 : -1) * (long)h.betti[k];
    return lhs == rhs;
}

// Connected-component representative per vertex.
inline std::vector<int> vertex_components(const SimplicialComplex& K) {
    std::vector<int> comp(K.vertices.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (auto& s : K.simplices)
        for (std::size_t i = 1; i < s.size(); ++i) comp[find(s[0])] = find(s[i]);
    std::vector<int> out(K.vertices.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = find((int)i);
    return out;
}

// The induced map on H_0 as component-representative -> component-
// representative, used to check that homology maps of an inverse system
// compose correctly at the 0-th level.
inline std::map<int, int> h0_component_map(const SimplicialMap& f) {
    auto cs = vertex_components(f.src), cd = vertex_components(f.dst);
    std::map<int, int> m;
    for (std::size_t v = 0; v < f.src.vertices.size(); ++v) m[cs[v]] = cd[f.vertex_img[v]];
    return m;
}

} // namespace finmap

#endif
