#ifndef FINMAP_POSET_HPP
#define FINMAP_POSET_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finmap/errors.hpp"

namespace finmap {

// A finite T0-space as a poset.  The full reflexive-transitive relation is
// stored (not just Hasse edges), so order queries are O(1).  Elements are
// kept sorted by label; every deterministic tie-break uses that order.
struct FinitePoset {
    std::vector<std::string> labels;
    std::vector<std::vector<char>> rel; // rel[i][j] == 1 iff i <= j

    std::size_t size() const { return labels.size(); }
    bool leq(int i, int j) const { return rel[i][j] != 0; }

    int index_of(const std::string& l) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), l);
        if (it == labels.end() || *it != l) throw PreconditionError("unknown element '" + l + "'");
        return (int)(it - labels.begin());
    }

    friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
        return a.labels == b.labels && a.rel == b.rel;
    }
};

inline FinitePoset make_poset(std::vector<std::string> labels,
                              const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw PreconditionError("duplicate element label");
    FinitePoset p;
    p.labels = std::move(labels);
    const std::size_t n = p.labels.size();
    p.rel.assign(n, std::vector<char>(n, 0));
    auto idx = [&](const std::string& l) { return p.index_of(l); };
    for (auto& [a, b] : leq_pairs) p.rel[idx(a)][idx(b)] = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (!p.rel[i][i]) throw PreconditionError("relation not reflexive at '" + p.labels[i] + "'");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && p.rel[i][j] && p.rel[j][i])
                throw PreconditionError("relation not antisymmetric on '" + p.labels[i] + "','" +
                                        p.labels[j] + "'");
            if (p.rel[i][j])
                for (std::size_t k = 0; k < n; ++k)
                    if (p.rel[j][k] && !p.rel[i][k])
                        throw PreconditionError("relation not transitive via '" + p.labels[j] + "'");
        }
    return p;
}

// Convenience: build from strict covers; reflexive-transitive closure computed.
inline FinitePoset poset_from_covers(std::vector<std::string> labels,
                                     const std::vector<std::pair<std::string, std::string>>& lt) {
    std::sort(labels.begin(), labels.end());
    FinitePoset p;
    p.labels = labels;
    const std::size_t n = labels.size();
    p.rel.assign(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) p.rel[i][i] = 1;
    for (auto& [a, b] : lt) p.rel[p.index_of(a)][p.index_of(b)] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (p.rel[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (p.rel[k][j]) p.rel[i][j] = 1;
    // revalidate antisymmetry
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (p.rel[i][j]) pairs.emplace_back(labels[i], labels[j]);
    return make_poset(labels, pairs);
}

// U_x = { y | y <= x }, the minimal open set containing x.
inline std::vector<int> minimal_open(const FinitePoset& p, int x) {
    if (x < 0 || (std::size_t)x >= p.size()) throw PreconditionError("element out of range");
    std::vector<int> out;
    for (std::size_t y = 0; y < p.size(); ++y)
        if (p.leq((int)y, x)) out.push_back((int)y);
    return out;
}

// F_x = { y | y >= x }, the closure of {x}.
inline std::vector<int> closure_of(const FinitePoset& p, int x) {
    if (x < 0 || (std::size_t)x >= p.size()) throw PreconditionError("element out of range");
    std::vector<int> out;
    for (std::size_t y = 0; y < p.size(); ++y)
        if (p.leq(x, (int)y)) out.push_back((int)y);
    return out;
}

// Continuity = order preservation.
inline bool is_continuous(const FinitePoset& src, const FinitePoset& dst,
                          const std::vector<int>& img) {
    if (img.size() != src.size()) return false;
    for (int v : img)
        if (v < 0 || (std::size_t)v >= dst.size()) return false;
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j)
            if (src.leq((int)i, (int)j) && !dst.leq(img[i], img[j])) return false;
    return true;
}

struct MonotoneMap {
    FinitePoset src, dst;
    std::vector<int> img;
};

inline MonotoneMap make_monotone(const FinitePoset& src, const FinitePoset& dst,
                                 const std::vector<int>& img) {
    if (!is_continuous(src, dst, img)) throw PreconditionError("assignment is not order preserving");
    return {src, dst, img};
}

inline MonotoneMap make_monotone(const FinitePoset& src, const FinitePoset& dst,
                                 const std::map<std::string, std::string>& assign) {
    std::vector<int> img(src.size(), -1);
    for (auto& [a, b] : assign) img[src.index_of(a)] = dst.index_of(b);
    for (int v : img)
        if (v < 0) throw PreconditionError("assignment is not total");
    return make_monotone(src, dst, img);
}

struct PosetAutomorphism {
    FinitePoset poset;
    std::vector<int> img, inv;

    int apply(int x) const { return img[x]; }
    std::vector<int> support() const {
        std::vector<int> s;
        for (std::size_t i = 0; i < img.size(); ++i)
            if (img[i] != (int)i) s.push_back((int)i);
        return s;
    }
    bool is_identity() const { return support().empty(); }
};

inline PosetAutomorphism make_automorphism(const FinitePoset& p, const std::vector<int>& img) {
    if (img.size() != p.size()) throw PreconditionError("automorphism must be total");
    std::vector<int> inv(p.size(), -1);
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (img[i] < 0 || (std::size_t)img[i] >= p.size() || inv[img[i]] != -1)
            throw PreconditionError("assignment is not a bijection");
        inv[img[i]] = (int)i;
    }
    if (!is_continuous(p, p, img)) throw PreconditionError("assignment is not order preserving");
    if (!is_continuous(p, p, inv)) throw PreconditionError("inverse is not order preserving");
    return {p, img, inv};
}

inline PosetAutomorphism identity_automorphism(const FinitePoset& p) {
    std::vector<int> id(p.size());
    std::iota(id.begin(), id.end(), 0);
    return {p, id, id};
}

inline PosetAutomorphism compose(const PosetAutomorphism& g, const PosetAutomorphism& f) {
    if (!(g.poset == f.poset)) throw PreconditionError("composing automorphisms of different posets");
    std::vector<int> img(f.img.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = g.img[f.img[i]];
    return make_automorphism(f.poset, img);
}

inline PosetAutomorphism inverse(const PosetAutomorphism& a) {
    return {a.poset, a.inv, a.img};
}

// Complete list of automorphisms, in lexicographic image order.
inline std::vector<PosetAutomorphism> automorphisms(const FinitePoset& p, std::size_t bound = 10) {
    if (p.size() > bound)
        throw BoundExceeded("automorphism enumeration bounded at " + std::to_string(bound) +
                            " elements (poset has " + std::to_string(p.size()) + ")");
    const int n = (int)p.size();
    std::vector<int> down(n, 0), up(n, 0);
    for (int i = 0; i < n; ++i) {
        down[i] = (int)minimal_open(p, i).size();
        up[i] = (int)closure_of(p, i).size();
    }
    std::vector<PosetAutomorphism> out;
    std::vector<int> img(n, -1);
    std::vector<char> used(n, 0);
    auto consistent = [&](int i, int v) {
        if (down[i] != down[v] || up[i] != up[v]) return false;
        for (int j = 0; j < i; ++j) {
            if (p.leq(j, i) != p.leq(img[j], v)) return false;
            if (p.leq(i, j) != p.leq(v, img[j])) return false;
        }
        return true;
    };
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(make_automorphism(p, img));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || !consistent(i, v)) continue;
            img[i] = v;
            used[v] = 1;
            rec(i + 1);
            used[v] = 0;
            img[i] = -1;
        }
    };
    rec(0);
    return out;
}

// A move is an automorphism fixing the complement of some minimal open set
// U_x.  Returns the least such witness x, or nothing.
inline std::optional<int> is_move(const PosetAutomorphism& aut) {
    auto supp = aut.support();
    if (supp.empty()) return 0; // identity: any witness works, pick the least label
    for (std::size_t x = 0; x < aut.poset.size(); ++x) {
        bool ok = true;
        for (int s : supp)
            if (!aut.poset.leq(s, (int)x)) { ok = false; break; }
        if (ok) return (int)x;
    }
    return std::nullopt;
}

struct Move {
    PosetAutomorphism aut;
    int witness;
};

inline Move make_move(const PosetAutomorphism& aut) {
    auto w = is_move(aut);
    if (!w) throw PreconditionError("automorphism is not supported in any minimal open set");
    return {aut, *w};
}

} // namespace finmap

#endif
