#ifndef FINMAP_QUOTIENT_HPP
#define FINMAP_QUOTIENT_HPP

#include <map>
#include <set>

#include "finmap/cover.hpp"

namespace finmap {

// The quotient X_α of a space by the relation  x ~ y  iff  U_x^α = U_y^α.
// Classes are exact regions, listed in a stable order.
struct QuotientSpace {
    MetricSpaceRepr space;
    int cover_index = 0;
    std::vector<Region> classes;

    int class_of_point(const CPoint& x) const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (space.kind == Carrier::finite) {
                const auto& pts = classes[i].pts;
                if (std::binary_search(pts.begin(), pts.end(), std::get<std::string>(x)))
                    return (int)i;
            } else if (region_contains(classes[i], std::get<Rat>(x))) {
                return (int)i;
            }
        }
        throw PreconditionError("point not covered by any class");
    }

    std::string class_str(int i) const { return region_str(classes.at(i)); }
};

namespace detail {

// Atoms of the endpoint sweep: every ball endpoint is a potential class
// boundary, and open segments between consecutive endpoints have constant
// membership pattern.
struct Atom {
    Region region;
    CPoint rep;
};

inline std::vector<Atom> sweep_atoms(const MetricSpaceRepr& space, const Cover& cover) {
    std::vector<Atom> atoms;
    if (space.kind == Carrier::finite) {
        for (auto& l : space.labels)
            atoms.push_back({make_finite_region({l}), cpoint(l)});
        return atoms;
    }
    std::set<Rat> cuts;
    for (auto& m : cover.members)
        for (auto& c : m.comps) {
            cuts.insert(c.a);
            if (!c.is_point) cuts.insert(c.b == 1 && space.kind == Carrier::circle ? Rat(0) : c.b);
        }
    if (space.kind == Carrier::interval) {
        cuts.insert(Rat(0));
        cuts.insert(Rat(1));
        std::vector<Rat> cs(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i < cs.size(); ++i) {
            atoms.push_back({make_point_region(Carrier::interval, cs[i]), cpoint(cs[i])});
            if (i + 1 < cs.size())
                atoms.push_back({make_open_region(Carrier::interval, cs[i], cs[i + 1]),
                                 cpoint((cs[i] + cs[i + 1]) / 2)});
        }
    } else {
        std::vector<Rat> cs(cuts.begin(), cuts.end()); // all in [0,1)
        for (std::size_t i = 0; i < cs.size(); ++i) {
            atoms.push_back({make_point_region(Carrier::circle, cs[i]), cpoint(cs[i])});
            Rat next = i + 1 < cs.size() ? cs[i + 1] : cs[0] + 1;
            if (cs[i] < next)
                atoms.push_back({make_open_region(Carrier::circle, cs[i], next),
                                 cpoint(mod1((cs[i] + next) / 2))});
        }
    }
    return atoms;
}

} // namespace detail

inline QuotientSpace quotient(const MetricSpaceRepr& space, const Cover& cover) {
    auto atoms = detail::sweep_atoms(space, cover);
    // group atoms by their minimal cover intersection (as exact regions)
    std::vector<std::pair<Region, Region>> groups; // (U value, accumulated class)
    for (auto& atom : atoms) {
        Region u = minimal_cover_intersection(space, cover, atom.rep);
        bool merged = false;
        for (auto& g : groups)
            if (g.first == u) {
                g.second = region_union(g.second, atom.region);
                merged = true;
                break;
            }
        if (!merged) groups.emplace_back(u, atom.region);
    }
    QuotientSpace q;
    q.space = space;
    q.cover_index = cover.n;
    for (auto& g : groups) q.classes.push_back(g.second);
    std::sort(q.classes.begin(), q.classes.end(), region_less);
    return q;
}

inline QuotientSpace quotient(const MetricSpaceRepr& space, int n) {
    return quotient(space, build_cover(space, n));
}

// ---------------------------------------------------------------------------
// bonding maps between quotients

// Total class-to-class map f_α^α': each finer class is contained in a unique
// coarser class when the covers are nested.
struct ClassMap {
    int source_index = 0, target_index = 0;
    std::vector<int> img; // finer class i -> coarser class img[i]
};

inline ClassMap bonding_projection(const QuotientSpace& finer, const QuotientSpace& coarser) {
    if (!(finer.space == coarser.space))
        throw PreconditionError("bonding projection between different spaces");
    if (finer.cover_index < coarser.cover_index)
        throw PreconditionError("bonding projection needs finer index >= coarser index");
    ClassMap m;
    m.source_index = finer.cover_index;
    m.target_index = coarser.cover_index;
    for (std::size_t i = 0; i < finer.classes.size(); ++i) {
        int target = -1;
        for (std::size_t j = 0; j < coarser.classes.size(); ++j)
            if (region_subset(finer.classes[i], coarser.classes[j])) {
                target = (int)j;
                break;
            }
        if (target < 0)
            throw PreconditionError("finer class " + region_str(finer.classes[i]) +
                                    " is not contained in a single coarser class (covers not nested)");
        m.img.push_back(target);
    }
    return m;
}

// ---------------------------------------------------------------------------
// thread intersections along an index chain

struct ThreadIntersection {
    Region region;
    Rat diameter;
};

// Intersection of the closures of a compatible chain of classes.
inline ThreadIntersection thread_intersection(
    const std::vector<std::pair<const QuotientSpace*, int>>& chain) {
    if (chain.empty()) throw PreconditionError("empty chain");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const auto& [qa, ca] = chain[i];
        const auto& [qb, cb] = chain[i + 1];
        if (!(qa->space == qb->space)) throw PreconditionError("chain spans different spaces");
        if (qa->cover_index > qb->cover_index)
            throw PreconditionError("chain indices must be non-decreasing");
        if (!region_subset(qb->classes.at(cb), qa->classes.at(ca)))
            throw PreconditionError("incompatible chain: class " + region_str(qb->classes.at(cb)) +
                                    " does not bond to " + region_str(qa->classes.at(ca)));
    }
    Region r = region_closure(chain[0].first->classes.at(chain[0].second));
    for (std::size_t i = 1; i < chain.size(); ++i)
        r = region_intersect(r, region_closure(chain[i].first->classes.at(chain[i].second)));
    return {r, region_diameter(chain[0].first->space, r)};
}

// ---------------------------------------------------------------------------
// text export / import

// One class per line: "point p/q", "open a b", multi-component classes join
// components with " + ", finite classes are "set l1 l2 ...".
inline std::string export_quotient(const QuotientSpace& q) {
    std::ostringstream os;
    for (auto& c : q.classes) os << region_str(c) << "\n";
    return os.str();
}

inline Region parse_region_line(Carrier kind, const std::string& line) {
    std::istringstream is(line);
    std::string tok;
    if (kind == Carrier::finite) {
        if (!(is >> tok) || tok != "set") throw ParseError("expected 'set ...': " + line);
        std::vector<std::string> pts;
        while (is >> tok) pts.push_back(tok);
        return make_finite_region(pts);
    }
    std::vector<Comp> cs;
    while (is >> tok) {
        if (tok == "+") continue;
        if (tok == "point") {
            std::string v;
            if (!(is >> v)) throw ParseError("point needs a value: " + line);
            Rat p = parse_rat(v);
            cs.push_back({true, p, p});
        } else if (tok == "open") {
            std::string a, b;
            if (!(is >> a >> b)) throw ParseError("open needs two values: " + line);
            cs.push_back({false, parse_rat(a), parse_rat(b)});
        } else {
            throw ParseError("unknown region token '" + tok + "'");
        }
    }
    if (cs.empty()) throw ParseError("empty region line");
    return make_region(kind, cs);
}

inline std::vector<Region> import_quotient_classes(Carrier kind, std::istream& in) {
    std::vector<Region> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_region_line(kind, line));
    }
    return out;
}

} // namespace finmap

#endif
