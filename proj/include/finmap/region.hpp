#ifndef FINMAP_REGION_HPP
#define FINMAP_REGION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "finmap/rational.hpp"
#include "finmap/errors.hpp"

namespace finmap {

enum class Carrier { interval, circle, finite };

// One canonical component of a 1-D region: an isolated rational point or a
// bounded open interval.  Closed and half-open sets are unions of these,
// e.g. [0,1/2) = {0} ∪ (0,1/2).
struct Comp {
    bool is_point;
    Rat a, b; // point: a == b; open interval: (a,b) with a < b

    friend bool operator==(const Comp& x, const Comp& y) {
        return x.is_point == y.is_point && x.a == y.a && x.b == y.b;
    }
};

inline bool comp_less(const Comp& x, const Comp& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.is_point != y.is_point) return x.is_point; // point before interval at same left end
    return x.b < y.b;
}

// A finite union of points and open intervals (interval/circle carriers) or a
// finite set of labelled points (finite carrier), kept in canonical form:
// components sorted, pairwise disjoint, maximally merged.
// Circle regions are stored cut at 0: all coordinates lie in [0,1] and a point
// at 1 is normalised to 0, so equality is plain component equality.
struct Region {
    Carrier carrier = Carrier::interval;
    std::vector<Comp> comps;             // 1-D carriers
    std::vector<std::string> pts;        // finite carrier, sorted labels

    bool empty() const { return comps.empty() && pts.empty(); }

    friend bool operator==(const Region& x, const Region& y) {
        return x.carrier == y.carrier && x.comps == y.comps && x.pts == y.pts;
    }
};

inline bool region_less(const Region& x, const Region& y) {
    if (x.pts != y.pts) return x.pts < y.pts;
    return std::lexicographical_compare(
        x.comps.begin(), x.comps.end(), y.comps.begin(), y.comps.end(),
        [](const Comp& a, const Comp& b) {
            if (!(a == b)) return comp_less(a, b);
            return false;
        });
}

// ---------------------------------------------------------------------------
// canonicalization

namespace detail {

inline void canonicalize_comps(std::vector<Comp>& cs) {
    std::vector<Comp> opens, points;
    for (auto& c : cs) {
        if (c.is_point) points.push_back(c);
        else if (c.a < c.b) opens.push_back(c);
    }
    std::sort(opens.begin(), opens.end(), comp_less);
    // merge overlapping open intervals; touching ones stay apart unless a
    // point bridges them below
    std::vector<Comp> merged;
    for (auto& o : opens) {
        if (!merged.empty() && o.a < merged.back().b) {
            merged.back().b = rat_max(merged.back().b, o.b);
        } else if (!merged.empty() && o.a == merged.back().a) {
            merged.back().b = rat_max(merged.back().b, o.b);
        } else {
            merged.push_back(o);
        }
    }
    std::sort(points.begin(), points.end(), comp_less);
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Comp& x, const Comp& y) { return x == y; }),
                 points.end());
    // drop points lying inside an open interval
    std::vector<Comp> keep;
    for (auto& p : points) {
        bool inside = false;
        for (auto& o : merged)
            if (o.a < p.a && p.a < o.b) { inside = true; break; }
        if (!inside) keep.push_back(p);
    }
    // bridge: {b} with (a,b) and (b,c) present merges all three into (a,c)
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            const Rat p = keep[i].a;
            int left = -1, right = -1;
            for (std::size_t j = 0; j < merged.size(); ++j) {
                if (merged[j].b == p) left = (int)j;
                if (merged[j].a == p) right = (int)j;
            }
            if (left >= 0 && right >= 0) {
                merged[left].b = merged[right].b;
                merged.erase(merged.begin() + right);
                keep.erase(keep.begin() + i);
                changed = true;
                break;
            }
        }
    }
    cs.clear();
    for (auto& o : merged) cs.push_back(o);
    for (auto& p : keep) cs.push_back(p);
    std::sort(cs.begin(), cs.end(), comp_less);
}

// Normalise raw circle components into cut coordinates in [0,1].
inline void normalize_circle_comps(std::vector<Comp>& cs) {
    std::vector<Comp> out;
    for (auto& c : cs) {
        if (c.is_point) {
            Rat p = mod1(c.a);
            out.push_back({true, p, p});
        } else {
            if (c.b - c.a > 1) { // covers the whole circle
                out.push_back({true, Rat(0), Rat(0)});
                out.push_back({false, Rat(0), Rat(1)});
                continue;
            }
            if (c.b - c.a == 1) { // everything except the single point a
                Rat a = mod1(c.a);
                if (a == 0) {
                    out.push_back({false, Rat(0), Rat(1)});
                } else {
                    out.push_back({true, Rat(0), Rat(0)});
                    out.push_back({false, Rat(0), a});
                    out.push_back({false, a, Rat(1)});
                }
                continue;
            }
            Rat a = mod1(c.a);
            Rat b = a + (c.b - c.a);
            if (b <= 1) {
                out.push_back({false, a, b});
            } else { // wraps through 0
                out.push_back({false, a, Rat(1)});
                out.push_back({true, Rat(0), Rat(0)});
                if (b - 1 > 0) out.push_back({false, Rat(0), b - 1});
            }
        }
    }
    cs = std::move(out);
}

} // namespace detail

inline Region make_region(Carrier k, std::vector<Comp> cs) {
    Region r;
    r.carrier = k;
    if (k == Carrier::finite)
        throw PreconditionError("finite regions are built from point labels");
    if (k == Carrier::circle) detail::normalize_circle_comps(cs);
    detail::canonicalize_comps(cs);
    r.comps = std::move(cs);
    return r;
}

inline Region make_point_region(Carrier k, const Rat& p) {
    return make_region(k, {{true, p, p}});
}

inline Region make_open_region(Carrier k, const Rat& a, const Rat& b) {
    return make_region(k, {{false, a, b}});
}

inline Region make_finite_region(std::vector<std::string> labels) {
    Region r;
    r.carrier = Carrier::finite;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    r.pts = std::move(labels);
    return r;
}

inline Region empty_region(Carrier k) {
    Region r;
    r.carrier = k;
    return r;
}

// ---------------------------------------------------------------------------
// set algebra

inline Region region_union(const Region& x, const Region& y) {
    if (x.carrier != y.carrier) throw PreconditionError("region carrier mismatch");
    if (x.carrier == Carrier::finite) {
        std::vector<std::string> all = x.pts;
        all.insert(all.end(), y.pts.begin(), y.pts.end());
        return make_finite_region(std::move(all));
    }
    std::vector<Comp> cs = x.comps;
    cs.insert(cs.end(), y.comps.begin(), y.comps.end());
    Region r;
    r.carrier = x.carrier;
    detail::canonicalize_comps(cs); // inputs already in cut coordinates
    r.comps = std::move(cs);
    return r;
}

inline Region region_intersect(const Region& x, const Region& y) {
    if (x.carrier != y.carrier) throw PreconditionError("region carrier mismatch");
    Region r;
    r.carrier = x.carrier;
    if (x.carrier == Carrier::finite) {
        std::set_intersection(x.pts.begin(), x.pts.end(), y.pts.begin(), y.pts.end(),
                              std::back_inserter(r.pts));
        return r;
    }
    std::vector<Comp> cs;
    for (auto& c : x.comps)
        for (auto& d : y.comps) {
            if (c.is_point && d.is_point) {
                if (c.a == d.a) cs.push_back(c);
            } else if (c.is_point) {
                if (d.a < c.a && c.a < d.b) cs.push_back(c);
            } else if (d.is_point) {
                if (c.a < d.a && d.a < c.b) cs.push_back(d);
            } else {
                Rat lo = rat_max(c.a, d.a), hi = rat_min(c.b, d.b);
                if (lo < hi) cs.push_back({false, lo, hi});
            }
        }
    detail::canonicalize_comps(cs);
    r.comps = std::move(cs);
    return r;
}

inline bool region_subset(const Region& x, const Region& y) {
    return region_intersect(x, y) == x;
}

inline bool region_contains(const Region& r, const Rat& x0) {
    Rat x = r.carrier == Carrier::circle ? mod1(x0) : x0;
    for (auto& c : r.comps) {
        if (c.is_point) { if (c.a == x) return true; }
        else if (c.a < x && x < c.b) return true;
    }
    return false;
}

inline Region region_closure(const Region& r) {
    if (r.carrier == Carrier::finite) return r; // finite metric spaces are discrete
    std::vector<Comp> cs = r.comps;
    for (auto& c : r.comps) {
        if (c.is_point) continue;
        cs.push_back({true, c.a, c.a});
        if (r.carrier == Carrier::circle) {
            Rat e = c.b == 1 ? Rat(0) : c.b;
            cs.push_back({true, e, e});
        } else {
            cs.push_back({true, c.b, c.b});
        }
    }
    Region out;
    out.carrier = r.carrier;
    detail::canonicalize_comps(cs);
    out.comps = std::move(cs);
    return out;
}

// ---------------------------------------------------------------------------
// closed segments (used by the exact metric computations)

struct Seg { Rat lo, hi; }; // closed [lo,hi] in cut coordinates

// Closed segments of the closure of a 1-D region, sorted, disjoint.
inline std::vector<Seg> closed_segments(const Region& r) {
    Region cl = region_closure(r);
    std::vector<Seg> segs;
    for (auto& c : cl.comps) {
        Rat lo = c.a, hi = c.is_point ? c.a : c.b;
        if (!segs.empty() && lo <= segs.back().hi) {
            segs.back().hi = rat_max(segs.back().hi, hi);
        } else {
            segs.push_back({lo, hi});
        }
    }
    return segs;
}

inline bool is_full_circle(const Region& r) {
    if (r.carrier != Carrier::circle) return false;
    auto segs = closed_segments(r);
    return segs.size() == 1 && segs[0].lo == 0 && segs[0].hi == 1;
}

namespace detail {

inline Rat point_seg_dist(Carrier k, const Rat& x, const Seg& s) {
    if (s.lo <= x && x <= s.hi) return Rat(0);
    if (k == Carrier::interval) return x < s.lo ? s.lo - x : x - s.hi;
    return rat_min(circle_dist(x, s.lo), circle_dist(x, s.hi));
}

inline Rat point_region_dist(Carrier k, const Rat& x, const std::vector<Seg>& segs) {
    Rat best(2);
    for (auto& s : segs) best = rat_min(best, point_seg_dist(k, x, s));
    return best;
}

} // namespace detail

// Infimum of pairwise distances between the closures of two 1-D regions.
inline Rat region_inf_dist(const Region& A, const Region& B) {
    if (A.empty() || B.empty()) throw PreconditionError("set distance of empty region");
    if (!region_intersect(region_closure(A), region_closure(B)).empty()) return Rat(0);
    auto sa = closed_segments(A), sb = closed_segments(B);
    Rat best(2);
    for (auto& x : sa)
        for (auto& y : sb) {
            if (A.carrier == Carrier::interval) {
                Rat g = y.lo > x.hi ? y.lo - x.hi : (x.lo > y.hi ? x.lo - y.hi : Rat(0));
                best = rat_min(best, g);
            } else {
                best = rat_min(best, detail::point_seg_dist(A.carrier, x.lo, y));
                best = rat_min(best, detail::point_seg_dist(A.carrier, x.hi, y));
                best = rat_min(best, detail::point_seg_dist(A.carrier, y.lo, x));
                best = rat_min(best, detail::point_seg_dist(A.carrier, y.hi, x));
            }
        }
    return best;
}

namespace detail {

// sup_{x in A} d(x, B), exact.  Candidates: endpoints of A's segments plus
// the local maxima of d(.,B), which sit at midpoints of B's complementary gaps.
inline Rat directed_hausdorff(Carrier k, const std::vector<Seg>& A, const std::vector<Seg>& B,
                              const Region& Acl) {
    std::vector<Rat> cand;
    for (auto& s : A) { cand.push_back(s.lo); cand.push_back(s.hi); }
    if (k == Carrier::interval) {
        for (std::size_t i = 0; i + 1 < B.size(); ++i)
            cand.push_back((B[i].hi + B[i + 1].lo) / 2);
    } else {
        for (std::size_t i = 0; i < B.size(); ++i) {
            const Seg& cur = B[i];
            const Seg& nxt = B[(i + 1) % B.size()];
            Rat gap = mod1(nxt.lo - cur.hi);
            if (B.size() == 1) gap = 1 - (cur.hi - cur.lo);
            if (gap > 0) cand.push_back(mod1(cur.hi + gap / 2));
        }
    }
    Rat best(0);
    for (auto& x : cand) {
        if (!region_contains(Acl, x)) continue;
        best = rat_max(best, point_region_dist(k, x, B));
    }
    return best;
}

} // namespace detail

// Hausdorff distance of the closures of two 1-D regions, exact.
inline Rat region_hausdorff_dist(const Region& A, const Region& B) {
    if (A.empty() || B.empty()) throw PreconditionError("set distance of empty region");
    if (A.carrier == Carrier::circle && (is_full_circle(A) || is_full_circle(B))) {
        if (is_full_circle(A) && is_full_circle(B)) return Rat(0);
        const Region& full = is_full_circle(A) ? A : B;
        const Region& other = is_full_circle(A) ? B : A;
        auto so = closed_segments(other);
        auto sf = closed_segments(full);
        return detail::directed_hausdorff(Carrier::circle, sf, so, region_closure(full));
    }
    auto sa = closed_segments(A), sb = closed_segments(B);
    Region acl = region_closure(A), bcl = region_closure(B);
    Rat d1 = detail::directed_hausdorff(A.carrier, sa, sb, acl);
    Rat d2 = detail::directed_hausdorff(A.carrier, sb, sa, bcl);
    return rat_max(d1, d2);
}

// Diameter of the closure of a 1-D region.
inline Rat region_diameter(const Region& r) {
    if (r.empty()) return Rat(0);
    auto segs = closed_segments(r);
    if (r.carrier == Carrier::interval) return segs.back().hi - segs.front().lo;
    if (is_full_circle(r)) return Rat(1, 2);
    // circle: check endpoint pairs and the antipodal case
    Rat best(0);
    std::vector<Rat> ends;
    for (auto& s : segs) { ends.push_back(s.lo); ends.push_back(s.hi); }
    for (auto& x : ends)
        for (auto& y : ends) best = rat_max(best, circle_dist(x, y));
    for (auto& s : segs) {
        // antipodal image of s, as cut segments
        std::vector<Seg> shifted;
        Rat lo = mod1(s.lo + Rat(1, 2));
        Rat len = s.hi - s.lo;
        if (lo + len <= 1) shifted.push_back({lo, lo + len});
        else { shifted.push_back({lo, Rat(1)}); shifted.push_back({Rat(0), lo + len - 1}); }
        for (auto& t : segs)
            for (auto& sh : shifted)
                if (rat_max(t.lo, sh.lo) <= rat_min(t.hi, sh.hi)) return Rat(1, 2);
    }
    return best;
}

// ---------------------------------------------------------------------------
// text form

inline std::string region_str(const Region& r) {
    if (r.carrier == Carrier::finite) {
        std::string s = "set";
        for (auto& p : r.pts) s += " " + p;
        return s;
    }
    if (r.comps.empty()) return "empty";
    std::string s;
    for (std::size_t i = 0; i < r.comps.size(); ++i) {
        if (i) s += " + ";
        const Comp& c = r.comps[i];
        if (c.is_point) s += "point " + rat_str(c.a);
        else s += "open " + rat_str(c.a) + " " + rat_str(c.b);
    }
    return s;
}

} // namespace finmap

#endif
