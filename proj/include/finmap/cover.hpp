#ifndef FINMAP_COVER_HPP
#define FINMAP_COVER_HPP

#include "finmap/space.hpp"

namespace finmap {

// Open metric ball B(c, r) = { y : d(c,y) < r } as a region of the carrier.
inline Region ball(const MetricSpaceRepr& space, const CPoint& center, const Rat& radius) {
    if (!space.in_carrier(center)) throw PreconditionError("ball center outside carrier");
    if (radius <= 0) throw PreconditionError("ball radius must be positive");
    switch (space.kind) {
    case Carrier::interval: {
        const Rat c = std::get<Rat>(center);
        std::vector<Comp> cs;
        Rat lo = rat_max(Rat(0), c - radius), hi = rat_min(Rat(1), c + radius);
        if (c - radius < 0) cs.push_back({true, Rat(0), Rat(0)});
        if (c + radius > 1) cs.push_back({true, Rat(1), Rat(1)});
        if (lo < hi) cs.push_back({false, lo, hi});
        else cs.push_back({true, c, c});
        return make_region(Carrier::interval, cs);
    }
    case Carrier::circle: {
        // arc metric diameter is 1/2, so radius > 1/2 covers everything and
        // radius exactly 1/2 misses only the antipode
        const Rat c = std::get<Rat>(center);
        if (2 * radius > 1)
            return make_region(Carrier::circle, {{false, Rat(0), Rat(1)}, {true, Rat(0), Rat(0)}});
        return make_open_region(Carrier::circle, c - radius, c + radius);
    }
    case Carrier::finite: {
        std::vector<std::string> pts;
        const std::string& c = std::get<std::string>(center);
        for (auto& l : space.labels)
            if (space.point_dist(cpoint(c), cpoint(l)) < radius) pts.push_back(l);
        return make_finite_region(pts);
    }
    }
    return {};
}

// The cover W_n = U_1 ∪ ... ∪ U_n, where U_i consists of open balls of
// radius 1/i.  Ball centers: k/i on [0,1] (0 <= k <= i); k/(2i) on the circle
// (0 <= k < 2i); every point of a finite metric space.
struct Cover {
    int n = 0;
    std::vector<Region> members;
};

inline Cover build_cover(const MetricSpaceRepr& space, int n) {
    if (n < 1) throw PreconditionError("cover index must be >= 1");
    Cover w;
    w.n = n;
    auto add = [&](const Region& r) {
        for (auto& m : w.members)
            if (m == r) return;
        w.members.push_back(r);
    };
    for (int i = 1; i <= n; ++i) {
        const Rat radius(1, i);
        switch (space.kind) {
        case Carrier::interval:
            for (int k = 0; k <= i; ++k) add(ball(space, cpoint(Rat(k, i)), radius));
            break;
        case Carrier::circle:
            for (int k = 0; k < 2 * i; ++k) add(ball(space, cpoint(Rat(k, 2 * i)), radius));
            break;
        case Carrier::finite:
            for (auto& l : space.labels) add(ball(space, cpoint(l), radius));
            break;
        }
    }
    // exact covering check
    Region u = empty_region(space.kind == Carrier::finite ? Carrier::finite : space.kind);
    u = w.members.front();
    for (std::size_t i = 1; i < w.members.size(); ++i) u = region_union(u, w.members[i]);
    if (!(u == space.carrier_region()))
        throw PreconditionError("cover members do not cover the carrier");
    return w;
}

// U_x^α: intersection of the cover members containing x.
inline Region minimal_cover_intersection(const MetricSpaceRepr& space, const Cover& cover,
                                         const CPoint& x) {
    if (!space.in_carrier(x)) throw PreconditionError("point outside carrier");
    bool found = false;
    Region u;
    for (auto& m : cover.members) {
        bool in = space.kind == Carrier::finite
                      ? std::binary_search(m.pts.begin(), m.pts.end(), std::get<std::string>(x))
                      : region_contains(m, std::get<Rat>(x));
        if (!in) continue;
        u = found ? region_intersect(u, m) : m;
        found = true;
    }
    if (!found) throw PreconditionError("no cover member contains the point");
    return u;
}

} // namespace finmap

#endif
