#ifndef FINMAP_MODEL_HPP
#define FINMAP_MODEL_HPP

#include <variant>

#include "finmap/plmap.hpp"
#include "finmap/quotient.hpp"

namespace finmap {

// Index β^α of a model stage: n is the cover index on X, m on Y.
// Ordered componentwise.
struct ModelIndex {
    int n = 1, m = 1;
    friend bool operator==(const ModelIndex& a, const ModelIndex& b) {
        return a.n == b.n && a.m == b.m;
    }
};

inline bool index_leq(const ModelIndex& a, const ModelIndex& b) {
    return a.n <= b.n && a.m <= b.m;
}

inline std::string index_str(const ModelIndex& i) {
    return "(" + std::to_string(i.n) + "," + std::to_string(i.m) + ")";
}

// An element of 2^{Y_β^{X_α}} in rectangular form: either ∅ or, per X-class,
// a nonempty set of allowed Y-classes.  The element is the set of all class
// assignments g with g(E) ∈ allowed(E); its cardinality is the product of the
// allowed-set sizes.
struct RectangularMapSet {
    bool empty_set = false;
    std::vector<std::vector<int>> allowed; // sorted Y-class indices per X-class

    friend bool operator==(const RectangularMapSet& a, const RectangularMapSet& b) {
        if (a.empty_set != b.empty_set) return false;
        return a.empty_set || a.allowed == b.allowed;
    }
};

inline RectangularMapSet empty_map_set() {
    RectangularMapSet s;
    s.empty_set = true;
    return s;
}

inline BigInt cardinality(const RectangularMapSet& s) {
    if (s.empty_set) return 0;
    BigInt c = 1;
    for (auto& a : s.allowed) c *= (BigInt)a.size();
    return c;
}

inline bool rect_contains(const RectangularMapSet& s, const std::vector<int>& assignment) {
    if (s.empty_set || assignment.size() != s.allowed.size()) return false;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (!std::binary_search(s.allowed[i].begin(), s.allowed[i].end(), assignment[i]))
            return false;
    return true;
}

// A general element as an explicit set of class assignments, used on small
// stages where expansion is feasible.
struct MapSetElement {
    std::size_t x_classes = 0, y_classes = 0;
    std::vector<std::vector<int>> maps; // sorted lexicographically

    friend bool operator==(const MapSetElement& a, const MapSetElement& b) {
        return a.x_classes == b.x_classes && a.maps == b.maps;
    }
};

inline MapSetElement expand(const RectangularMapSet& s, std::size_t x_classes,
                            std::size_t y_classes, BigInt bound = BigInt(1000000)) {
    MapSetElement e;
    e.x_classes = x_classes;
    e.y_classes = y_classes;
    if (s.empty_set) return e;
    if (cardinality(s) > bound)
        throw BoundExceeded("expansion of " + cardinality(s).str() + " selections exceeds bound");
    std::vector<std::size_t> pos(s.allowed.size(), 0);
    while (true) {
        std::vector<int> g;
        for (std::size_t i = 0; i < s.allowed.size(); ++i) g.push_back(s.allowed[i][pos[i]]);
        e.maps.push_back(std::move(g));
        int k = (int)s.allowed.size() - 1;
        while (k >= 0 && pos[k] + 1 == s.allowed[k].size()) pos[k--] = 0;
        if (k < 0) break;
        ++pos[k];
    }
    return e;
}

using ModelElement = std::variant<RectangularMapSet, MapSetElement>;

inline BigInt cardinality(const ModelElement& e) {
    if (std::holds_alternative<RectangularMapSet>(e))
        return cardinality(std::get<RectangularMapSet>(e));
    return BigInt(std::get<MapSetElement>(e).maps.size());
}

inline bool element_contains(const ModelElement& e, const std::vector<int>& g) {
    if (std::holds_alternative<RectangularMapSet>(e))
        return rect_contains(std::get<RectangularMapSet>(e), g);
    const auto& m = std::get<MapSetElement>(e).maps;
    return std::binary_search(m.begin(), m.end(), g);
}

// T ⊆ S as map sets.
inline bool element_subset(const ModelElement& T, const ModelElement& S) {
    if (cardinality(T) == 0) return true;
    if (std::holds_alternative<RectangularMapSet>(T)) {
        const auto& t = std::get<RectangularMapSet>(T);
        if (std::holds_alternative<RectangularMapSet>(S)) {
            const auto& s = std::get<RectangularMapSet>(S);
            if (s.empty_set) return false;
            if (t.allowed.size() != s.allowed.size()) throw PreconditionError("stage mismatch");
            for (std::size_t i = 0; i < t.allowed.size(); ++i)
                if (!std::includes(s.allowed[i].begin(), s.allowed[i].end(),
                                   t.allowed[i].begin(), t.allowed[i].end()))
                    return false;
            return true;
        }
        // rectangular vs explicit: walk the product
        std::vector<std::size_t> pos(t.allowed.size(), 0);
        while (true) {
            std::vector<int> g;
            for (std::size_t i = 0; i < t.allowed.size(); ++i) g.push_back(t.allowed[i][pos[i]]);
            if (!element_contains(S, g)) return false;
            int k = (int)t.allowed.size() - 1;
            while (k >= 0 && pos[k] + 1 == t.allowed[k].size()) pos[k--] = 0;
            if (k < 0) break;
            ++pos[k];
        }
        return true;
    }
    for (auto& g : std::get<MapSetElement>(T).maps)
        if (!element_contains(S, g)) return false;
    return true;
}

inline bool element_equal(const ModelElement& a, const ModelElement& b) {
    return cardinality(a) == cardinality(b) && element_subset(a, b);
}

// The specialization order of 2^{Y_β^{X_α}}: T ≤ S iff S ⊆ T.
// ∅ is the unique maximum.
inline bool model_leq(const ModelElement& T, const ModelElement& S) {
    return element_subset(S, T);
}

// ---------------------------------------------------------------------------
// stages

enum class WProvenance { none, exhaustive, sampled };

struct ModelStage {
    ModelIndex index;
    QuotientSpace qx, qy;
    CPoint y0;
    WProvenance provenance = WProvenance::none;
    std::vector<RectangularMapSet> W;

    std::size_t x_classes() const { return qx.classes.size(); }
    std::size_t y_classes() const { return qy.classes.size(); }
};

// Builds stages over a fixed pair of spaces, caching covers and quotients.
struct ModelSystem {
    MetricSpaceRepr X, Y;
    CPoint y0;
    std::map<int, QuotientSpace> qx_cache, qy_cache;

    ModelSystem(MetricSpaceRepr x, MetricSpaceRepr y, CPoint basepoint)
        : X(std::move(x)), Y(std::move(y)), y0(std::move(basepoint)) {
        if (!Y.in_carrier(y0)) throw PreconditionError("basepoint outside Y");
    }

    static CPoint default_basepoint(const MetricSpaceRepr& y) {
        if (y.kind == Carrier::finite) return cpoint(y.labels.front());
        return cpoint(Rat(0));
    }

    ModelSystem(MetricSpaceRepr x, MetricSpaceRepr y)
        : ModelSystem(std::move(x), std::move(y), default_basepoint(y)) {}

    const QuotientSpace& XQ(int n) {
        auto it = qx_cache.find(n);
        if (it == qx_cache.end()) it = qx_cache.emplace(n, quotient(X, n)).first;
        return it->second;
    }
    const QuotientSpace& YQ(int m) {
        auto it = qy_cache.find(m);
        if (it == qy_cache.end()) it = qy_cache.emplace(m, quotient(Y, m)).first;
        return it->second;
    }

    ModelStage stage(int n, int m) {
        ModelStage s;
        s.index = {n, m};
        s.qx = XQ(n);
        s.qy = YQ(m);
        s.y0 = y0;
        return s;
    }
    ModelStage stage(const ModelIndex& i) { return stage(i.n, i.m); }
};

// ---------------------------------------------------------------------------
// the projection p_β^α

// p_β^α(f): ∅ for the flagged basepoint constant C_{y0}; otherwise the
// rectangular set with allowed(E) = { F : closure(f(E)) ∩ closure(F) ≠ ∅ }.
inline RectangularMapSet project(const PLMap& f, const ModelStage& stage) {
    if (f.domain != stage.qx.space.kind || f.codomain != stage.qy.space.kind)
        throw PreconditionError("map domain/codomain does not match the stage");
    if (f.basepoint) {
        if (f.basepoint_value_set) { // explicit value must match the stage
            if (f.codomain == Carrier::finite) {
                if (!(cpoint(f.clabel) == stage.y0))
                    throw PreconditionError("basepoint map value differs from the stage basepoint");
            } else {
                Rat v = f.codomain == Carrier::circle ? mod1(f.cval) : f.cval;
                if (!(cpoint(v) == stage.y0))
                    throw PreconditionError("basepoint map value differs from the stage basepoint");
            }
        }
        return empty_map_set();
    }
    RectangularMapSet s;
    std::vector<Region> y_closures;
    for (auto& F : stage.qy.classes) y_closures.push_back(region_closure(F));
    for (auto& E : stage.qx.classes) {
        Region img = region_closure(map_image(f, E));
        std::vector<int> a;
        for (std::size_t j = 0; j < y_closures.size(); ++j)
            if (!region_intersect(img, y_closures[j]).empty()) a.push_back((int)j);
        if (a.empty()) throw PreconditionError("empty allowed set (image outside the carrier?)");
        s.allowed.push_back(std::move(a));
    }
    return s;
}

// ---------------------------------------------------------------------------
// the bonding maps f_{αβ}^{α̃β̃}

// Coarsen an element from a finer stage: ∅ ↦ ∅; otherwise F is allowed at E
// iff some finer class over E admits a value inside the fiber of F.
inline RectangularMapSet bond(const ModelElement& S, ModelSystem& sys, const ModelIndex& from,
                              const ModelIndex& to) {
    if (!index_leq(to, from))
        throw PreconditionError("bond needs comparable indices " + index_str(to) +
                                " <= " + index_str(from));
    if (cardinality(S) == 0) return empty_map_set();
    const QuotientSpace &fx = sys.XQ(from.n), &cx = sys.XQ(to.n);
    const QuotientSpace &fy = sys.YQ(from.m), &cy = sys.YQ(to.m);
    ClassMap mx = bonding_projection(fx, cx);
    ClassMap my = bonding_projection(fy, cy);

    // per finer-class value sets
    std::vector<std::vector<int>> values(fx.classes.size());
    if (std::holds_alternative<RectangularMapSet>(S)) {
        values = std::get<RectangularMapSet>(S).allowed;
        if (values.size() != fx.classes.size()) throw PreconditionError("stage mismatch in bond");
    } else {
        const auto& e = std::get<MapSetElement>(S);
        if (e.x_classes != fx.classes.size()) throw PreconditionError("stage mismatch in bond");
        for (auto& g : e.maps)
            for (std::size_t i = 0; i < g.size(); ++i) values[i].push_back(g[i]);
        for (auto& v : values) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    RectangularMapSet out;
    out.allowed.assign(cx.classes.size(), {});
    for (std::size_t i = 0; i < fx.classes.size(); ++i)
        for (int v : values[i]) out.allowed[mx.img[i]].push_back(my.img[v]);
    for (auto& a : out.allowed) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        if (a.empty()) throw PreconditionError("bond produced an empty allowed set");
    }
    return out;
}

// ---------------------------------------------------------------------------
// W_β^α and the retraction

inline void sort_and_dedupe_W(std::vector<RectangularMapSet>& w) {
    auto key = [](const RectangularMapSet& s) {
        std::string k = s.empty_set ? "e" : "r";
        if (!s.empty_set)
            for (auto& a : s.allowed) {
                for (int v : a) k += std::to_string(v) + ",";
                k += ";";
            }
        return k;
    };
    std::sort(w.begin(), w.end(), [&](const RectangularMapSet& a, const RectangularMapSet& b) {
        if (a.empty_set != b.empty_set) return a.empty_set;
        return key(a) < key(b);
    });
    w.erase(std::unique(w.begin(), w.end()), w.end());
}

// W over a family of maps: the projections plus ∅ (the basepoint image).
inline ModelStage enumerate_W(ModelStage stage, const std::vector<PLMap>& family) {
    stage.W.clear();
    stage.W.push_back(empty_map_set());
    for (auto& f : family) stage.W.push_back(project(f, stage));
    sort_and_dedupe_W(stage.W);
    stage.provenance = WProvenance::sampled;
    return stage;
}

// Exhaustive W: every set map between finite discrete spaces is continuous,
// so Y^X can be enumerated outright.  Requires singleton-ball covers (every
// class a single point) and a tame function count.
inline ModelStage enumerate_W_exhaustive(ModelStage stage, std::size_t bound = 4096) {
    if (stage.qx.space.kind != Carrier::finite || stage.qy.space.kind != Carrier::finite)
        throw PreconditionError("exhaustive W needs finite metric spaces");
    for (auto& c : stage.qx.classes)
        if (c.pts.size() != 1) throw PreconditionError("exhaustive W needs singleton classes on X");
    for (auto& c : stage.qy.classes)
        if (c.pts.size() != 1) throw PreconditionError("exhaustive W needs singleton classes on Y");
    const auto& xl = stage.qx.space.labels;
    const auto& yl = stage.qy.space.labels;
    BigInt count = 1;
    for (std::size_t i = 0; i < xl.size(); ++i) {
        count *= (BigInt)yl.size();
        if (count > (BigInt)bound) throw BoundExceeded("too many set maps for exhaustive W");
    }
    stage.W.clear();
    stage.W.push_back(empty_map_set());
    std::vector<std::size_t> pick(xl.size(), 0);
    const std::string base = std::get<std::string>(stage.y0);
    while (true) {
        std::map<std::string, std::string> t;
        bool is_base = true;
        for (std::size_t i = 0; i < xl.size(); ++i) {
            t[xl[i]] = yl[pick[i]];
            if (yl[pick[i]] != base) is_base = false;
        }
        // the constant function at y0 is C_{y0} and projects to ∅
        PLMap f = is_base ? make_constant(Carrier::finite, Carrier::finite, cpoint(base), true)
                          : make_table(stage.qx.space, stage.qy.space, t);
        stage.W.push_back(project(f, stage));
        int k = (int)xl.size() - 1;
        while (k >= 0 && pick[k] + 1 == yl.size()) pick[k--] = 0;
        if (k < 0) break;
        ++pick[k];
    }
    sort_and_dedupe_W(stage.W);
    stage.provenance = WProvenance::exhaustive;
    return stage;
}

// r_β^α(S): the identity on W; otherwise the maximum-cardinality member of
// 2^S ∩ W.  The candidate set is asserted to be totally ordered by inclusion;
// an incomparable pair raises TotalOrderViolation instead of tie-breaking.
inline RectangularMapSet retract(const ModelStage& stage, const ModelElement& S);

inline std::string export_map_set(const ModelStage& stage, const RectangularMapSet& s) {
    if (s.empty_set) return "∅\n";
    std::ostringstream os;
    for (std::size_t i = 0; i < s.allowed.size(); ++i) {
        os << stage.qx.class_str((int)i) << " : ";
        for (std::size_t k = 0; k < s.allowed[i].size(); ++k) {
            if (k) os << " | ";
            os << stage.qy.class_str(s.allowed[i][k]);
        }
        os << "\n";
    }
    return os.str();
}

inline RectangularMapSet import_map_set(const ModelStage& stage, std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(line);
    }
    if (lines.size() == 1 && (lines[0] == "∅" || lines[0] == "empty")) return empty_map_set();
    auto class_index = [&](const QuotientSpace& q, const std::string& text) {
        Region r = parse_region_line(q.space.kind, text);
        for (std::size_t i = 0; i < q.classes.size(); ++i)
            if (q.classes[i] == r) return (int)i;
        throw ParseError("'" + text + "' is not a class of the stage");
    };
    RectangularMapSet s;
    s.allowed.assign(stage.x_classes(), {});
    std::vector<char> seen(stage.x_classes(), 0);
    for (auto& l : lines) {
        auto colon = l.find(" : ");
        if (colon == std::string::npos) throw ParseError("map-set line needs ' : ': " + l);
        int xi = class_index(stage.qx, l.substr(0, colon));
        if (seen[xi]) throw ParseError("duplicate class line: " + l);
        seen[xi] = 1;
        std::string rest = l.substr(colon + 3);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto bar = rest.find(" | ", pos);
            std::string tok = bar == std::string::npos ? rest.substr(pos) : rest.substr(pos, bar - pos);
            s.allowed[xi].push_back(class_index(stage.qy, tok));
            if (bar == std::string::npos) break;
            pos = bar + 3;
        }
        std::sort(s.allowed[xi].begin(), s.allowed[xi].end());
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw ParseError("missing class line for " + stage.qx.class_str((int)i));
    return s;
}

inline RectangularMapSet retract(const ModelStage& stage, const ModelElement& S) {
    if (stage.provenance == WProvenance::none)
        throw PreconditionError("retract needs a stage with an enumerated W");
    for (auto& T : stage.W)
        if (element_equal(ModelElement(T), S)) return T;
    std::vector<const RectangularMapSet*> candidates;
    for (auto& T : stage.W)
        if (element_subset(ModelElement(T), S)) candidates.push_back(&T);
    // ∅ ∈ 2^S ∩ W always, so the candidate set is never empty
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            bool ij = element_subset(ModelElement(*candidates[i]), ModelElement(*candidates[j]));
            bool ji = element_subset(ModelElement(*candidates[j]), ModelElement(*candidates[i]));
            if (!ij && !ji)
                throw TotalOrderViolation(export_map_set(stage, *candidates[i]),
                                          export_map_set(stage, *candidates[j]));
        }
    const RectangularMapSet* best = candidates.front();
    for (auto* c : candidates)
        if (cardinality(*c) > cardinality(*best)) best = c;
    return *best;
}

// ---------------------------------------------------------------------------
// truncated threads

struct TruncatedThread {
    std::vector<std::pair<ModelIndex, RectangularMapSet>> stages; // increasing indices
};

inline bool check_thread(ModelSystem& sys, const TruncatedThread& t, std::string* why = nullptr) {
    for (std::size_t i = 0; i + 1 < t.stages.size(); ++i) {
        const auto& [ia, ea] = t.stages[i];
        const auto& [ib, eb] = t.stages[i + 1];
        if (!index_leq(ia, ib) || ia == ib) {
            if (why) *why = "indices not strictly increasing at position " + std::to_string(i);
            return false;
        }
        RectangularMapSet bonded = bond(ModelElement(eb), sys, ib, ia);
        if (!(bonded == ea)) {
            if (why) *why = "bond of stage " + index_str(ib) + " does not match stage " + index_str(ia);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// injectivity witnesses (Theorem-4.1-style evidence)

// Least index (diagonal order: n+m ascending, then n ascending) at which the
// projections of two maps differ.
inline std::optional<ModelIndex> injectivity_witness(ModelSystem& sys, const PLMap& f,
                                                     const PLMap& g, int max_index) {
    if (f.basepoint == g.basepoint && map_equal(f, g)) return std::nullopt;
    for (int s = 2; s <= 2 * max_index; ++s)
        for (int n = std::max(1, s - max_index); n <= std::min(max_index, s - 1); ++n) {
            const int m = s - n;
            ModelStage st = sys.stage(n, m);
            if (!(project(f, st) == project(g, st))) return ModelIndex{n, m};
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// the [0,1] -> [0,1] membership pattern

// For interval stages the classes form a chain 0 < (0,..) < ... < 1.  Members
// of W have order-convex allowed sets, and each point class allowed set is
// contained in the allowed sets of its neighbouring interval classes.
inline bool interval_W_pattern(const RectangularMapSet& S, const ModelStage& stage) {
    if (stage.qx.space.kind != Carrier::interval || stage.qy.space.kind != Carrier::interval)
        throw PreconditionError("interval_W_pattern needs [0,1] -> [0,1] stages");
    if (S.empty_set) return true;
    if (S.allowed.size() != stage.x_classes()) throw PreconditionError("stage mismatch");
    for (auto& a : S.allowed) {
        if (a.empty()) return false;
        for (std::size_t k = 0; k + 1 < a.size(); ++k)
            if (a[k + 1] != a[k] + 1) return false; // not an order-convex block
    }
    // classes alternate point, interval, point, ... along the carrier
    for (std::size_t i = 0; i < stage.x_classes(); ++i) {
        bool is_pt = stage.qx.classes[i].comps.size() == 1 && stage.qx.classes[i].comps[0].is_point;
        if (is_pt != (i % 2 == 0)) throw PreconditionError("unexpected class chain shape");
    }
    auto contained = [&](const std::vector<int>& small, const std::vector<int>& big) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    for (std::size_t i = 1; i < stage.x_classes(); i += 2) {
        if (!contained(S.allowed[i - 1], S.allowed[i])) return false;
        if (i + 1 < stage.x_classes() && !contained(S.allowed[i + 1], S.allowed[i])) return false;
    }
    return true;
}

} // namespace finmap

#endif
