#ifndef FINMAP_PLMAP_HPP
#define FINMAP_PLMAP_HPP

#include <map>
#include <set>

#include "finmap/space.hpp"

namespace finmap {

// Continuous maps between carriers, exactly representable:
//  - piecewise linear maps between 1-D carriers (rational knots),
//  - function tables on finite domains,
//  - constant maps, with a flag singling out the basepoint constant C_{y0}.
// For circle codomains the knot values are lifts; the map is s -> v(s) mod 1.
struct PLMap {
    enum class Kind { pl, table, constant };

    Carrier domain = Carrier::interval;
    Carrier codomain = Carrier::interval;
    Kind kind = Kind::pl;
    bool basepoint = false;
    bool basepoint_value_set = false; // false: value resolved by the stage

    std::vector<std::pair<Rat, Rat>> knots;       // pl
    std::map<std::string, std::string> table;     // table (values: labels or rationals)
    Rat cval;                                     // constant, 1-D codomain
    std::string clabel;                           // constant, finite codomain

    CPoint const_point() const {
        return codomain == Carrier::finite ? cpoint(clabel) : cpoint(cval);
    }
};

inline PLMap make_pl(Carrier dom, Carrier cod, std::vector<std::pair<Rat, Rat>> knots) {
    if (dom == Carrier::finite || cod == Carrier::finite)
        throw PreconditionError("pl maps need 1-D domain and codomain");
    if (knots.size() < 2) throw PreconditionError("pl map needs at least two knots");
    if (knots.front().first != 0 || knots.back().first != 1)
        throw PreconditionError("pl breakpoints must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i].first < knots[i + 1].first))
            throw PreconditionError("pl breakpoints must be strictly increasing");
    if (cod == Carrier::interval) {
        for (auto& [s, v] : knots)
            if (v < 0 || v > 1) throw PreconditionError("pl value outside [0,1]");
    }
    if (dom == Carrier::circle) {
        if (cod == Carrier::circle) {
            if (mod1(knots.back().second - knots.front().second) != 0)
                throw PreconditionError("circle-domain map must close up (lift values differ by an integer)");
        } else if (knots.front().second != knots.back().second) {
            throw PreconditionError("circle-domain map must agree at the cut");
        }
    }
    PLMap m;
    m.domain = dom;
    m.codomain = cod;
    m.kind = PLMap::Kind::pl;
    m.knots = std::move(knots);
    return m;
}

inline PLMap make_table(const MetricSpaceRepr& dom, const MetricSpaceRepr& cod,
                        std::map<std::string, std::string> t) {
    if (dom.kind != Carrier::finite) throw PreconditionError("table maps need a finite domain");
    for (auto& l : dom.labels)
        if (!t.count(l)) throw PreconditionError("table misses '" + l + "'");
    if (t.size() != dom.labels.size()) throw PreconditionError("table has extra entries");
    if (cod.kind == Carrier::finite) {
        for (auto& [k, v] : t) cod.label_index(v); // validates
    } else {
        for (auto& [k, v] : t) {
            Rat x = parse_rat(v);
            if (cod.kind == Carrier::interval && (x < 0 || x > 1))
                throw PreconditionError("table value outside [0,1]");
        }
    }
    PLMap m;
    m.domain = dom.kind;
    m.codomain = cod.kind;
    m.kind = PLMap::Kind::table;
    m.table = std::move(t);
    return m;
}

inline PLMap make_constant(Carrier dom, Carrier cod, const CPoint& value, bool basepoint = false) {
    PLMap m;
    m.domain = dom;
    m.codomain = cod;
    m.kind = PLMap::Kind::constant;
    m.basepoint = basepoint;
    m.basepoint_value_set = basepoint;
    if (cod == Carrier::finite) m.clabel = std::get<std::string>(value);
    else m.cval = std::get<Rat>(value);
    return m;
}

inline PLMap identity_map(Carrier k) {
    return make_pl(k, k, {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
}

// ---------------------------------------------------------------------------
// evaluation and exact images

inline Rat pl_eval(const PLMap& m, const Rat& x0) {
    if (m.kind == PLMap::Kind::constant) return m.cval;
    if (m.kind != PLMap::Kind::pl) throw PreconditionError("pl_eval on a table map");
    Rat x = m.domain == Carrier::circle ? mod1(x0) : x0;
    if (x < 0 || x > 1) throw PreconditionError("evaluation outside the carrier");
    for (std::size_t i = 0; i + 1 < m.knots.size(); ++i) {
        const auto& [s0, v0] = m.knots[i];
        const auto& [s1, v1] = m.knots[i + 1];
        if (x <= s1) {
            Rat v = v0 + (x - s0) * (v1 - v0) / (s1 - s0);
            return m.codomain == Carrier::circle ? mod1(v) : v;
        }
    }
    return m.codomain == Carrier::circle ? mod1(m.knots.back().second) : m.knots.back().second;
}

inline CPoint map_eval(const PLMap& m, const CPoint& x) {
    switch (m.kind) {
    case PLMap::Kind::constant: return m.const_point();
    case PLMap::Kind::table: {
        const std::string v = m.table.at(std::get<std::string>(x));
        return m.codomain == Carrier::finite ? cpoint(v) : cpoint(parse_rat(v));
    }
    case PLMap::Kind::pl: return cpoint(pl_eval(m, std::get<Rat>(x)));
    }
    return x;
}

namespace detail {

// Exact image of a sub-interval of one linear piece; flags tell whether the
// ends are included.
inline void piece_image(const Rat& s0, const Rat& v0, const Rat& s1, const Rat& v1,
                        const Rat& a, bool a_in, const Rat& b, bool b_in,
                        std::vector<Comp>& out) {
    auto val = [&](const Rat& x) { return v0 + (x - s0) * (v1 - v0) / (s1 - s0); };
    Rat va = val(a), vb = val(b);
    if (va == vb) { // constant piece (or a == b)
        out.push_back({true, va, va});
        return;
    }
    Rat lo = rat_min(va, vb), hi = rat_max(va, vb);
    bool lo_in = (va < vb) ? a_in : b_in;
    bool hi_in = (va < vb) ? b_in : a_in;
    out.push_back({false, lo, hi});
    if (lo_in) out.push_back({true, lo, lo});
    if (hi_in) out.push_back({true, hi, hi});
}

} // namespace detail

// Exact image of a region under a map.  The result is a region of the
// codomain carrier.
inline Region map_image(const PLMap& m, const Region& r) {
    if (m.kind == PLMap::Kind::constant) {
        if (r.empty()) return empty_region(m.codomain);
        if (m.codomain == Carrier::finite) return make_finite_region({m.clabel});
        return make_point_region(m.codomain, m.cval);
    }
    if (m.kind == PLMap::Kind::table) {
        std::vector<std::string> vals;
        for (auto& p : r.pts) vals.push_back(m.table.at(p));
        if (m.codomain == Carrier::finite) return make_finite_region(vals);
        std::vector<Comp> cs;
        for (auto& v : vals) { Rat x = parse_rat(v); cs.push_back({true, x, x}); }
        return make_region(m.codomain, cs);
    }
    std::vector<Comp> cs;
    for (auto& c : r.comps) {
        if (c.is_point) {
            Rat v = pl_eval(m, c.a);
            cs.push_back({true, v, v});
            continue;
        }
        // split (a,b) at interior breakpoints; interior split points belong
        // to the set, the outer ends do not
        std::vector<Rat> splits{c.a};
        for (auto& [s, v] : m.knots)
            if (c.a < s && s < c.b) splits.push_back(s);
        splits.push_back(c.b);
        for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
            const Rat a = splits[i], b = splits[i + 1];
            bool a_in = i > 0, b_in = i + 2 < splits.size();
            // locate the linear piece containing [a,b]
            for (std::size_t j = 0; j + 1 < m.knots.size(); ++j) {
                if (m.knots[j].first <= a && b <= m.knots[j + 1].first) {
                    detail::piece_image(m.knots[j].first, m.knots[j].second,
                                        m.knots[j + 1].first, m.knots[j + 1].second,
                                        a, a_in, b, b_in, cs);
                    break;
                }
            }
        }
    }
    return make_region(m.codomain, cs); // circle normalisation reduces lifts mod 1
}

// ---------------------------------------------------------------------------
// function equality, homeomorphisms

inline bool map_equal(const PLMap& f, const PLMap& g) {
    if (f.domain != g.domain || f.codomain != g.codomain) return false;
    auto norm = [&](const Rat& v) { return f.codomain == Carrier::circle ? mod1(v) : v; };
    auto value = [&](const PLMap& m, const Rat& x) { return norm(pl_eval(m, x)); };
    if (f.domain == Carrier::finite) {
        for (auto& [k, v] : f.table) {
            auto it = g.table.find(k);
            if (it == g.table.end()) return false;
            if (f.codomain == Carrier::finite) { if (it->second != v) return false; }
            else if (parse_rat(it->second) != parse_rat(v)) return false;
        }
        return f.table.size() == g.table.size();
    }
    std::set<Rat> xs{Rat(0), Rat(1)};
    for (auto& m : {&f, &g})
        if (m->kind == PLMap::Kind::pl)
            for (auto& [s, v] : m->knots) xs.insert(s);
    // piecewise linear maps agree iff they agree on the merged knot set
    Rat prev(-1);
    for (auto& x : xs) {
        if (value(f, x) != value(g, x)) return false;
        if (prev >= 0 && value(f, (prev + x) / 2) != value(g, (prev + x) / 2)) return false;
        prev = x;
    }
    return true;
}

inline bool is_homeomorphism(const PLMap& m, const MetricSpaceRepr& dom,
                             const MetricSpaceRepr& cod) {
    if (m.domain != dom.kind || m.codomain != cod.kind) return false;
    switch (m.kind) {
    case PLMap::Kind::constant:
        return dom.kind == Carrier::finite ? dom.labels.size() == 1
                                           : false;
    case PLMap::Kind::table: {
        if (cod.kind != Carrier::finite) return false;
        std::set<std::string> seen;
        for (auto& [k, v] : m.table) seen.insert(v);
        return seen.size() == m.table.size() && seen.size() == cod.labels.size();
    }
    case PLMap::Kind::pl: {
        bool inc = true, dec = true;
        for (std::size_t i = 0; i + 1 < m.knots.size(); ++i) {
            if (!(m.knots[i].second < m.knots[i + 1].second)) inc = false;
            if (!(m.knots[i].second > m.knots[i + 1].second)) dec = false;
        }
        if (!inc && !dec) return false;
        if (dom.kind == Carrier::interval && cod.kind == Carrier::interval) {
            Rat v0 = m.knots.front().second, v1 = m.knots.back().second;
            return (inc && v0 == 0 && v1 == 1) || (dec && v0 == 1 && v1 == 0);
        }
        if (dom.kind == Carrier::circle && cod.kind == Carrier::circle) {
            Rat d = m.knots.back().second - m.knots.front().second;
            return d == 1 || d == -1; // degree ±1, strictly monotone lift
        }
        return false;
    }
    }
    return false;
}

// Inverse of a homeomorphism (interval pl maps and finite tables).
inline PLMap map_inverse(const PLMap& m) {
    if (m.kind == PLMap::Kind::table) {
        std::map<std::string, std::string> inv;
        for (auto& [k, v] : m.table) {
            if (inv.count(v)) throw PreconditionError("table map is not injective");
            inv[v] = k;
        }
        PLMap out = m;
        out.table = std::move(inv);
        return out;
    }
    if (m.kind != PLMap::Kind::pl || m.domain != Carrier::interval ||
        m.codomain != Carrier::interval)
        throw PreconditionError("map_inverse supports interval pl maps and finite tables");
    std::vector<std::pair<Rat, Rat>> inv;
    for (auto& [s, v] : m.knots) inv.emplace_back(v, s);
    if (inv.front().first > inv.back().first) std::reverse(inv.begin(), inv.end());
    return make_pl(Carrier::interval, Carrier::interval, std::move(inv));
}

// g ∘ f for interval pl maps (and finite tables with matching kinds).
inline PLMap map_compose(const PLMap& g, const PLMap& f) {
    if (f.kind == PLMap::Kind::table && g.kind == PLMap::Kind::table) {
        std::map<std::string, std::string> t;
        for (auto& [k, v] : f.table) t[k] = g.table.at(v);
        PLMap out = f;
        out.codomain = g.codomain;
        out.table = std::move(t);
        return out;
    }
    if (f.kind != PLMap::Kind::pl || g.kind != PLMap::Kind::pl ||
        f.domain != Carrier::interval || g.domain != Carrier::interval)
        throw PreconditionError("map_compose supports interval pl maps and finite tables");
    std::set<Rat> xs;
    for (auto& [s, v] : f.knots) xs.insert(s);
    // pull back g's breakpoints through each linear piece of f
    for (std::size_t i = 0; i + 1 < f.knots.size(); ++i) {
        const auto& [s0, v0] = f.knots[i];
        const auto& [s1, v1] = f.knots[i + 1];
        if (v0 == v1) continue;
        for (auto& [t, w] : g.knots) {
            if ((v0 < t && t < v1) || (v1 < t && t < v0)) {
                Rat x = s0 + (t - v0) * (s1 - s0) / (v1 - v0);
                xs.insert(x);
            }
        }
    }
    std::vector<std::pair<Rat, Rat>> knots;
    for (auto& x : xs) knots.emplace_back(x, pl_eval(g, pl_eval(f, x)));
    return make_pl(Carrier::interval, g.codomain, std::move(knots));
}

// ---------------------------------------------------------------------------
// corpus file format
//   pl: (0,0) (1/2,1/4) (1,1)
//   table: a->x b->y
//   const: 1/2
//   basepoint            (the constant C_{y0}; value resolved by the stage)

inline PLMap parse_map_line(Carrier dom, Carrier cod, const std::string& line) {
    auto trim = [](std::string s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
        return s;
    };
    std::string s = trim(line);
    if (s == "basepoint") {
        PLMap m;
        m.domain = dom;
        m.codomain = cod;
        m.kind = PLMap::Kind::constant;
        m.basepoint = true;
        return m;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("map line needs 'kind:': " + line);
    std::string kind = trim(s.substr(0, colon));
    std::string rest = trim(s.substr(colon + 1));
    if (kind == "basepoint") {
        PLMap m;
        m.domain = dom;
        m.codomain = cod;
        m.kind = PLMap::Kind::constant;
        m.basepoint = true;
        m.basepoint_value_set = true;
        if (cod == Carrier::finite) m.clabel = rest;
        else m.cval = parse_rat(rest);
        return m;
    }
    if (kind == "const") {
        if (cod == Carrier::finite) return make_constant(dom, cod, cpoint(rest));
        return make_constant(dom, cod, cpoint(parse_rat(rest)));
    }
    if (kind == "pl") {
        std::vector<std::pair<Rat, Rat>> knots;
        std::size_t i = 0;
        while (i < rest.size()) {
            while (i < rest.size() && rest[i] != '(') ++i;
            if (i >= rest.size()) break;
            auto close = rest.find(')', i);
            if (close == std::string::npos) throw ParseError("unbalanced '(' in: " + line);
            std::string pair = rest.substr(i + 1, close - i - 1);
            auto comma = pair.find(',');
            if (comma == std::string::npos) throw ParseError("knot needs 's,v': " + line);
            knots.emplace_back(parse_rat(pair.substr(0, comma)), parse_rat(pair.substr(comma + 1)));
            i = close + 1;
        }
        return make_pl(dom, cod, std::move(knots));
    }
    if (kind == "table") {
        std::map<std::string, std::string> t;
        std::istringstream is(rest);
        std::string tok;
        while (is >> tok) {
            auto arrow = tok.find("->");
            std::size_t alen = 2;
            if (arrow == std::string::npos) { arrow = tok.find("→"); alen = 3; }
            if (arrow == std::string::npos) throw ParseError("table entry needs '->': " + tok);
            t[tok.substr(0, arrow)] = tok.substr(arrow + alen);
        }
        PLMap m;
        m.domain = dom;
        m.codomain = cod;
        m.kind = PLMap::Kind::table;
        m.table = std::move(t);
        return m;
    }
    throw ParseError("unknown map kind '" + kind + "'");
}

inline std::string map_line_str(const PLMap& m) {
    std::ostringstream os;
    switch (m.kind) {
    case PLMap::Kind::constant:
        if (m.basepoint) { os << "basepoint"; break; }
        os << "const: " << (m.codomain == Carrier::finite ? m.clabel : rat_str(m.cval));
        break;
    case PLMap::Kind::pl:
        os << "pl:";
        for (auto& [s, v] : m.knots) os << " (" << rat_str(s) << "," << rat_str(v) << ")";
        break;
    case PLMap::Kind::table:
        os << "table:";
        for (auto& [k, v] : m.table) os << " " << k << "->" << v;
        break;
    }
    return os.str();
}

inline std::vector<PLMap> parse_map_corpus(Carrier dom, Carrier cod, std::istream& in) {
    std::vector<PLMap> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_map_line(dom, cod, line));
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

} // namespace finmap

#endif
