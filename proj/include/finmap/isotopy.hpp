#ifndef FINMAP_ISOTOPY_HPP
#define FINMAP_ISOTOPY_HPP

#include <json.hpp>

#include "finmap/poset.hpp"
#include "finmap/rational.hpp"

namespace finmap {

// A level-preserving self-homeomorphism of X × [0,1], stored through its
// inverse traces: for each element q, the step function t -> H_t^{-1}(q).
// Each step carries its value and start time; a step is in force on
// [start, next start), the last one on [start, 1].  Values at breakpoints
// come from the later step (continuity of the trace into the Alexandroff
// topology forces the upper value).
struct FiniteIsotopy {
    FinitePoset poset;
    std::vector<std::vector<std::pair<int, Rat>>> traces; // per q: (value, start)

    int trace_value(int q, const Rat& t) const {
        const auto& tr = traces[q];
        int v = tr.front().first;
        for (auto& [x, start] : tr) {
            if (start <= t) v = x;
            else break;
        }
        return v;
    }

    std::vector<Rat> global_breakpoints() const {
        std::set<Rat> bs{Rat(0), Rat(1)};
        for (auto& tr : traces)
            for (auto& [x, start] : tr) bs.insert(start);
        return {bs.begin(), bs.end()};
    }
};

struct IsotopyDiagnostics {
    bool valid = true;
    std::vector<std::string> issues;

    void fail(const std::string& msg) {
        valid = false;
        issues.push_back(msg);
    }
};

// Level assignment q -> H_t^{-1}(q) at one time.
inline std::vector<int> level_assignment(const FiniteIsotopy& H, const Rat& t) {
    std::vector<int> a(H.poset.size());
    for (std::size_t q = 0; q < H.poset.size(); ++q) a[q] = H.trace_value((int)q, t);
    return a;
}

// Checks the representation invariants: interval partition consistency, no
// strictly downward trace jumps, and a poset automorphism at every level.
inline IsotopyDiagnostics validate_isotopy(const FiniteIsotopy& H) {
    IsotopyDiagnostics d;
    const auto& p = H.poset;
    if (H.traces.size() != p.size()) {
        d.fail("trace count does not match the poset");
        return d;
    }
    for (std::size_t q = 0; q < p.size(); ++q) {
        const auto& tr = H.traces[q];
        if (tr.empty()) { d.fail("empty trace for " + p.labels[q]); continue; }
        if (tr.front().second != 0)
            d.fail("trace of " + p.labels[q] + " does not start at 0");
        for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
            if (!(tr[i].second < tr[i + 1].second))
                d.fail("trace intervals of " + p.labels[q] + " are not increasing");
            if (tr[i].first == tr[i + 1].first)
                d.fail("repeated trace value for " + p.labels[q]);
            else if (p.leq(tr[i + 1].first, tr[i].first))
                d.fail("downward jump in the trace of " + p.labels[q] + " at t = " +
                       rat_str(tr[i + 1].second));
        }
        if (tr.back().second > 1)
            d.fail("trace of " + p.labels[q] + " extends past 1");
    }
    if (!d.valid) return d;
    // per-level automorphism at every breakpoint and between breakpoints
    auto bs = H.global_breakpoints();
    std::vector<Rat> levels = bs;
    for (std::size_t i = 0; i + 1 < bs.size(); ++i) levels.push_back((bs[i] + bs[i + 1]) / 2);
    for (auto& t : levels) {
        auto a = level_assignment(H, t);
        try {
            make_automorphism(p, a);
        } catch (const PreconditionError& e) {
            d.fail("level t = " + rat_str(t) + ": " + e.what());
        }
    }
    return d;
}

// H_t: inverse of the level assignment.
inline PosetAutomorphism slice(const FiniteIsotopy& H, const Rat& t) {
    if (t < 0 || t > 1) throw PreconditionError("slice time outside [0,1]");
    auto d = validate_isotopy(H);
    if (!d.valid) throw PreconditionError("invalid isotopy: " + d.issues.front());
    return inverse(make_automorphism(H.poset, level_assignment(H, t)));
}

// ---------------------------------------------------------------------------
// Decomposition of H_1 H_0^{-1} into moves

struct MoveDecomposition {
    PosetAutomorphism h0, h1;
    std::vector<Move> moves;                  // h_1 ... h_n, in application order
    std::vector<Rat> event_times;             // one per move
    std::vector<PosetAutomorphism> k;         // k_0 = H_0, ..., k_n = H_1
    std::vector<std::vector<Rat>> sections;   // graph sections f_0 ... f_n
    bool verified = false;                    // composition identity checked exactly
};

// Factor H_1 H_0^{-1} as h_n ... h_1 with every h_i a move.  Events are the
// trace breakpoints in increasing time; an event whose change is not confined
// to one minimal open set is split into per-orbit steps grouped by their
// least witness.  Raises ConstructionFailure when an orbit fits no U_x or a
// split step is not an automorphism.
inline MoveDecomposition decompose_moves(const FiniteIsotopy& H) {
    auto diag = validate_isotopy(H);
    if (!diag.valid) throw PreconditionError("invalid isotopy: " + diag.issues.front());
    const auto& p = H.poset;
    const int n = (int)p.size();

    MoveDecomposition out;
    out.h0 = inverse(make_automorphism(p, level_assignment(H, Rat(0))));
    out.h1 = inverse(make_automorphism(p, level_assignment(H, Rat(1))));
    out.k.push_back(out.h0);
    out.sections.push_back(std::vector<Rat>(n, Rat(0)));

    auto bs = H.global_breakpoints();
    for (std::size_t bi = 1; bi < bs.size(); ++bi) {
        const Rat& u = bs[bi];
        // H just before u (trace values are right-continuous)
        Rat before = (bs[bi - 1] + u) / 2;
        PosetAutomorphism h_pre = inverse(make_automorphism(p, level_assignment(H, before)));
        PosetAutomorphism h_post = inverse(make_automorphism(p, level_assignment(H, u)));
        PosetAutomorphism phi = compose(h_post, inverse(h_pre));
        auto supp = phi.support();
        if (supp.empty()) continue;

        // split the event into steps: one U_x fits everything, or per-orbit
        // groups keyed by their least witness
        std::vector<std::vector<int>> steps;
        if (is_move(phi)) {
            steps.push_back(supp);
        } else {
            std::vector<char> seen(n, 0);
            std::map<int, std::vector<int>> groups; // witness -> orbit union
            for (int s : supp) {
                if (seen[s]) continue;
                std::vector<int> orbit;
                int x = s;
                do {
                    orbit.push_back(x);
                    seen[x] = 1;
                    x = phi.img[x];
                } while (x != s);
                int witness = -1;
                for (int w = 0; w < n && witness < 0; ++w) {
                    bool ok = true;
                    for (int y : orbit)
                        if (!p.leq(y, w)) { ok = false; break; }
                    if (ok) witness = w;
                }
                if (witness < 0) {
                    std::string msg = "event t = " + rat_str(u) + ": orbit {";
                    for (std::size_t i = 0; i < orbit.size(); ++i)
                        msg += (i ? "," : "") + p.labels[orbit[i]];
                    throw ConstructionFailure(msg + "} fits in no minimal open set");
                }
                auto& g = groups[witness];
                g.insert(g.end(), orbit.begin(), orbit.end());
            }
            for (auto& [w, members] : groups) steps.push_back(members);
        }

        for (auto& members : steps) {
            std::vector<int> img(n);
            std::iota(img.begin(), img.end(), 0);
            for (int y : members) img[y] = phi.img[y];
            PosetAutomorphism psi;
            try {
                psi = make_automorphism(p, img);
            } catch (const PreconditionError& e) {
                throw ConstructionFailure("event t = " + rat_str(u) +
                                          ": split step is not an automorphism (" + e.what() + ")");
            }
            out.moves.push_back(make_move(psi));
            out.event_times.push_back(u);
            out.k.push_back(compose(psi, out.k.back()));
            // advance the section on the columns this step moved
            std::vector<Rat> f = out.sections.back();
            const auto& k_prev = out.k[out.k.size() - 2];
            for (int x = 0; x < n; ++x) {
                bool moved = false;
                for (int y : members)
                    if (k_prev.img[x] == y) { moved = true; break; }
                if (moved) f[x] = u;
            }
            out.sections.push_back(std::move(f));
        }
        if (!(out.k.back().img == h_post.img))
            throw ConstructionFailure("event t = " + rat_str(u) +
                                      ": split steps do not recompose the event");
    }

    // property (3): the final section reaches 1; no jumps remain to cross
    if (!out.moves.empty())
        out.sections.back().assign(n, Rat(1));

    // exact composition identity H_1 = h_n ... h_1 H_0
    PosetAutomorphism acc = out.h0;
    for (auto& m : out.moves) acc = compose(m.aut, acc);
    out.verified = acc.img == out.h1.img && out.k.back().img == out.h1.img;
    if (!out.verified) throw ConstructionFailure("composition identity failed");
    return out;
}

// ---------------------------------------------------------------------------
// file format: one line per element,  "q: x1 [0,1/2] x2 [1/2,1]"

inline FiniteIsotopy parse_isotopy(const FinitePoset& p, std::istream& in) {
    FiniteIsotopy H;
    H.poset = p;
    H.traces.assign(p.size(), {});
    std::string line;
    int lineno = 0;
    std::vector<char> seen(p.size(), 0);
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'q: ...'");
        auto trim = [](std::string s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.pop_back();
            return s;
        };
        int q = p.index_of(trim(line.substr(0, colon)));
        if (seen[q]) throw ParseError("line " + std::to_string(lineno) + ": duplicate trace");
        seen[q] = 1;
        std::istringstream is(line.substr(colon + 1));
        std::string val, interval;
        Rat expected_start(0);
        while (is >> val >> interval) {
            if (interval.size() < 5 || interval.front() != '[' || interval.back() != ']')
                throw ParseError("line " + std::to_string(lineno) + ": bad interval " + interval);
            auto comma = interval.find(',');
            if (comma == std::string::npos)
                throw ParseError("line " + std::to_string(lineno) + ": bad interval " + interval);
            Rat a = parse_rat(interval.substr(1, comma - 1));
            Rat b = parse_rat(interval.substr(comma + 1, interval.size() - comma - 2));
            if (a != expected_start)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": intervals do not share endpoints");
            if (!(a < b) && !(a == b && b == 1)) // a one-point interval only at t = 1
                throw ParseError("line " + std::to_string(lineno) + ": empty interval");
            H.traces[q].emplace_back(p.index_of(val), a);
            expected_start = b;
        }
        if (H.traces[q].empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty trace");
        if (expected_start != 1)
            throw ParseError("line " + std::to_string(lineno) + ": trace does not reach 1");
    }
    for (std::size_t q = 0; q < p.size(); ++q)
        if (!seen[q]) throw ParseError("missing trace for '" + p.labels[q] + "'");
    return H;
}

inline std::string export_isotopy(const FiniteIsotopy& H) {
    std::ostringstream os;
    for (std::size_t q = 0; q < H.poset.size(); ++q) {
        os << H.poset.labels[q] << ":";
        const auto& tr = H.traces[q];
        for (std::size_t i = 0; i < tr.size(); ++i) {
            Rat end = i + 1 < tr.size() ? tr[i + 1].second : Rat(1);
            os << " " << H.poset.labels[tr[i].first] << " [" << rat_str(tr[i].second) << ","
               << rat_str(end) << "]";
        }
        os << "\n";
    }
    return os.str();
}

// Builds the trace representation from level homeomorphisms: H_t = levels[i]
// on [times[i], times[i+1]).  times[0] must be 0.
inline FiniteIsotopy isotopy_from_levels(const FinitePoset& p,
                                         const std::vector<Rat>& times,
                                         const std::vector<PosetAutomorphism>& levels) {
    if (times.empty() || times.size() != levels.size() || times.front() != 0)
        throw PreconditionError("levels need times starting at 0");
    FiniteIsotopy H;
    H.poset = p;
    H.traces.assign(p.size(), {});
    for (std::size_t q = 0; q < p.size(); ++q) {
        for (std::size_t i = 0; i < levels.size(); ++i) {
            int v = levels[i].inv[q]; // trace stores H_t^{-1}
            if (H.traces[q].empty() || H.traces[q].back().first != v)
                H.traces[q].emplace_back(v, times[i]);
        }
    }
    return H;
}

// ---------------------------------------------------------------------------
// reports

inline std::string automorphism_str(const PosetAutomorphism& a) {
    std::string s;
    for (std::size_t i = 0; i < a.img.size(); ++i) {
        if (i) s += " ";
        s += a.poset.labels[i] + "->" + a.poset.labels[a.img[i]];
    }
    return s;
}

inline std::string decomposition_report(const MoveDecomposition& d) {
    std::ostringstream os;
    os << "H_0: " << automorphism_str(d.h0) << "\n";
    os << "H_1: " << automorphism_str(d.h1) << "\n";
    os << "moves: " << d.moves.size() << "\n";
    for (std::size_t i = 0; i < d.moves.size(); ++i) {
        os << "move " << i + 1 << " @ t = " << rat_str(d.event_times[i]) << ", witness "
           << d.moves[i].aut.poset.labels[d.moves[i].witness] << ": "
           << automorphism_str(d.moves[i].aut) << "\n";
    }
    os << "composition identity verified: " << (d.verified ? "yes" : "no") << "\n";
    return os.str();
}

inline std::string decomposition_json(const MoveDecomposition& d) {
    nlohmann::json j;
    auto perm = [](const PosetAutomorphism& a) {
        nlohmann::json m = nlohmann::json::object();
        for (std::size_t i = 0; i < a.img.size(); ++i)
            m[a.poset.labels[i]] = a.poset.labels[a.img[i]];
        return m;
    };
    j["h0"] = perm(d.h0);
    j["h1"] = perm(d.h1);
    j["verified"] = d.verified;
    auto& moves = j["moves"] = nlohmann::json::array();
    for (std::size_t i = 0; i < d.moves.size(); ++i) {
        nlohmann::json m;
        m["time"] = rat_str(d.event_times[i]);
        m["witness"] = d.moves[i].aut.poset.labels[d.moves[i].witness];
        m["map"] = perm(d.moves[i].aut);
        moves.push_back(m);
    }
    auto& ks = j["intermediates"] = nlohmann::json::array();
    for (auto& k : d.k) ks.push_back(perm(k));
    auto& fs = j["sections"] = nlohmann::json::array();
    for (auto& f : d.sections) {
        nlohmann::json sec = nlohmann::json::object();
        for (std::size_t i = 0; i < f.size(); ++i) sec[d.h0.poset.labels[i]] = rat_str(f[i]);
        fs.push_back(sec);
    }
    return j.dump(2) + "\n";
}

} // namespace finmap

#endif
