#ifndef FINMAP_APPROX_HPP
#define FINMAP_APPROX_HPP

#include <random>

#include "finmap/isotopy.hpp"
#include "finmap/matching.hpp"
#include "finmap/model.hpp"

namespace finmap {

// ---------------------------------------------------------------------------
// G_t: a bijection inside p_α^α(H_t)

inline std::vector<std::vector<int>> self_stage_allowed(const PLMap& h, const QuotientSpace& q) {
    std::vector<Region> closures;
    for (auto& c : q.classes) closures.push_back(region_closure(c));
    std::vector<std::vector<int>> allowed;
    for (auto& E : q.classes) {
        Region img = region_closure(map_image(h, E));
        std::vector<int> a;
        for (std::size_t j = 0; j < closures.size(); ++j)
            if (!region_intersect(img, closures[j]).empty()) a.push_back((int)j);
        allowed.push_back(std::move(a));
    }
    return allowed;
}

// The lexicographically least bijection g with g(E) in the allowed set of E.
// Raises NoBijection when the rectangular set contains none (evidence that
// the image of p_α^α at this index holds no bijection).
inline std::vector<int> select_bijection(const PLMap& h, const QuotientSpace& q) {
    auto allowed = self_stage_allowed(h, q);
    auto m = lex_least_perfect_matching(allowed, (int)q.classes.size());
    if (!m)
        throw NoBijection("no bijection inside the projection at cover index " +
                          std::to_string(q.cover_index));
    return *m;
}

// All bijections inside the allowed sets, for oracle comparisons on small
// stages.
inline std::vector<std::vector<int>> all_allowed_bijections(
    const std::vector<std::vector<int>>& allowed) {
    std::vector<std::vector<int>> out;
    const int n = (int)allowed.size();
    std::vector<int> pick(n, -1);
    std::vector<char> used(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(pick);
            return;
        }
        for (int t : allowed[i]) {
            if (used[t]) continue;
            used[t] = 1;
            pick[i] = t;
            rec(i + 1);
            used[t] = 0;
        }
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// sampled metric isotopies

// A metric isotopy ingested as a time-stamped family of exact homeomorphisms.
struct MetricIsotopySample {
    std::vector<Rat> times;  // 0 = t_0 < ... < t_m = 1
    std::vector<PLMap> maps; // one homeomorphism per time
};

inline void validate_sample(const MetricSpaceRepr& space, const MetricIsotopySample& s,
                            const Rat* modulus = nullptr) {
    if (s.times.empty() || s.times.size() != s.maps.size())
        throw InvalidSample("times and maps differ in length");
    if (s.times.front() != 0 || s.times.back() != 1)
        throw InvalidSample("sample times must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < s.times.size(); ++i)
        if (!(s.times[i] < s.times[i + 1])) throw InvalidSample("sample times must increase");
    for (std::size_t i = 0; i < s.maps.size(); ++i)
        if (!is_homeomorphism(s.maps[i], space, space))
            throw InvalidSample("map at t = " + rat_str(s.times[i]) + " is not a homeomorphism");
    if (modulus) {
        for (std::size_t i = 0; i + 1 < s.maps.size(); ++i) {
            // exact uniform distance of consecutive pl maps at merged knots
            if (space.kind == Carrier::finite) continue;
            std::set<Rat> xs{Rat(0), Rat(1)};
            for (auto& [x, v] : s.maps[i].knots) xs.insert(x);
            for (auto& [x, v] : s.maps[i + 1].knots) xs.insert(x);
            for (auto& x : xs)
                if (rat_abs(pl_eval(s.maps[i], x) - pl_eval(s.maps[i + 1], x)) > *modulus)
                    throw InvalidSample("consecutive samples exceed the modulus bound at t = " +
                                        rat_str(s.times[i]));
        }
    }
}

// file format: one line per sample, "t=p/q pl: (...) (...)"
inline MetricIsotopySample parse_sample_file(Carrier kind, std::istream& in) {
    MetricIsotopySample s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.rfind("t=", 0) != 0)
            throw ParseError("line " + std::to_string(lineno) + ": expected 't=...'");
        auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": missing map");
        s.times.push_back(parse_rat(line.substr(2, sp - 2)));
        s.maps.push_back(parse_map_line(kind, kind, line.substr(sp + 1)));
    }
    return s;
}

inline std::string export_sample(const MetricIsotopySample& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.times.size(); ++i)
        os << "t=" << rat_str(s.times[i]) << " " << map_line_str(s.maps[i]) << "\n";
    return os.str();
}

// Pointwise linear interpolation between consecutive samples; exact.
inline PLMap interpolate(const MetricIsotopySample& s, const Rat& t) {
    if (t <= s.times.front()) return s.maps.front();
    if (t >= s.times.back()) return s.maps.back();
    std::size_t i = 0;
    while (s.times[i + 1] < t) ++i;
    if (s.times[i + 1] == t) return s.maps[i + 1];
    const PLMap &f = s.maps[i], &g = s.maps[i + 1];
    if (f.kind != PLMap::Kind::pl || g.kind != PLMap::Kind::pl)
        throw PreconditionError("interpolation needs pl maps");
    Rat lam = (t - s.times[i]) / (s.times[i + 1] - s.times[i]);
    std::set<Rat> xs;
    for (auto& [x, v] : f.knots) xs.insert(x);
    for (auto& [x, v] : g.knots) xs.insert(x);
    std::vector<std::pair<Rat, Rat>> knots;
    for (auto& x : xs)
        knots.emplace_back(x, (1 - lam) * pl_eval(f, x) + lam * pl_eval(g, x));
    return make_pl(f.domain, f.codomain, std::move(knots));
}

// ---------------------------------------------------------------------------
// the power set 2^{X_α} as a finite T0-space (reverse inclusion: ∅ on top)

inline std::string subset_label(unsigned mask) {
    if (mask == 0) return "{}";
    std::string l = "{";
    bool first = true;
    for (int b = 0; mask >> b; ++b)
        if (mask >> b & 1) {
            if (!first) l += ",";
            l += "c" + std::to_string(b);
            first = false;
        }
    return l + "}";
}

inline FinitePoset powerset_poset(std::size_t k) {
    if (k > 12) throw BoundExceeded("power set poset limited to 12 generators");
    const unsigned total = 1u << k;
    std::vector<std::string> labels;
    for (unsigned m = 0; m < total; ++m) labels.push_back(subset_label(m));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (unsigned a = 0; a < total; ++a)
        for (unsigned b = 0; b < total; ++b)
            if ((a & b) == b) pairs.emplace_back(subset_label(a), subset_label(b)); // b ⊆ a: a ≤ b
    return make_poset(labels, pairs);
}

// Elementwise extension of a class bijection to the power set.
inline PosetAutomorphism extend_to_powerset(const FinitePoset& pp, const std::vector<int>& g) {
    const unsigned total = 1u << g.size();
    std::vector<int> img(pp.size());
    for (unsigned m = 0; m < total; ++m) {
        unsigned out = 0;
        for (std::size_t b = 0; b < g.size(); ++b)
            if (m >> b & 1) out |= 1u << g[b];
        img[pp.index_of(subset_label(m))] = pp.index_of(subset_label(out));
    }
    return make_automorphism(pp, img);
}

// ---------------------------------------------------------------------------
// the approximation pipeline

struct ApproxMove {
    std::vector<int> bijection; // h_i on classes: the singleton restriction
    Rat time;
    std::string powerset_witness;       // witness of the inducing move of 2^{X_α}
    bool cardinality_preserving = false; // sampled-subset check
    bool extension_monotone = false;     // sampled-pair check
    bool exact_powerset_verified = false; // literal is_move on a materialised 2^{X_α}
};

struct ApproxResult {
    int n = 0;
    QuotientSpace q;
    std::vector<Rat> grid;
    std::vector<std::vector<int>> selections; // G_t per grid time
    std::vector<ApproxMove> moves;
    std::vector<int> composite;               // G_1 ∘ G_0^{-1}
    std::vector<Rat> class_distances;
    Rat max_distance = 0;
    bool powerset_isotopy_valid = false;
    std::size_t powerset_exact_size = 0; // materialised poset size, 0 if symbolic only
    std::vector<std::string> skipped;    // per-n failure notes from the sweep
};

struct ApproxOptions {
    DistanceMode mode = DistanceMode::hausdorff;
    int max_refine_depth = 16;
    std::size_t powerset_exact_bound = 8; // materialise 2^k for k <= bound
    std::uint64_t seed = 1;
    int subset_samples = 64;
};

namespace detail {

inline std::vector<int> compose_bij(const std::vector<int>& g, const std::vector<int>& f) {
    std::vector<int> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
    return out;
}

inline std::vector<int> invert_bij(const std::vector<int>& f) {
    std::vector<int> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[f[i]] = (int)i;
    return out;
}

} // namespace detail

// Approximates H_1 H_0^{-1} by moves of 2^{X_α}: sweeps cover indices
// ascending, selects G_t on a refined grid, decomposes the induced isotopy of
// 2^{X_α}, and accepts the first n whose per-class distances all beat ε.
inline ApproxResult approximate_isotopy(const MetricSpaceRepr& space,
                                        const MetricIsotopySample& sample, const Rat& eps,
                                        int max_n, const ApproxOptions& opts = {}) {
    if (eps <= 0) throw PreconditionError("epsilon must be positive");
    if (space.kind == Carrier::circle)
        throw PreconditionError("circle isotopy approximation is not supported");
    validate_sample(space, sample);
    const bool finite = space.kind == Carrier::finite;

    // H_1 ∘ H_0^{-1}, exact
    PLMap target = map_compose(sample.maps.back(), map_inverse(sample.maps.front()));

    ApproxResult best;
    for (int n = 1; n <= max_n; ++n) {
        ApproxResult r;
        r.n = n;
        r.q = quotient(space, n);
        const int k = (int)r.q.classes.size();
        try {
            // grid: sample times, refined until consecutive selections move
            // every class by at most one chain position
            r.grid = sample.times;
            std::map<Rat, std::vector<int>> sel;
            auto map_at = [&](const Rat& t) -> PLMap {
                if (!finite) return interpolate(sample, t);
                for (std::size_t i = 0; i < sample.times.size(); ++i)
                    if (sample.times[i] == t) return sample.maps[i];
                throw PreconditionError("finite samples carry no map at t = " + rat_str(t));
            };
            auto selection_at = [&](const Rat& t) {
                auto it = sel.find(t);
                if (it == sel.end()) it = sel.emplace(t, select_bijection(map_at(t), r.q)).first;
                return it->second;
            };
            for (int depth = 0;; ++depth) {
                bool ok = true;
                std::vector<Rat> refined;
                for (std::size_t i = 0; i + 1 < r.grid.size(); ++i) {
                    refined.push_back(r.grid[i]);
                    if (finite) continue;
                    const auto &a = selection_at(r.grid[i]), &b = selection_at(r.grid[i + 1]);
                    for (int e = 0; e < k; ++e)
                        if (b[e] - a[e] > 1 || a[e] - b[e] > 1) {
                            ok = false;
                            refined.push_back((r.grid[i] + r.grid[i + 1]) / 2);
                            break;
                        }
                }
                refined.push_back(r.grid.back());
                if (ok) break;
                if (depth >= opts.max_refine_depth)
                    throw ResolutionExhausted("grid refinement depth exhausted at n = " +
                                              std::to_string(n));
                r.grid = std::move(refined);
            }
            for (auto& t : r.grid) r.selections.push_back(selection_at(t));
        } catch (const NoBijection& e) {
            r.skipped.push_back("n = " + std::to_string(n) + ": " + e.what());
            best.skipped.insert(best.skipped.end(), r.skipped.begin(), r.skipped.end());
            continue;
        } catch (const ResolutionExhausted& e) {
            best.skipped.push_back(e.what());
            continue;
        }

        // events: grid points where the selection changes
        std::mt19937_64 rng(opts.seed);
        for (std::size_t i = 1; i < r.selections.size(); ++i) {
            if (r.selections[i] == r.selections[i - 1]) continue;
            ApproxMove mv;
            mv.time = r.grid[i];
            mv.bijection = detail::compose_bij(r.selections[i],
                                               detail::invert_bij(r.selections[i - 1]));
            // the inducing move of 2^{X_α}: every non-invariant subset contains
            // the intersection of all non-invariant subsets, which is empty as
            // soon as two singletons move; its minimal open set is everything
            mv.powerset_witness = "{}";
            mv.cardinality_preserving = true;
            mv.extension_monotone = true;
            for (int s = 0; s < opts.subset_samples; ++s) {
                unsigned A = k >= 31 ? (unsigned)rng() : (unsigned)(rng() % (1ull << k));
                unsigned B = k >= 31 ? (unsigned)rng() : (unsigned)(rng() % (1ull << k));
                B |= A; // A ⊆ B
                auto apply = [&](unsigned m) {
                    unsigned out = 0;
                    for (int b = 0; b < k && b < 31; ++b)
                        if (m >> b & 1) out |= 1u << mv.bijection[b];
                    return out;
                };
                if (__builtin_popcount(apply(A)) != __builtin_popcount(A))
                    mv.cardinality_preserving = false;
                if ((apply(A) & apply(B)) != apply(A)) mv.extension_monotone = false;
            }
            r.moves.push_back(std::move(mv));
        }
        r.composite = detail::compose_bij(r.selections.back(),
                                          detail::invert_bij(r.selections.front()));
        // sanity: the moves compose to G_1 G_0^{-1}
        std::vector<int> check(k);
        std::iota(check.begin(), check.end(), 0);
        for (auto& mv : r.moves) check = detail::compose_bij(mv.bijection, check);
        if (check != r.composite)
            throw ConstructionFailure("event transitions do not compose to G_1 G_0^{-1}");

        // the induced isotopy of 2^{X_α}: literal cross-check when small
        r.powerset_isotopy_valid = true;
        if ((std::size_t)k <= opts.powerset_exact_bound) {
            FinitePoset pp = powerset_poset((std::size_t)k);
            r.powerset_exact_size = pp.size();
            std::vector<Rat> times{Rat(0)};
            std::vector<PosetAutomorphism> levels{extend_to_powerset(pp, r.selections.front())};
            for (std::size_t i = 1; i < r.selections.size(); ++i) {
                if (r.selections[i] == r.selections[i - 1]) continue;
                times.push_back(r.grid[i]);
                levels.push_back(extend_to_powerset(pp, r.selections[i]));
            }
            FiniteIsotopy big = isotopy_from_levels(pp, times, levels);
            auto diag = validate_isotopy(big);
            r.powerset_isotopy_valid = diag.valid;
            if (diag.valid) {
                auto dec = decompose_moves(big);
                if (dec.moves.size() == r.moves.size()) {
                    for (std::size_t i = 0; i < dec.moves.size(); ++i) {
                        // singleton restriction must reproduce h_i
                        bool match = true;
                        for (int c = 0; c < k; ++c) {
                            int from = pp.index_of(subset_label(1u << c));
                            int to = pp.index_of(subset_label(1u << r.moves[i].bijection[c]));
                            if (dec.moves[i].aut.img[from] != to) match = false;
                        }
                        r.moves[i].exact_powerset_verified = match && dec.verified;
                        r.moves[i].powerset_witness = pp.labels[dec.moves[i].witness];
                    }
                } else {
                    r.powerset_isotopy_valid = false;
                }
            }
        }

        // exact per-class distance check
        bool within = true;
        r.max_distance = 0;
        for (int e = 0; e < k; ++e) {
            Region img = map_image(target, r.q.classes[e]);
            Rat dist = set_distance(space, img, r.q.classes[r.composite[e]], opts.mode);
            r.class_distances.push_back(dist);
            r.max_distance = rat_max(r.max_distance, dist);
            if (!(dist < eps)) within = false;
        }
        if (within) {
            r.skipped = best.skipped;
            return r;
        }
        best.skipped.push_back("n = " + std::to_string(n) + ": max distance " +
                               rat_str(r.max_distance) + " >= " + rat_str(eps));
    }
    std::string why = "no cover index up to " + std::to_string(max_n) + " meets epsilon = " +
                      rat_str(eps);
    if (!best.skipped.empty()) why += " (last: " + best.skipped.back() + ")";
    throw ResolutionExhausted(why);
}

} // namespace finmap

#endif
