#ifndef FINMAP_SPACE_HPP
#define FINMAP_SPACE_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "finmap/region.hpp"

namespace finmap {

// A point of a carrier: a rational coordinate for the 1-D carriers, a label
// for finite metric spaces.
using CPoint = std::variant<Rat, std::string>;

inline CPoint cpoint(const Rat& x) { return CPoint(x); }
inline CPoint cpoint(const std::string& l) { return CPoint(l); }

inline std::string cpoint_str(const CPoint& p) {
    if (std::holds_alternative<Rat>(p)) return rat_str(std::get<Rat>(p));
    return std::get<std::string>(p);
}

// One of the three supported compact metric spaces: [0,1] with the usual
// metric, R/Z with the arc metric, or a finite metric space given by an
// explicit rational distance matrix.
struct MetricSpaceRepr {
    Carrier kind = Carrier::interval;
    std::vector<std::string> labels;        // finite only
    std::vector<std::vector<Rat>> dist;     // finite only

    friend bool operator==(const MetricSpaceRepr& a, const MetricSpaceRepr& b) {
        return a.kind == b.kind && a.labels == b.labels && a.dist == b.dist;
    }

    int label_index(const std::string& l) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return (int)i;
        throw PreconditionError("unknown point label '" + l + "'");
    }

    Rat point_dist(const CPoint& a, const CPoint& b) const {
        switch (kind) {
        case Carrier::interval:
            return rat_abs(std::get<Rat>(a) - std::get<Rat>(b));
        case Carrier::circle:
            return circle_dist(std::get<Rat>(a), std::get<Rat>(b));
        case Carrier::finite:
            return dist[label_index(std::get<std::string>(a))][label_index(std::get<std::string>(b))];
        }
        return Rat(0);
    }

    bool in_carrier(const CPoint& p) const {
        if (kind == Carrier::finite) {
            if (!std::holds_alternative<std::string>(p)) return false;
            for (auto& l : labels)
                if (l == std::get<std::string>(p)) return true;
            return false;
        }
        if (!std::holds_alternative<Rat>(p)) return false;
        const Rat& x = std::get<Rat>(p);
        if (kind == Carrier::interval) return 0 <= x && x <= 1;
        return true; // circle coordinates are taken mod 1
    }

    Region carrier_region() const {
        switch (kind) {
        case Carrier::interval:
            return make_region(Carrier::interval,
                               {{true, Rat(0), Rat(0)}, {false, Rat(0), Rat(1)}, {true, Rat(1), Rat(1)}});
        case Carrier::circle:
            return make_region(Carrier::circle, {{true, Rat(0), Rat(0)}, {false, Rat(0), Rat(1)}});
        case Carrier::finite:
            return make_finite_region(labels);
        }
        return {};
    }
};

inline MetricSpaceRepr interval_space() { return MetricSpaceRepr{Carrier::interval, {}, {}}; }
inline MetricSpaceRepr circle_space() { return MetricSpaceRepr{Carrier::circle, {}, {}}; }

inline MetricSpaceRepr finite_space(std::vector<std::string> labels,
                                    std::vector<std::vector<Rat>> dist) {
    MetricSpaceRepr s;
    s.kind = Carrier::finite;
    s.labels = std::move(labels);
    s.dist = std::move(dist);
    const std::size_t n = s.labels.size();
    if (n == 0) throw PreconditionError("finite metric space needs at least one point");
    if (s.dist.size() != n) throw PreconditionError("distance matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (s.dist[i].size() != n) throw PreconditionError("distance matrix is not square");
        if (s.dist[i][i] != 0) throw PreconditionError("nonzero diagonal in distance matrix");
        for (std::size_t j = 0; j < n; ++j) {
            if (s.dist[i][j] != s.dist[j][i]) throw PreconditionError("distance matrix not symmetric");
            if (i != j && s.dist[i][j] <= 0) throw PreconditionError("non-positive off-diagonal distance");
            for (std::size_t k = 0; k < n; ++k)
                if (s.dist[i][j] > s.dist[i][k] + s.dist[k][j])
                    throw PreconditionError("triangle inequality violated at (" + s.labels[i] +
                                            "," + s.labels[j] + "," + s.labels[k] + ")");
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// set distances and diameter, exact

enum class DistanceMode { inf, hausdorff };

inline Rat set_distance(const MetricSpaceRepr& space, const Region& A, const Region& B,
                        DistanceMode mode) {
    if (A.empty() || B.empty()) throw PreconditionError("set distance of empty region");
    if (space.kind != Carrier::finite) {
        return mode == DistanceMode::inf ? region_inf_dist(A, B) : region_hausdorff_dist(A, B);
    }
    if (mode == DistanceMode::inf) {
        Rat best(-1);
        for (auto& p : A.pts)
            for (auto& q : B.pts) {
                Rat d = space.point_dist(cpoint(p), cpoint(q));
                if (best < 0 || d < best) best = d;
            }
        return best;
    }
    auto directed = [&](const Region& X, const Region& Y) {
        Rat worst(0);
        for (auto& p : X.pts) {
            Rat best(-1);
            for (auto& q : Y.pts) {
                Rat d = space.point_dist(cpoint(p), cpoint(q));
                if (best < 0 || d < best) best = d;
            }
            worst = rat_max(worst, best);
        }
        return worst;
    };
    return rat_max(directed(A, B), directed(B, A));
}

inline Rat region_diameter(const MetricSpaceRepr& space, const Region& r) {
    if (space.kind != Carrier::finite) return region_diameter(r);
    Rat best(0);
    for (auto& p : r.pts)
        for (auto& q : r.pts) best = rat_max(best, space.point_dist(cpoint(p), cpoint(q)));
    return best;
}

// ---------------------------------------------------------------------------
// file ingestion

// CSV with a header row of point labels; entries are rational literals.
inline MetricSpaceRepr load_finite_metric_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty finite metric CSV");
    auto split = [](const std::string& l) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : l) {
            if (c == ',') { out.push_back(cur); cur.clear(); }
            else if (c != '\r') cur += c;
        }
        out.push_back(cur);
        for (auto& s : out) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        }
        return out;
    };
    std::vector<std::string> labels = split(line);
    if (!labels.empty() && labels.front().empty()) labels.erase(labels.begin());
    const std::size_t n = labels.size();
    std::vector<std::vector<Rat>> d;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() == n + 1) cells.erase(cells.begin()); // optional row label
        if (cells.size() != n)
            throw ParseError("CSV line " + std::to_string(lineno) + ": expected " +
                             std::to_string(n) + " entries");
        std::vector<Rat> row;
        for (auto& c : cells) row.push_back(parse_rat(c));
        d.push_back(std::move(row));
    }
    if (d.size() != n) throw ParseError("CSV has " + std::to_string(d.size()) +
                                        " rows for " + std::to_string(n) + " labels");
    return finite_space(labels, d);
}

inline MetricSpaceRepr load_finite_metric_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return load_finite_metric_csv(in);
}

// Space definition file: "key = value" lines, '#' comments.
//   kind = interval | circle | finite_metric
//   csv  = <path>          (finite_metric only; relative to the file)
inline MetricSpaceRepr load_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        bool blank = line.find_first_not_of(" \t\r\n") == std::string::npos;
        if (blank) continue;
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto it = kv.find("kind");
    if (it == kv.end()) throw ParseError(path + ": missing 'kind'");
    if (it->second == "interval") return interval_space();
    if (it->second == "circle") return circle_space();
    if (it->second == "finite_metric") {
        auto c = kv.find("csv");
        if (c == kv.end()) throw ParseError(path + ": finite_metric needs 'csv'");
        std::string csv = c->second;
        if (!csv.empty() && csv[0] != '/') {
            auto slash = path.find_last_of('/');
            if (slash != std::string::npos) csv = path.substr(0, slash + 1) + csv;
        }
        return load_finite_metric_csv_file(csv);
    }
    throw ParseError(path + ": unknown kind '" + it->second + "'");
}

} // namespace finmap

#endif
