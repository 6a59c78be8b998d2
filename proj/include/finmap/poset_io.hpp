#ifndef FINMAP_POSET_IO_HPP
#define FINMAP_POSET_IO_HPP

#include <json.hpp>

#include "finmap/poset.hpp"

namespace finmap {

// Interchange document: {"elements": [labels], "leq": [[a,b], ...]} with the
// full reflexive-transitive relation spelled out.
inline std::string poset_to_json(const FinitePoset& p) {
    nlohmann::json j;
    j["elements"] = p.labels;
    auto& pairs = j["leq"] = nlohmann::json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t k = 0; k < p.size(); ++k)
            if (p.leq((int)i, (int)k)) pairs.push_back({p.labels[i], p.labels[k]});
    return j.dump(2) + "\n";
}

inline FinitePoset poset_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("poset document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("elements") || !j.contains("leq"))
        throw ParseError("poset document needs 'elements' and 'leq'");
    if (!j["elements"].is_array() || !j["leq"].is_array())
        throw ParseError("'elements' and 'leq' must be arrays");
    std::vector<std::string> labels;
    for (auto& e : j["elements"]) {
        if (!e.is_string()) throw ParseError("element labels must be strings");
        labels.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto& pr : j["leq"]) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
            throw ParseError("'leq' entries must be [a, b] label pairs");
        pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
    return make_poset(labels, pairs); // validates reflexive/antisymmetric/transitive
}

// Hasse edges: the transitive reduction, directed from smaller to larger.
inline std::vector<std::pair<int, int>> hasse_edges(const FinitePoset& p) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j || !p.leq((int)i, (int)j)) continue;
            bool covered = true;
            for (std::size_t k = 0; k < p.size(); ++k)
                if (k != i && k != j && p.leq((int)i, (int)k) && p.leq((int)k, (int)j)) {
                    covered = false;
                    break;
                }
            if (covered) edges.emplace_back((int)i, (int)j);
        }
    return edges;
}

inline std::string poset_to_dot(const FinitePoset& p, const std::string& name = "hasse") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (auto& l : p.labels) os << "  \"" << l << "\";\n";
    for (auto& [i, j] : hasse_edges(p))
        os << "  \"" << p.labels[i] << "\" -> \"" << p.labels[j] << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace finmap

#endif
