#ifndef FINMAP_MATCHING_HPP
#define FINMAP_MATCHING_HPP

#include <functional>
#include <optional>
#include <vector>

namespace finmap {

namespace detail {

// Kuhn's augmenting-path matching; sources with pinned[s] != -1 are fixed to
// that target and never displaced.
inline bool perfect_matching_exists(const std::vector<std::vector<int>>& adj, int n_targets,
                                    const std::vector<int>& pinned) {
    const int n = (int)adj.size();
    std::vector<int> match_t(n_targets, -1);
    for (int i = 0; i < n; ++i) {
        if (pinned[i] == -1) continue;
        if (match_t[pinned[i]] != -1) return false;
        match_t[pinned[i]] = i;
    }
    std::vector<char> visited;
    std::function<bool(int)> augment = [&](int s) -> bool {
        for (int t : adj[s]) {
            if (visited[t]) continue;
            visited[t] = 1;
            int o = match_t[t];
            if (o == -1 || (pinned[o] == -1 && augment(o))) {
                match_t[t] = s;
                return true;
            }
        }
        return false;
    };
    for (int s = 0; s < n; ++s) {
        if (pinned[s] != -1) continue;
        visited.assign(n_targets, 0);
        if (!augment(s)) return false;
    }
    return true;
}

} // namespace detail

// Lexicographically least perfect matching: sources in order, each taking the
// least target that still leaves the rest solvable.  Deterministic.
inline std::optional<std::vector<int>> lex_least_perfect_matching(
    const std::vector<std::vector<int>>& adj, int n_targets) {
    const int n = (int)adj.size();
    if (n != n_targets) return std::nullopt;
    std::vector<int> pinned(n, -1);
    if (!detail::perfect_matching_exists(adj, n_targets, pinned)) return std::nullopt;
    for (int s = 0; s < n; ++s) {
        for (int t : adj[s]) {
            bool taken = false;
            for (int q = 0; q < s; ++q)
                if (pinned[q] == t) { taken = true; break; }
            if (taken) continue;
            pinned[s] = t;
            if (detail::perfect_matching_exists(adj, n_targets, pinned)) break;
            pinned[s] = -1;
        }
        if (pinned[s] == -1) return std::nullopt;
    }
    return pinned;
}

} // namespace finmap

#endif
