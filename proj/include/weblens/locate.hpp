#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weblens/error.hpp"
#include "weblens/events.hpp"

namespace weblens {

// Undirected simple graph over AS identifiers. Self-loops and duplicate
// edges in the input are dropped.
class AsGraph {
public:
    AsGraph() = default;

    static AsGraph from_edges(
        std::span<const std::pair<std::string, std::string>> edges) {
        AsGraph g;
        std::set<std::string> vertices;
        for (const auto& [u, v] : edges) {
            vertices.insert(u);
            vertices.insert(v);
        }
        g.ids_.assign(vertices.begin(), vertices.end());
        for (std::size_t i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = i;
        std::vector<std::set<std::size_t>> adj(g.ids_.size());
        for (const auto& [u, v] : edges) {
            if (u == v) continue;
            const std::size_t a = g.index_.at(u);
            const std::size_t b = g.index_.at(v);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        g.neighbors_.resize(adj.size());
        for (std::size_t i = 0; i < adj.size(); ++i)
            g.neighbors_[i].assign(adj[i].begin(), adj[i].end());
        return g;
    }

    std::size_t vertex_count() const { return ids_.size(); }
    const std::vector<std::string>& vertex_ids() const { return ids_; }
    bool has(const std::string& id) const { return index_.contains(id); }

    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            throw DataError("AS graph: unknown vertex " + id);
        return it->second;
    }

    const std::vector<std::size_t>& neighbors(std::size_t v) const {
        return neighbors_.at(v);
    }

private:
    std::vector<std::string> ids_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

// score(v) = sum over ordered pairs (s,t) in sources x targets, s != t, of
// the fraction of shortest s-t paths passing through v as an interior
// vertex. Brandes accumulation per source, with path credit seeded only at
// target sinks. Returned scores are indexed like g.vertex_ids().
inline std::vector<double> restricted_betweenness(
    const AsGraph& g, const std::set<std::string>& sources,
    const std::set<std::string>& targets) {
    if (sources.empty() || targets.empty())
        throw ConfigError("restricted_betweenness: empty endpoint set");
    std::vector<std::size_t> source_idx, target_idx;
    for (const auto& s : sources) source_idx.push_back(g.index_of(s));
    for (const auto& t : targets) target_idx.push_back(g.index_of(t));

    const std::size_t n = g.vertex_count();
    std::vector<char> is_target(n, 0);
    for (std::size_t t : target_idx) is_target[t] = 1;

    std::vector<double> score(n, 0.0);
    std::vector<long> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> visit_order;

    for (std::size_t s : source_idx) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        visit_order.clear();

        std::deque<std::size_t> queue;
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            visit_order.push_back(v);
            for (std::size_t w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }

        for (auto it = visit_order.rbegin(); it != visit_order.rend(); ++it) {
            const std::size_t w = *it;
            const double credit =
                (is_target[w] && w != s) ? 1.0 + delta[w] : delta[w];
            for (std::size_t v : preds[w])
                delta[v] += sigma[v] / sigma[w] * credit;
            if (w != s) score[w] += delta[w];
        }
    }
    return score;
}

// Candidate cause ranking for a detected event: restricted betweenness with
// the event's AS set as sources and the home AS of its vantage points as
// targets. Output covers every vertex with positive score plus all
// endpoints, ordered by score descending, ties by AS id.
inline std::vector<std::pair<std::string, double>> rank_candidate_causes(
    const AsGraph& g, const Event& event,
    const std::map<std::string, std::string>& vp_home) {
    std::set<std::string> sources = event.as_set;
    std::set<std::string> targets;
    for (const auto& vp : event.vp_set) {
        auto it = vp_home.find(vp);
        if (it == vp_home.end())
            throw DataError("rank_candidate_causes: no home AS for VP " + vp);
        targets.insert(it->second);
    }
    for (const auto& s : sources) (void)g.index_of(s);
    for (const auto& t : targets) (void)g.index_of(t);

    const auto score = restricted_betweenness(g, sources, targets);
    std::vector<std::pair<std::string, double>> ranked;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const std::string& id = g.vertex_ids()[v];
        if (score[v] > 0.0 || sources.contains(id) || targets.contains(id))
            ranked.emplace_back(id, score[v]);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return ranked;
}

}  // namespace weblens
