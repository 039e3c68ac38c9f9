#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weblens/corpus.hpp"
#include "weblens/error.hpp"

namespace weblens {

// Directed hyperlink graph over site identifiers. Self-links and duplicate
// edges in the input are dropped.
class WebGraph {
public:
    WebGraph() = default;

    static WebGraph from_edges(
        std::span<const std::pair<std::string, std::string>> edges) {
        WebGraph g;
        for (const auto& [from, to] : edges) {
            g.out_[from];
            g.out_[to];
            g.in_[from];
            g.in_[to];
            if (from == to) continue;
            g.out_[from].insert(to);
            g.in_[to].insert(from);
        }
        return g;
    }

    bool has(const std::string& site) const { return out_.contains(site); }
    std::size_t vertex_count() const { return out_.size(); }

    const std::set<std::string>& out_neighbors(const std::string& site) const {
        return find(out_, site);
    }
    const std::set<std::string>& in_neighbors(const std::string& site) const {
        return find(in_, site);
    }

private:
    using AdjMap = std::map<std::string, std::set<std::string>>;
    static const std::set<std::string>& find(const AdjMap& adj,
                                             const std::string& site) {
        auto it = adj.find(site);
        if (it == adj.end()) throw DataError("web graph: unknown site " + site);
        return it->second;
    }
    AdjMap out_;
    AdjMap in_;
};

// x.y / (||x|| ||y||), clamped to [0,1]; zero vectors score 0.
inline double cosine_similarity(const SparseVector& x, const SparseVector& y) {
    if (x.dim != y.dim)
        throw ConfigError("cosine_similarity: dimension mismatch");
    double dot = 0.0, nx = 0.0, ny = 0.0;
    std::size_t ix = 0, iy = 0;
    while (ix < x.items.size() && iy < y.items.size()) {
        if (x.items[ix].first < y.items[iy].first) {
            ++ix;
        } else if (y.items[iy].first < x.items[ix].first) {
            ++iy;
        } else {
            dot += x.items[ix].second * y.items[iy].second;
            ++ix;
            ++iy;
        }
    }
    for (const auto& [i, v] : x.items) nx += v * v;
    for (const auto& [i, v] : y.items) ny += v * v;
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(nx) * std::sqrt(ny)), 0.0, 1.0);
}

// |A n B| / |A u B|; two empty sets count as identical.
inline double jaccard_similarity(const std::set<std::string>& a,
                                 const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    for (const auto& s : a)
        if (b.contains(s)) ++common;
    return double(common) / double(a.size() + b.size() - common);
}

enum class LinkDirection { Inbound, Outbound };

inline double neighborhood_similarity(const WebGraph& g, const std::string& s1,
                                      const std::string& s2,
                                      LinkDirection direction) {
    if (direction == LinkDirection::Outbound)
        return jaccard_similarity(g.out_neighbors(s1), g.out_neighbors(s2));
    return jaccard_similarity(g.in_neighbors(s1), g.in_neighbors(s2));
}

struct RankedCandidate {
    std::string id;
    double score = 0.0;
};

// Max-over-seeds cosine similarity; candidates at or above the threshold
// come back sorted by score descending, ties by id.
inline std::vector<RankedCandidate> rank_candidates(
    std::span<const SparseVector> seeds,
    std::span<const std::pair<std::string, SparseVector>> candidates,
    double threshold) {
    if (seeds.empty()) throw ConfigError("rank_candidates: no seed vectors");
    if (threshold < 0.0 || threshold > 1.0)
        throw ConfigError("rank_candidates: threshold must be in [0,1]");
    std::vector<RankedCandidate> out;
    for (const auto& [id, vec] : candidates) {
        double best = 0.0;
        for (const auto& seed : seeds)
            best = std::max(best, cosine_similarity(seed, vec));
        if (best >= threshold) out.push_back({id, best});
    }
    std::sort(out.begin(), out.end(),
              [](const RankedCandidate& a, const RankedCandidate& b) {
                  return a.score != b.score ? a.score > b.score : a.id < b.id;
              });
    return out;
}

enum class IdeologyLabel { GroupA, GroupB, Undetermined };

// Each site linking to the target votes for the camp its own out-links
// favor; per-inlinker majority decides, so a single prolific hub cannot
// dominate. Vote ties and evidence-free targets stay undetermined.
inline IdeologyLabel classify_ideology(const WebGraph& g,
                                       const std::set<std::string>& group_a,
                                       const std::set<std::string>& group_b,
                                       const std::string& target) {
    for (const auto& s : group_a)
        if (group_b.contains(s))
            throw ConfigError("classify_ideology: exemplar sets overlap");
    if (group_a.contains(target) || group_b.contains(target))
        throw ConfigError("classify_ideology: target is an exemplar");

    std::size_t votes_a = 0, votes_b = 0;
    for (const auto& inlinker : g.in_neighbors(target)) {
        std::size_t to_a = 0, to_b = 0;
        for (const auto& linked : g.out_neighbors(inlinker)) {
            if (group_a.contains(linked)) ++to_a;
            if (group_b.contains(linked)) ++to_b;
        }
        if (to_a > to_b)
            ++votes_a;
        else if (to_b > to_a)
            ++votes_b;
    }
    if (votes_a > votes_b) return IdeologyLabel::GroupA;
    if (votes_b > votes_a) return IdeologyLabel::GroupB;
    return IdeologyLabel::Undetermined;
}

}  // namespace weblens
