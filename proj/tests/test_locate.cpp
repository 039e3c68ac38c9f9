#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "support/graph_oracle.hpp"
#include "weblens/locate.hpp"

using namespace weblens;

namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;

AsGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Edges edges;
    for (std::size_t i = 0; i < n; ++i) {
        edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j)
            if (uniform(rng) < p)
                edges.emplace_back("v" + std::to_string(i),
                                   "v" + std::to_string(j));
    }
    return AsGraph::from_edges(edges);
}

std::set<std::string> random_subset(const std::vector<std::string>& ids,
                                    std::mt19937_64& rng) {
    std::set<std::string> out;
    const std::size_t count = 1 + rng() % ids.size();
    while (out.size() < count) out.insert(ids[rng() % ids.size()]);
    return out;
}

double score_of(const AsGraph& g, const std::vector<double>& scores,
                const std::string& id) {
    return scores[g.index_of(id)];
}

}  // namespace

TEST_CASE("betweenness on a path credits the middle vertex", "[locate]") {
    auto g = AsGraph::from_edges(Edges{{"a", "b"}, {"b", "c"}});
    auto scores = restricted_betweenness(g, {"a"}, {"c"});
    CHECK(score_of(g, scores, "b") == 1.0);
    CHECK(score_of(g, scores, "a") == 0.0);
    CHECK(score_of(g, scores, "c") == 0.0);
}

TEST_CASE("betweenness over a disconnected pair is zero", "[locate]") {
    auto g = AsGraph::from_edges(Edges{{"a", "b"}, {"c", "d"}});
    auto scores = restricted_betweenness(g, {"a"}, {"d"});
    for (double s : scores) CHECK(s == 0.0);
}

TEST_CASE("betweenness splits across equal shortest paths", "[locate]") {
    auto g = AsGraph::from_edges(
        Edges{{"a", "b"}, {"b", "d"}, {"a", "c"}, {"c", "d"}});
    auto scores = restricted_betweenness(g, {"a"}, {"d"});
    CHECK(score_of(g, scores, "b") == Catch::Approx(0.5).margin(1e-12));
    CHECK(score_of(g, scores, "c") == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("betweenness validates endpoint sets", "[locate]") {
    auto g = AsGraph::from_edges(Edges{{"a", "b"}});
    CHECK_THROWS_AS(restricted_betweenness(g, {"a"}, {"zz"}), DataError);
    CHECK_THROWS_AS(restricted_betweenness(g, {}, {"a"}), ConfigError);
}

TEST_CASE("betweenness matches brute-force enumeration on random graphs",
          "[locate]") {
    std::mt19937_64 rng(60601);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + rng() % 8;
        auto g = random_graph(n, 0.25 + 0.5 * double(rng() % 100) / 100.0, rng);
        auto sources = random_subset(g.vertex_ids(), rng);
        auto targets = random_subset(g.vertex_ids(), rng);
        auto fast = restricted_betweenness(g, sources, targets);
        auto slow =
            oracle::brute_force_restricted_betweenness(g, sources, targets);
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            CHECK(fast[v] == Catch::Approx(slow[v]).margin(1e-12));
    }
}

TEST_CASE("all-pairs restricted betweenness is twice the classical value",
          "[locate]") {
    std::mt19937_64 rng(282);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 4 + rng() % 6;
        auto g = random_graph(n, 0.5, rng);
        std::set<std::string> all(g.vertex_ids().begin(), g.vertex_ids().end());
        auto ordered = restricted_betweenness(g, all, all);

        // classical unordered betweenness, enumerated directly
        std::vector<double> classical(g.vertex_count(), 0.0);
        oracle::PathEnumerator paths(g);
        for (std::size_t s = 0; s < g.vertex_count(); ++s)
            for (std::size_t t = s + 1; t < g.vertex_count(); ++t) {
                const auto all_paths = paths.shortest_paths(s, t);
                if (all_paths.empty()) continue;
                std::vector<std::size_t> hits(g.vertex_count(), 0);
                for (const auto& path : all_paths)
                    for (std::size_t pos = 1; pos + 1 < path.size(); ++pos)
                        ++hits[path[pos]];
                for (std::size_t v = 0; v < g.vertex_count(); ++v)
                    classical[v] += double(hits[v]) / double(all_paths.size());
            }
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            CHECK(ordered[v] == Catch::Approx(2.0 * classical[v]).margin(1e-12));
    }
}

TEST_CASE("betweenness is invariant under vertex relabeling", "[locate]") {
    auto g1 = AsGraph::from_edges(
        Edges{{"a", "b"}, {"b", "c"}, {"c", "d"}, {"b", "d"}});
    auto g2 = AsGraph::from_edges(
        Edges{{"x1", "x2"}, {"x2", "x3"}, {"x3", "x4"}, {"x2", "x4"}});
    auto s1 = restricted_betweenness(g1, {"a"}, {"d"});
    auto s2 = restricted_betweenness(g2, {"x1"}, {"x4"});
    CHECK(score_of(g1, s1, "b") == score_of(g2, s2, "x2"));
    CHECK(score_of(g1, s1, "c") == score_of(g2, s2, "x3"));
}

TEST_CASE("a shorter bypass never raises the bypassed score", "[locate]") {
    // before: a - w - t is the only route
    auto before = AsGraph::from_edges(Edges{{"a", "w"}, {"w", "t"}});
    auto sb = restricted_betweenness(before, {"a"}, {"t"});
    // after: direct edge a - t bypasses w entirely
    auto after = AsGraph::from_edges(Edges{{"a", "w"}, {"w", "t"}, {"a", "t"}});
    auto sa = restricted_betweenness(after, {"a"}, {"t"});
    CHECK(score_of(after, sa, "w") <= score_of(before, sb, "w"));
    CHECK(score_of(after, sa, "w") == 0.0);
}

TEST_CASE("rank_candidate_causes puts a star hub first", "[locate]") {
    Edges edges;
    for (const auto* leaf : {"s1", "s2", "h1", "h2"})
        edges.emplace_back("hub", leaf);
    auto g = AsGraph::from_edges(edges);
    Event event;
    event.as_set = {"s1", "s2"};
    event.vp_set = {"vpA", "vpB"};
    event.weight = 1.0;
    std::map<std::string, std::string> vp_home{{"vpA", "h1"}, {"vpB", "h2"}};
    auto ranked = rank_candidate_causes(g, event, vp_home);
    REQUIRE_FALSE(ranked.empty());
    CHECK(ranked[0].first == "hub");
    CHECK(ranked[0].second == 4.0);  // 2 sources x 2 targets, sole interior
}

TEST_CASE("rank_candidate_causes handles the degenerate single vertex",
          "[locate]") {
    auto g = AsGraph::from_edges(Edges{{"x", "y"}});
    Event event;
    event.as_set = {"x"};
    event.vp_set = {"vp"};
    event.weight = 1.0;
    std::map<std::string, std::string> vp_home{{"vp", "x"}};
    auto ranked = rank_candidate_causes(g, event, vp_home);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].first == "x");
    CHECK(ranked[0].second == 0.0);
}

TEST_CASE("rank_candidate_causes surfaces a planted cut vertex", "[locate]") {
    // two cliques joined only through w
    Edges edges;
    const std::vector<std::string> left{"l1", "l2", "l3", "l4"};
    const std::vector<std::string> right{"r1", "r2", "r3", "r4"};
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = i + 1; j < left.size(); ++j)
            edges.emplace_back(left[i], left[j]);
    for (std::size_t i = 0; i < right.size(); ++i)
        for (std::size_t j = i + 1; j < right.size(); ++j)
            edges.emplace_back(right[i], right[j]);
    for (const auto& l : left) edges.emplace_back(l, "w");
    for (const auto& r : right) edges.emplace_back("w", r);
    auto g = AsGraph::from_edges(edges);

    Event event;
    event.as_set = {"l1", "l2", "l3"};
    event.vp_set = {"vp1", "vp2"};
    event.weight = 2.0;
    std::map<std::string, std::string> vp_home{{"vp1", "r1"}, {"vp2", "r2"}};
    auto ranked = rank_candidate_causes(g, event, vp_home);
    REQUIRE(ranked.size() >= 2);
    CHECK(ranked[0].first == "w");
    CHECK(ranked[0].second > ranked[1].second);

    // brute-force agreement on the same instance
    auto brute = oracle::brute_force_restricted_betweenness(g, event.as_set,
                                                            {"r1", "r2"});
    auto fast = restricted_betweenness(g, event.as_set, {"r1", "r2"});
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        CHECK(fast[v] == Catch::Approx(brute[v]).margin(1e-12));
}

TEST_CASE("rank_candidate_causes validates its inputs", "[locate]") {
    auto g = AsGraph::from_edges(Edges{{"a", "b"}});
    Event event;
    event.as_set = {"a"};
    event.vp_set = {"vp"};
    CHECK_THROWS_AS(rank_candidate_causes(g, event, {}), DataError);
    std::map<std::string, std::string> bad_home{{"vp", "nope"}};
    CHECK_THROWS_AS(rank_candidate_causes(g, event, bad_home), DataError);
}

TEST_CASE("as graph drops self-loops and duplicate edges", "[locate]") {
    auto g = AsGraph::from_edges(
        Edges{{"a", "a"}, {"a", "b"}, {"b", "a"}, {"a", "b"}});
    CHECK(g.vertex_count() == 2);
    CHECK(g.neighbors(g.index_of("a")).size() == 1);
    CHECK(g.neighbors(g.index_of("b")).size() == 1);
}
