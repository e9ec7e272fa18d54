#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <random>
#include <set>

#include "gcf/io_json.hpp"
#include "gcf/pd_graph.hpp"
#include "oracle.hpp"

using namespace gcf;

namespace {

PdGraph fig1() {
    return PdGraph(oracle::binary_schema({"a", "b", "z"}), {{"a", "z"}, {"b", "z"}}, {UndirectedEdge::of("a", "b")});
}

PdGraph fig2() {
    return PdGraph(oracle::binary_schema({"x1", "x2", "x3", "x4", "x5"}), {{"x2", "x4"}, {"x3", "x4"}, {"x4", "x5"}},
                   {UndirectedEdge::of("x1", "x2"), UndirectedEdge::of("x1", "x3")});
}

PdGraph triangle() {
    return PdGraph(oracle::binary_schema({"a", "b", "c"}), {},
                   {UndirectedEdge::of("a", "b"), UndirectedEdge::of("b", "c"), UndirectedEdge::of("a", "c")});
}

// Every orientation of g's undirected edges, cycles included.
std::vector<std::vector<Edge>> all_orientations(const PdGraph& g) {
    std::vector<std::vector<Edge>> out;
    const auto& u = g.undirected();
    for (std::uint64_t m = 0; m < (1u << u.size()); ++m) {
        auto edges = g.directed();
        for (std::size_t j = 0; j < u.size(); ++j)
            edges.push_back((m >> j) & 1 ? Edge{u[j].b, u[j].a} : Edge{u[j].a, u[j].b});
        out.push_back(edges);
    }
    return out;
}

// Cycle check by DFS colouring.
bool has_cycle(const VariableSchema& s, const std::vector<Edge>& edges) {
    std::vector<int> colour(s.size(), 0);
    std::function<bool(int)> dfs = [&](int v) {
        colour[v] = 1;
        for (const auto& e : edges) {
            if (s.find(e.from) != v) continue;
            int w = s.find(e.to);
            if (colour[w] == 1 || (colour[w] == 0 && dfs(w))) return true;
        }
        colour[v] = 2;
        return false;
    };
    for (std::size_t v = 0; v < s.size(); ++v)
        if (colour[v] == 0 && dfs(static_cast<int>(v))) return true;
    return false;
}

std::size_t brute_force_count(const PdGraph& g) {
    std::size_t n = 0;
    for (const auto& edges : all_orientations(g)) n += has_cycle(g.schema(), edges) ? 0 : 1;
    return n;
}

}  // namespace

TEST(PdGraph, Validation) {
    auto s = oracle::binary_schema({"a", "b", "c"});
    EXPECT_THROW(PdGraph(s, {{"a", "a"}}, {}), ValidationError);
    EXPECT_THROW(PdGraph(s, {{"a", "b"}}, {UndirectedEdge::of("a", "b")}), ValidationError);
    EXPECT_THROW(PdGraph(s, {{"a", "b"}, {"b", "a"}}, {}), ValidationError);
    EXPECT_THROW(PdGraph(s, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {}), ValidationError);
    EXPECT_THROW(PdGraph(s, {{"a", "q"}}, {}), UnknownVariable);
}

TEST(IsAcyclic, Basics) {
    auto s = oracle::binary_schema({"a", "b"});
    EXPECT_TRUE(is_acyclic(s, {}));
    EXPECT_FALSE(is_acyclic(s, {{"a", "b"}, {"b", "a"}}));
}

TEST(IsAcyclic, TriangleOrientationsSixOfEight) {
    int acyclic = 0;
    for (const auto& edges : all_orientations(triangle())) {
        bool ok = is_acyclic(triangle().schema(), edges);
        EXPECT_EQ(ok, !has_cycle(triangle().schema(), edges));
        acyclic += ok;
    }
    EXPECT_EQ(acyclic, 6);
}

TEST(Enumerate, Fig1GivesTwoDags) {
    auto set = enumerate_orientations(fig1());
    ASSERT_EQ(set.size(), 2u);
    EXPECT_EQ(set.members[0].graph_id, "G0");
    EXPECT_TRUE(set.members[0].dag.has_edge("a", "b"));
    EXPECT_EQ(set.members[1].graph_id, "G1");
    EXPECT_TRUE(set.members[1].dag.has_edge("b", "a"));
}

TEST(Enumerate, Fig2GivesFourDagsIncludingCollider) {
    auto set = enumerate_orientations(fig2());
    ASSERT_EQ(set.size(), 4u);
    bool collider = false;
    for (const auto& m : set.members)
        collider = collider || (m.dag.has_edge("x2", "x1") && m.dag.has_edge("x3", "x1"));
    EXPECT_TRUE(collider);
    // The paper's three-member set is a subset by orientation vector.
    auto sub = select_subset(set, {"G00", "10", "G01"});
    EXPECT_EQ(sub.size(), 3u);
    EXPECT_THROW(select_subset(set, {"G2"}), ValidationError);
}

TEST(Enumerate, TriangleGivesSix) { EXPECT_EQ(enumerate_orientations(triangle()).size(), 6u); }

TEST(Enumerate, LexicographicOrder) {
    auto set = enumerate_orientations(triangle());
    for (std::size_t i = 1; i < set.size(); ++i) EXPECT_LT(set.members[i - 1].orientation, set.members[i].orientation);
}

TEST(Enumerate, CapReportsK) {
    try {
        enumerate_orientations(triangle(), 2);
        FAIL();
    } catch (const EnumerationLimit& e) {
        EXPECT_EQ(e.undirected_edges(), 3u);
    }
}

TEST(Enumerate, RandomGraphsMatchBruteForce) {
    std::mt19937_64 rng(8);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = oracle::binary_schema({"a", "b", "c", "d", "e"});
        // Directed part follows schema order; undirected edges anywhere.
        std::vector<Edge> dir;
        std::vector<UndirectedEdge> und;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                if (!coin(rng)) continue;
                if (coin(rng) && und.size() < 4)
                    und.push_back(UndirectedEdge::of(s[i].name, s[j].name));
                else
                    dir.push_back({s[i].name, s[j].name});
            }
        PdGraph g(s, dir, und);
        auto set = enumerate_orientations(g);
        EXPECT_EQ(set.size(), brute_force_count(g));
        EXPECT_LE(set.size(), std::size_t{1} << und.size());

        Skeleton expected;
        for (const auto& e : dir) expected.insert(UndirectedEdge::of(e));
        for (const auto& u : und) expected.insert(u);
        std::set<std::string> ids;
        for (const auto& m : set.members) {
            EXPECT_EQ(skeleton(m.dag), expected);
            EXPECT_TRUE(ids.insert(m.graph_id).second);
        }
        auto again = enumerate_orientations(g);
        for (std::size_t i = 0; i < set.size(); ++i) EXPECT_EQ(again.members[i].graph_id, set.members[i].graph_id);
    }
}

TEST(Skeleton, Basics) {
    EXPECT_TRUE(skeleton(Dag(oracle::binary_schema({"a", "b"}), {})).empty());
    auto set = enumerate_orientations(fig1());
    EXPECT_EQ(skeleton(set.members[0].dag), skeleton(set.members[1].dag));
    EXPECT_EQ(skeleton(set.members[0].dag).size(), 3u);
}

TEST(Skeleton, InvariantUnderReversal) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = oracle::random_dag(rng, oracle::random_schema(rng, 4, 2));
        EXPECT_EQ(skeleton(d), skeleton(d.reversed()));
        EXPECT_EQ(skeleton(d).size(), d.edges().size());
    }
}

TEST(PdGraphJson, CanonicalRoundTrip) {
    for (const auto& g : {fig1(), fig2(), triangle()}) {
        auto text = pd_graph_to_json(g);
        auto back = pd_graph_from_json(io::ordered_json::parse(text));
        EXPECT_EQ(back, g);
        EXPECT_EQ(pd_graph_to_json(back), text);
    }
}

TEST(PdGraphJson, SampleFileIsCanonical) {
    std::ifstream in(std::string(GCF_SAMPLES_DIR) + "/fig2_pd.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(pd_graph_to_json(load_pd_graph(std::string(GCF_SAMPLES_DIR) + "/fig2_pd.json")), text);
}

TEST(PdGraphJson, MalformedInput) {
    EXPECT_THROW(pd_graph_from_json(io::ordered_json::parse(R"({"directed": []})")), ParseError);
    EXPECT_THROW(pd_graph_from_json(io::ordered_json::parse(
                     R"({"variables": [{"name": "a", "cardinality": 2}], "directed": [["a"]]})")),
                 ParseError);
    EXPECT_THROW(load_pd_graph("/nonexistent/graph.json"), ParseError);
}
