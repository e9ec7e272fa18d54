#ifndef GCF_GRAPH_HPP
#define GCF_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gcf/error.hpp"
#include "gcf/schema.hpp"

namespace gcf {

struct Edge {
    std::string from;
    std::string to;

    Edge reversed() const { return {to, from}; }
    auto operator<=>(const Edge&) const = default;
};

// Unordered pair, stored with a < b lexicographically.
struct UndirectedEdge {
    std::string a;
    std::string b;

    static UndirectedEdge of(std::string x, std::string y) {
        if (y < x) std::swap(x, y);
        return {std::move(x), std::move(y)};
    }
    static UndirectedEdge of(const Edge& e) { return of(e.from, e.to); }

    auto operator<=>(const UndirectedEdge&) const = default;
};

using Skeleton = std::set<UndirectedEdge>;

// Deterministic topological order over schema indices: Kahn's algorithm,
// always releasing the ready node with the smallest schema index.
// Returns nullopt when the edges contain a directed cycle.
inline std::optional<std::vector<int>> topological_order(const VariableSchema& schema,
                                                         const std::vector<Edge>& edges) {
    const std::size_t n = schema.size();
    std::vector<std::vector<int>> children(n);
    std::vector<int> in_degree(n, 0);
    for (const auto& e : edges) {
        int p = schema.index_of(e.from), c = schema.index_of(e.to);
        children[p].push_back(c);
        ++in_degree[c];
    }
    std::set<int> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (in_degree[i] == 0) ready.insert(static_cast<int>(i));
    std::vector<int> order;
    while (!ready.empty()) {
        int node = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(node);
        for (int c : children[node])
            if (--in_degree[c] == 0) ready.insert(c);
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

inline bool is_acyclic(const VariableSchema& schema, const std::vector<Edge>& edges) {
    return topological_order(schema, edges).has_value();
}

class Dag {
public:
    Dag() = default;

    Dag(VariableSchema schema, std::vector<Edge> edges) : schema_(std::move(schema)), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        std::set<UndirectedEdge> pairs;
        for (const auto& e : edges_) {
            schema_.index_of(e.from);
            schema_.index_of(e.to);
            if (e.from == e.to) throw ValidationError("self-loop on '" + e.from + "'");
            if (!pairs.insert(UndirectedEdge::of(e)).second)
                throw ValidationError("duplicate edge between '" + e.from + "' and '" + e.to + "'");
        }
        auto order = gcf::topological_order(schema_, edges_);
        if (!order) throw ValidationError("graph contains a directed cycle");
        order_ = std::move(*order);
    }

    const VariableSchema& schema() const noexcept { return schema_; }
    // Sorted (from, to).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& topological_order() const noexcept { return order_; }

    bool has_edge(const std::string& from, const std::string& to) const {
        return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
    }

    // Directed version of an unordered pair, if present in either direction.
    std::optional<Edge> oriented(const UndirectedEdge& e) const {
        if (has_edge(e.a, e.b)) return Edge{e.a, e.b};
        if (has_edge(e.b, e.a)) return Edge{e.b, e.a};
        return std::nullopt;
    }

    // Parents of `node`, in schema order.
    std::vector<std::string> parents(const std::string& node) const {
        schema_.index_of(node);
        std::vector<std::string> out;
        for (const auto& v : schema_)
            if (has_edge(v.name, node)) out.push_back(v.name);
        return out;
    }

    std::vector<std::string> children(const std::string& node) const {
        schema_.index_of(node);
        std::vector<std::string> out;
        for (const auto& v : schema_)
            if (has_edge(node, v.name)) out.push_back(v.name);
        return out;
    }

    std::vector<std::string> roots() const {
        std::vector<std::string> out;
        for (const auto& v : schema_)
            if (parents(v.name).empty()) out.push_back(v.name);
        return out;
    }

    // Nodes reachable from `node` along directed edges, excluding itself.
    std::set<std::string> descendants(const std::string& node) const {
        std::set<std::string> seen;
        std::vector<std::string> stack{node};
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            for (const auto& c : children(cur))
                if (seen.insert(c).second) stack.push_back(c);
        }
        return seen;
    }

    Dag reversed() const {
        std::vector<Edge> rev;
        for (const auto& e : edges_) rev.push_back(e.reversed());
        return Dag(schema_, std::move(rev));
    }

    friend bool operator==(const Dag& x, const Dag& y) { return x.schema_ == y.schema_ && x.edges_ == y.edges_; }

private:
    VariableSchema schema_;
    std::vector<Edge> edges_;
    std::vector<int> order_;
};

inline Skeleton skeleton(const Dag& d) {
    Skeleton out;
    for (const auto& e : d.edges()) out.insert(UndirectedEdge::of(e));
    return out;
}

inline std::string to_string(const Edge& e) { return e.from + "->" + e.to; }
inline std::string to_string(const UndirectedEdge& e) { return e.a + "---" + e.b; }

}  // namespace gcf

#endif  // GCF_GRAPH_HPP
