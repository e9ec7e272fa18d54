#ifndef GCF_PD_GRAPH_HPP
#define GCF_PD_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gcf/error.hpp"
#include "gcf/graph.hpp"

namespace gcf {

inline constexpr std::size_t kDefaultMaxUndirected = 24;

// Graph with both directed and undirected edges. Undirected edges are kept
// sorted; their index in that order is their bit position in an orientation
// vector.
class PdGraph {
public:
    PdGraph() = default;

    PdGraph(VariableSchema schema, std::vector<Edge> directed, std::vector<UndirectedEdge> undirected)
        : schema_(std::move(schema)), directed_(std::move(directed)) {
        for (auto& u : undirected) undirected_.push_back(UndirectedEdge::of(u.a, u.b));
        std::sort(directed_.begin(), directed_.end());
        std::sort(undirected_.begin(), undirected_.end());

        std::set<UndirectedEdge> pairs;
        auto admit = [&](const std::string& x, const std::string& y) {
            schema_.index_of(x);
            schema_.index_of(y);
            if (x == y) throw ValidationError("self-loop on '" + x + "'");
            if (!pairs.insert(UndirectedEdge::of(x, y)).second)
                throw ValidationError("pair " + x + "," + y + " appears more than once");
        };
        for (const auto& e : directed_) admit(e.from, e.to);
        for (const auto& u : undirected_) admit(u.a, u.b);
        if (!is_acyclic(schema_, directed_)) throw ValidationError("directed part of the graph has a cycle");
    }

    const VariableSchema& schema() const noexcept { return schema_; }
    const std::vector<Edge>& directed() const noexcept { return directed_; }
    const std::vector<UndirectedEdge>& undirected() const noexcept { return undirected_; }

    // Orientation of undirected edge j under bit value: 0 -> a->b, 1 -> b->a.
    Edge orient(std::size_t j, bool bit) const {
        const auto& u = undirected_[j];
        return bit ? Edge{u.b, u.a} : Edge{u.a, u.b};
    }

    friend bool operator==(const PdGraph&, const PdGraph&) = default;

private:
    VariableSchema schema_;
    std::vector<Edge> directed_;
    std::vector<UndirectedEdge> undirected_;
};

struct DagSetMember {
    std::string orientation;  // one '0'/'1' per undirected edge of the source
    std::string graph_id;     // "G" + orientation
    Dag dag;
};

// Ordered set of candidate DAGs. When generated from a PdGraph it remembers
// the source's undirected edges; those are the default scored edges.
struct DagSet {
    std::vector<DagSetMember> members;
    std::optional<std::vector<UndirectedEdge>> source_undirected;

    std::size_t size() const noexcept { return members.size(); }
};

inline std::string graph_id_for(const std::string& orientation) { return "G" + orientation; }

// All acyclic orientations of g's undirected edges, in lexicographic order of
// the orientation bit string.
inline DagSet enumerate_orientations(const PdGraph& g, std::size_t max_undirected = kDefaultMaxUndirected) {
    const std::size_t k = g.undirected().size();
    if (k > max_undirected || k >= 63) throw EnumerationLimit(k, max_undirected);

    DagSet out;
    out.source_undirected = g.undirected();
    const std::uint64_t total = std::uint64_t{1} << k;
    std::vector<Edge> edges;
    std::string bits(k, '0');
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        edges = g.directed();
        for (std::size_t j = 0; j < k; ++j) {
            bool bit = (mask >> (k - 1 - j)) & 1u;
            bits[j] = bit ? '1' : '0';
            edges.push_back(g.orient(j, bit));
        }
        if (!is_acyclic(g.schema(), edges)) continue;
        out.members.push_back({bits, graph_id_for(bits), Dag(g.schema(), edges)});
    }
    return out;
}

// Members whose orientation vector (with or without the "G" prefix) is listed.
inline DagSet select_subset(const DagSet& set, const std::vector<std::string>& wanted) {
    DagSet out;
    out.source_undirected = set.source_undirected;
    std::set<std::string> keys;
    for (auto w : wanted) {
        if (!w.empty() && w.front() == 'G') w.erase(0, 1);
        keys.insert(w);
    }
    std::set<std::string> found;
    for (const auto& m : set.members)
        if (keys.count(m.orientation)) {
            out.members.push_back(m);
            found.insert(m.orientation);
        }
    for (const auto& k : keys)
        if (!found.count(k)) throw ValidationError("subset entry '" + k + "' is not an acyclic orientation");
    return out;
}

}  // namespace gcf

#endif  // GCF_PD_GRAPH_HPP
