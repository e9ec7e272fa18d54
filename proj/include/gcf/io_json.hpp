#ifndef GCF_IO_JSON_HPP
#define GCF_IO_JSON_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcf/bayes_net.hpp"
#include "gcf/dataset.hpp"
#include "gcf/error.hpp"
#include "gcf/pd_graph.hpp"
#include "gcf/scoring.hpp"

namespace gcf {

namespace io {

using ordered_json = nlohmann::ordered_json;

inline constexpr double kLoadRowTolerance = 1e-6;

inline ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError(path.string() + ": cannot open for writing");
    out << text;
}

// Wraps nlohmann type errors so callers see ParseError with the source name.
template <class F>
auto parse_with(const std::string& source, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline VariableSchema schema_from_json(const ordered_json& j) {
    std::vector<Variable> vars;
    for (const auto& v : j.at("variables"))
        vars.push_back({v.at("name").get<std::string>(), v.at("cardinality").get<int>()});
    return VariableSchema(std::move(vars));
}

inline ordered_json schema_to_json(const VariableSchema& schema) {
    ordered_json out = ordered_json::array();
    for (const auto& v : schema) out.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
    return out;
}

inline std::vector<Edge> edges_from_json(const ordered_json& j) {
    std::vector<Edge> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge entries must be [from, to] pairs");
        out.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    return out;
}

}  // namespace io

inline PdGraph pd_graph_from_json(const io::ordered_json& j, const std::string& source = "<graph>") {
    return io::parse_with(source, [&] {
        auto schema = io::schema_from_json(j);
        auto directed = j.contains("directed") ? io::edges_from_json(j.at("directed")) : std::vector<Edge>{};
        std::vector<UndirectedEdge> undirected;
        if (j.contains("undirected"))
            for (const auto& e : io::edges_from_json(j.at("undirected"))) undirected.push_back(UndirectedEdge::of(e));
        return PdGraph(std::move(schema), std::move(directed), std::move(undirected));
    });
}

inline PdGraph load_pd_graph(const std::string& path) { return pd_graph_from_json(io::read_json_file(path), path); }

// Canonical form: schema order for variables, sorted edge lists.
inline std::string pd_graph_to_json(const PdGraph& g) {
    io::ordered_json j;
    j["variables"] = io::schema_to_json(g.schema());
    j["directed"] = io::ordered_json::array();
    for (const auto& e : g.directed()) j["directed"].push_back({e.from, e.to});
    j["undirected"] = io::ordered_json::array();
    for (const auto& u : g.undirected()) j["undirected"].push_back({u.a, u.b});
    return j.dump(2) + "\n";
}

inline std::string dag_to_json(const Dag& d) { return pd_graph_to_json(PdGraph(d.schema(), d.edges(), {})); }

inline BayesNet bayes_net_from_json(const io::ordered_json& j, const std::string& source = "<bnet>") {
    return io::parse_with(source, [&] {
        auto schema = io::schema_from_json(j);
        Dag dag(schema, io::edges_from_json(j.at("edges")));
        std::vector<Cpt> cpts;
        for (const auto& c : j.at("cpts")) {
            Cpt cpt{c.at("node").get<std::string>(), c.at("parents").get<std::vector<std::string>>(),
                    c.at("rows").get<std::vector<std::vector<double>>>()};
            for (auto& row : cpt.rows) {
                double total = 0.0;
                for (double p : row) total += p;
                if (!(std::abs(total - 1.0) <= io::kLoadRowTolerance))
                    throw ValidationError(source + ": CPT row of '" + cpt.child + "' sums to " + std::to_string(total));
                for (double& p : row) p /= total;
            }
            cpts.push_back(std::move(cpt));
        }
        return BayesNet(std::move(dag), std::move(cpts));
    });
}

inline BayesNet load_bayes_net(const std::string& path) { return bayes_net_from_json(io::read_json_file(path), path); }

inline std::string bayes_net_to_json(const BayesNet& net) {
    io::ordered_json j;
    j["variables"] = io::schema_to_json(net.schema());
    j["edges"] = io::ordered_json::array();
    for (const auto& e : net.dag().edges()) j["edges"].push_back({e.from, e.to});
    j["cpts"] = io::ordered_json::array();
    for (const auto& c : net.cpts()) j["cpts"].push_back({{"node", c.child}, {"parents", c.parents}, {"rows", c.rows}});
    return j.dump(2) + "\n";
}

struct ManifestEntry {
    std::string file;
    std::string node;
    int value = 0;
};

// Observational file plus one file per do(node)=value. Paths are relative to
// the manifest's directory unless absolute.
struct InterventionManifest {
    std::string observational;
    std::vector<ManifestEntry> interventions;
};

inline InterventionManifest manifest_from_json(const io::ordered_json& j, const std::string& source = "<manifest>") {
    return io::parse_with(source, [&] {
        InterventionManifest m;
        m.observational = j.at("observational").get<std::string>();
        std::set<Intervention> seen;
        for (const auto& e : j.at("interventions")) {
            ManifestEntry entry{e.at("file").get<std::string>(), e.at("node").get<std::string>(), e.at("value").get<int>()};
            if (!seen.insert({entry.node, entry.value}).second)
                throw ValidationError(source + ": duplicate intervention do(" + entry.node + ")=" +
                                      std::to_string(entry.value));
            m.interventions.push_back(std::move(entry));
        }
        return m;
    });
}

inline std::string manifest_to_json(const InterventionManifest& m) {
    io::ordered_json j;
    j["observational"] = m.observational;
    j["interventions"] = io::ordered_json::array();
    for (const auto& e : m.interventions) j["interventions"].push_back({{"file", e.file}, {"node", e.node}, {"value", e.value}});
    return j.dump(2) + "\n";
}

// Loads every dataset a manifest references against `schema`.
inline InterventionBundle load_bundle(const std::string& manifest_path, const VariableSchema& schema, double smoothing) {
    auto m = manifest_from_json(io::read_json_file(manifest_path), manifest_path);
    auto base = std::filesystem::path(manifest_path).parent_path();
    auto resolve = [&](const std::string& f) {
        std::filesystem::path p(f);
        return (p.is_absolute() ? p : base / p).string();
    };
    InterventionBundle bundle{read_dataset_csv(resolve(m.observational), schema), {}, smoothing};
    for (const auto& e : m.interventions) {
        int idx = schema.index_of(e.node);
        if (e.value < 0 || e.value >= schema[idx].cardinality) throw InvalidState(e.node, e.value);
        bundle.interventional.emplace(Intervention{e.node, e.value}, read_dataset_csv(resolve(e.file), schema));
    }
    bundle.validate();
    return bundle;
}

}  // namespace gcf

#endif  // GCF_IO_JSON_HPP
