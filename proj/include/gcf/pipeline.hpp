#ifndef GCF_PIPELINE_HPP
#define GCF_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gcf/bayes_net.hpp"
#include "gcf/error.hpp"
#include "gcf/io_json.hpp"
#include "gcf/pd_graph.hpp"
#include "gcf/report.hpp"
#include "gcf/rng.hpp"
#include "gcf/scoring.hpp"

namespace gcf {

enum ExitCode : int { kExitOk = 0, kExitParse = 1, kExitValidation = 2, kExitLimit = 3 };

inline int exit_code_for(const Error& e) {
    switch (e.error_class()) {
        case ErrorClass::parse: return kExitParse;
        case ErrorClass::validation: return kExitValidation;
        case ErrorClass::limit: return kExitLimit;
    }
    return kExitValidation;
}

struct RunConfig {
    std::string graph;
    std::string manifest;
    std::string out_dir = ".";
    double smoothing = 1.0;
    EdgePolicy edges = EdgePolicy::pd_undirected;
    MissingPolicy missing = MissingPolicy::strict;
    bool svg = false;
    std::vector<std::string> subset;
    std::size_t max_undirected = kDefaultMaxUndirected;
};

struct SynthConfig {
    std::string net;
    std::size_t n_obs = 10000;
    std::size_t n_do = 10000;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

namespace detail {
template <class F>
int run_guarded(std::ostream& err, F&& body) {
    try {
        body();
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
}  // namespace detail

// Enumerates, scores and writes scores.csv, do_divergences.csv and
// (optionally) plot.svg into out_dir. Nothing is written unless every
// record scores successfully.
inline int cmd_score(const RunConfig& cfg, std::ostream& err) {
    return detail::run_guarded(err, [&] {
        if (cfg.smoothing < 0.0) throw ValidationError("--smoothing must be >= 0");
        PdGraph graph = load_pd_graph(cfg.graph);
        DagSet dags = enumerate_orientations(graph, cfg.max_undirected);
        if (!cfg.subset.empty()) dags = select_subset(dags, cfg.subset);
        InterventionBundle bundle = load_bundle(cfg.manifest, graph.schema(), cfg.smoothing);
        ScoreReport report = score_set(dags, bundle, {cfg.edges, cfg.missing});

        std::filesystem::path out(cfg.out_dir);
        std::filesystem::create_directories(out);
        io::write_text_file(out / "scores.csv", scores_csv(report.records));
        io::write_text_file(out / "do_divergences.csv", do_divergences_csv(report.do_divergences));
        if (cfg.svg) io::write_text_file(out / "plot.svg", scatter_svg(report.records));
    });
}

// Writes obs.csv, do_<node>_<value>.csv for every node and state, and
// manifest.json. The observational sample uses seed derive_seed(seed, 0);
// the i-th interventional sample (nodes in schema order, states ascending)
// uses derive_seed(seed, i + 1).
inline int cmd_synth(const SynthConfig& cfg, std::ostream& err) {
    return detail::run_guarded(err, [&] {
        if (cfg.n_obs == 0 || cfg.n_do == 0) throw ValidationError("sample counts must be positive");
        BayesNet net = load_bayes_net(cfg.net);
        std::filesystem::path out(cfg.out_dir);
        std::filesystem::create_directories(out);

        auto write_csv = [&](const std::string& name, const Dataset& d) {
            std::ostringstream s;
            write_dataset_csv(s, d);
            io::write_text_file(out / name, s.str());
        };

        InterventionManifest manifest{"obs.csv", {}};
        write_csv("obs.csv", sample(net, cfg.n_obs, derive_seed(cfg.seed, 0)));
        std::uint64_t stream = 1;
        for (const auto& v : net.schema())
            for (int s = 0; s < v.cardinality; ++s) {
                std::string file = "do_" + v.name + "_" + std::to_string(s) + ".csv";
                write_csv(file, sample_do(net, v.name, s, cfg.n_do, derive_seed(cfg.seed, stream++)));
                manifest.interventions.push_back({file, v.name, s});
            }
        io::write_text_file(out / "manifest.json", manifest_to_json(manifest));
    });
}

// One line per acyclic orientation: graph_id, orientation vector, edges.
inline int cmd_enumerate(const std::string& graph_path, std::size_t max_undirected, std::ostream& out,
                         std::ostream& err) {
    return detail::run_guarded(err, [&] {
        DagSet dags = enumerate_orientations(load_pd_graph(graph_path), max_undirected);
        for (const auto& m : dags.members) out << m.graph_id << '\t' << m.orientation << '\t' << edge_list(m.dag) << '\n';
    });
}

}  // namespace gcf

#endif  // GCF_PIPELINE_HPP
