#ifndef GCF_SCORING_HPP
#define GCF_SCORING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcf/bayes_net.hpp"
#include "gcf/dataset.hpp"
#include "gcf/error.hpp"
#include "gcf/graph.hpp"
#include "gcf/pd_graph.hpp"
#include "gcf/prob_table.hpp"

namespace gcf {

// KL values below this are treated as exact zero by gf(): a saturated model
// reproduces the empirical joint only up to floating-point rounding.
inline constexpr double kKlRoundoffFloor = 1e-13;

enum class MissingPolicy { strict, renormalize };
enum class EdgePolicy { pd_undirected, all_edges };

using Intervention = std::pair<std::string, int>;  // (node, value)

// Observational dataset plus one dataset per do(node)=value.
struct InterventionBundle {
    Dataset observational;
    std::map<Intervention, Dataset> interventional;
    double smoothing = 0.0;

    void validate() const {
        if (smoothing < 0.0) throw ValidationError("smoothing must be >= 0");
        const auto& schema = observational.schema();
        for (const auto& [key, data] : interventional) {
            const auto& [node, value] = key;
            int idx = schema.index_of(node);
            if (value < 0 || value >= schema[idx].cardinality) throw InvalidState(node, value);
            if (!(data.schema() == schema))
                throw SchemaMismatch("interventional dataset for do(" + node + ")=" + std::to_string(value) +
                                     " does not share the observational schema");
            for (std::size_t r = 0; r < data.rows(); ++r)
                if (data.row(r)[idx] != value)
                    throw ValidationError("interventional dataset for do(" + node + ")=" + std::to_string(value) +
                                          " has row " + std::to_string(r + 1) + " with " + node + "=" +
                                          std::to_string(data.row(r)[idx]));
        }
    }
};

// The distributions do-divergences are computed from: the observational
// joint, and for each (node, value) a table over every other variable.
struct DoDistributions {
    ProbTable observational;
    std::map<Intervention, ProbTable> interventional;
};

inline DoDistributions estimate_distributions(const InterventionBundle& bundle) {
    bundle.validate();
    DoDistributions out{empirical_from_dataset(bundle.observational, bundle.smoothing), {}};
    const auto& schema = bundle.observational.schema();
    for (const auto& [key, data] : bundle.interventional) {
        auto rest = schema.without(key.first).names();
        if (rest.empty()) {
            out.interventional.emplace(key, ProbTable());
            continue;
        }
        out.interventional.emplace(key, empirical_from_dataset(data.project(rest), bundle.smoothing));
    }
    return out;
}

// Exact distributions implied by a known network.
inline DoDistributions exact_distributions(const BayesNet& net) {
    DoDistributions out{joint(net), {}};
    for (const auto& v : net.schema())
        for (int s = 0; s < v.cardinality; ++s) out.interventional.emplace(Intervention{v.name, s}, do_intervene(net, v.name, s));
    return out;
}

// GF(G) = ln(1 / KL(P~ || P_G)), with P_G the projection of P~ onto the DAG.
// +inf when the fit is exact, -inf when KL is infinite.
inline double gf(const Dag& dag, const ProbTable& observed) {
    if (!(observed.schema() == dag.schema())) throw SchemaMismatch("observational table and DAG schemas differ");
    double kl = kl_divergence(observed, joint(fit_cpts(dag, observed)));
    if (kl <= kKlRoundoffFloor) return kInf;
    if (std::isinf(kl)) return -kInf;
    return -std::log(kl);
}

inline double gf(const Dag& dag, const Dataset& observational, double smoothing = 0.0) {
    if (!(observational.schema() == dag.schema())) throw SchemaMismatch("dataset and DAG schemas differ");
    return gf(dag, empirical_from_dataset(observational, smoothing));
}

struct DoTerm {
    int value = 0;
    double divergence = 0.0;  // D_a
    double weight = 0.0;      // P~(a), renormalized under MissingPolicy::renormalize
    bool covered = true;
};

struct NodeDoDivergence {
    std::string node;
    std::vector<DoTerm> terms;
    double value = 0.0;  // sum_a weight * D_a
};

// D_node = sum_a P~(a) KL(P~(rest | a) || P~(rest | do(node)=a)).
inline NodeDoDivergence do_divergence_detail(const std::string& node, const DoDistributions& dist,
                                             MissingPolicy policy = MissingPolicy::strict) {
    const auto& schema = dist.observational.schema();
    const int card = schema[schema.index_of(node)].cardinality;
    ProbTable marginal = marginalize(dist.observational, {node});

    NodeDoDivergence out{node, {}, 0.0};
    double covered_mass = 0.0;
    for (int a = 0; a < card; ++a) {
        DoTerm term{a, 0.0, marginal[static_cast<std::size_t>(a)], true};
        auto it = dist.interventional.find({node, a});
        if (term.weight > 0.0) {
            if (it == dist.interventional.end()) {
                if (policy == MissingPolicy::strict) throw MissingIntervention(node, a);
                term.covered = false;
            } else if (schema.size() > 1) {
                term.divergence = kl_divergence(condition(dist.observational, node, a), it->second);
            }
        } else {
            term.covered = it != dist.interventional.end();
        }
        if (term.covered) covered_mass += term.weight;
        out.terms.push_back(term);
    }
    if (!(covered_mass > 0.0)) throw MissingIntervention(node, 0);

    for (auto& t : out.terms) {
        if (!t.covered) {
            t.weight = 0.0;
            continue;
        }
        if (policy == MissingPolicy::renormalize) t.weight /= covered_mass;
        if (t.weight > 0.0) out.value += t.weight * t.divergence;
    }
    return out;
}

inline double do_divergence(const std::string& node, const DoDistributions& dist,
                            MissingPolicy policy = MissingPolicy::strict) {
    return do_divergence_detail(node, dist, policy).value;
}

inline double do_divergence(const std::string& node, const InterventionBundle& bundle,
                            MissingPolicy policy = MissingPolicy::strict) {
    return do_divergence(node, estimate_distributions(bundle), policy);
}

using DoDivergenceMap = std::map<std::string, double>;

// Do-divergences for every node that has at least one interventional table.
// Depends on the data only, never on a candidate graph.
inline std::vector<NodeDoDivergence> do_divergence_details(const DoDistributions& dist,
                                                           MissingPolicy policy = MissingPolicy::strict) {
    std::vector<NodeDoDivergence> out;
    for (const auto& v : dist.observational.schema()) {
        bool any = false;
        for (int s = 0; s < v.cardinality && !any; ++s) any = dist.interventional.count({v.name, s}) > 0;
        if (any) out.push_back(do_divergence_detail(v.name, dist, policy));
    }
    return out;
}

inline DoDivergenceMap do_divergence_map(const DoDistributions& dist, MissingPolicy policy = MissingPolicy::strict) {
    DoDivergenceMap out;
    for (const auto& d : do_divergence_details(dist, policy)) out.emplace(d.node, d.value);
    return out;
}

struct Distance {
    double value = 0.0;
    bool indeterminate = false;  // |inf - inf|, reported as 0
};

inline Distance dodiv_distance(double da, double db) {
    if (std::isinf(da) && std::isinf(db)) return {0.0, true};
    return {std::abs(db - da), false};
}

namespace detail {
inline double lookup(const DoDivergenceMap& dmap, const std::string& node) {
    auto it = dmap.find(node);
    if (it == dmap.end()) throw MissingIntervention(node, 0);
    return it->second;
}
}  // namespace detail

// +1 if the edge's head has the larger do-divergence (ties included), else -1.
inline int edge_sign(const Dag& dag, const UndirectedEdge& edge, const DoDivergenceMap& dmap) {
    auto directed = dag.oriented(edge);
    if (!directed) throw UnknownEdge(edge.a, edge.b);
    double tail = detail::lookup(dmap, directed->from);
    double head = detail::lookup(dmap, directed->to);
    return head < tail ? -1 : +1;
}

struct EdgeDetail {
    Edge edge;
    int sign = 1;
    double distance = 0.0;
    bool indeterminate = false;
};

struct GcfResult {
    double value = 1.0;
    bool no_causal_signal = false;   // every distance was zero; value reported as 0
    bool infinite_distance = false;  // value is the mean sign over infinite distances
    bool indeterminate = false;      // some |inf - inf| distance was taken as 0
    std::vector<EdgeDetail> edges;
};

inline std::vector<EdgeDetail> signed_distances(const Dag& dag, const std::vector<UndirectedEdge>& edges,
                                                const DoDivergenceMap& dmap) {
    std::vector<EdgeDetail> out;
    for (const auto& e : edges) {
        int sign = edge_sign(dag, e, dmap);
        Edge directed = *dag.oriented(e);
        Distance d = dodiv_distance(detail::lookup(dmap, e.a), detail::lookup(dmap, e.b));
        out.push_back({directed, sign, d.value, d.indeterminate});
    }
    return out;
}

// Relative GCF: sum_k sign_k d_k / sum_k d_k over the scored edges; 1 for an
// empty edge list. Infinite distances dominate: the result is then the mean
// sign over the infinite-distance edges.
inline GcfResult gcf_detail(const Dag& dag, const std::vector<UndirectedEdge>& scored_edges,
                            const DoDivergenceMap& dmap) {
    GcfResult out;
    out.edges = signed_distances(dag, scored_edges, dmap);
    if (out.edges.empty()) return out;

    double num = 0.0, den = 0.0;
    int inf_sum = 0, inf_count = 0;
    for (const auto& e : out.edges) {
        out.indeterminate = out.indeterminate || e.indeterminate;
        if (std::isinf(e.distance)) {
            inf_sum += e.sign;
            ++inf_count;
            continue;
        }
        num += e.sign * e.distance;
        den += e.distance;
    }
    if (inf_count > 0) {
        out.infinite_distance = true;
        out.value = static_cast<double>(inf_sum) / inf_count;
    } else if (den == 0.0) {
        out.no_causal_signal = true;
        out.value = 0.0;
    } else {
        out.value = std::clamp(num / den, -1.0, 1.0);
    }
    return out;
}

inline double gcf_relative(const Dag& dag, const std::vector<UndirectedEdge>& scored_edges, const DoDivergenceMap& dmap) {
    return gcf_detail(dag, scored_edges, dmap).value;
}

// Absolute GCF: unnormalized signed sum over every edge of the DAG. NaN when
// +inf and -inf terms meet.
inline double gcf_abs(const Dag& dag, const DoDivergenceMap& dmap) {
    std::vector<UndirectedEdge> all;
    for (const auto& e : dag.edges()) all.push_back(UndirectedEdge::of(e));
    double sum = 0.0;
    for (const auto& e : signed_distances(dag, all, dmap)) sum += e.sign * e.distance;
    return sum;
}

struct ScoreOptions {
    EdgePolicy edges = EdgePolicy::pd_undirected;
    MissingPolicy missing = MissingPolicy::strict;
};

struct ScoreRecord {
    std::string graph_id;
    std::string orientation;
    Dag dag;
    double gf = 0.0;
    double gcf = 1.0;
    std::optional<double> gcf_abs;  // absent when some endpoint has no do-divergence
    std::vector<EdgeDetail> edges;  // the edges gcf was computed over
    DoDivergenceMap do_divergences;
    std::vector<std::string> flags;
};

struct ScoreReport {
    std::vector<NodeDoDivergence> do_divergences;
    std::vector<ScoreRecord> records;
};

inline std::vector<UndirectedEdge> scored_edges_for(const DagSet& set, const Dag& dag, EdgePolicy policy) {
    if (policy == EdgePolicy::pd_undirected && set.source_undirected) return *set.source_undirected;
    std::vector<UndirectedEdge> all;
    for (const auto& e : dag.edges()) all.push_back(UndirectedEdge::of(e));
    return all;
}

// Scores every member against one shared do-divergence map. A singleton set
// gets GCF = 1 whatever the data say.
inline ScoreReport score_set(const DagSet& dags, const DoDistributions& dist, const ScoreOptions& opts = {}) {
    ScoreReport report;
    report.do_divergences = do_divergence_details(dist, opts.missing);
    DoDivergenceMap dmap;
    for (const auto& d : report.do_divergences) dmap.emplace(d.node, d.value);

    for (const auto& m : dags.members) {
        try {
            ScoreRecord rec{m.graph_id, m.orientation, m.dag, gf(m.dag, dist.observational), 1.0, std::nullopt,
                            {}, dmap, {}};
            std::vector<UndirectedEdge> scored;
            if (dags.size() > 1) scored = scored_edges_for(dags, m.dag, opts.edges);
            GcfResult g = gcf_detail(m.dag, scored, dmap);
            rec.gcf = g.value;
            rec.edges = std::move(g.edges);
            if (g.no_causal_signal) rec.flags.push_back("no_causal_signal");
            if (g.infinite_distance) rec.flags.push_back("infinite_distance");
            if (g.indeterminate) rec.flags.push_back("indeterminate_distance");

            bool covered = std::all_of(m.dag.edges().begin(), m.dag.edges().end(), [&](const Edge& e) {
                return dmap.count(e.from) && dmap.count(e.to);
            });
            if (covered) {
                rec.gcf_abs = gcf_abs(m.dag, dmap);
                if (std::isnan(*rec.gcf_abs)) rec.flags.push_back("indeterminate_gcf_abs");
            } else {
                rec.flags.push_back("gcf_abs_unavailable");
            }
            report.records.push_back(std::move(rec));
        } catch (const ValidationError& e) {
            throw ValidationError(m.graph_id + ": " + e.what());
        }
    }
    return report;
}

inline ScoreReport score_set(const DagSet& dags, const InterventionBundle& bundle, const ScoreOptions& opts = {}) {
    return score_set(dags, estimate_distributions(bundle), opts);
}

}  // namespace gcf

#endif  // GCF_SCORING_HPP
