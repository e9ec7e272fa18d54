#ifndef GCF_BAYES_NET_HPP
#define GCF_BAYES_NET_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gcf/dataset.hpp"
#include "gcf/error.hpp"
#include "gcf/graph.hpp"
#include "gcf/prob_table.hpp"
#include "gcf/rng.hpp"

namespace gcf {

// Conditional table P(child | parents). Rows are indexed row-major over the
// parent configuration, in the order `parents` lists them; each row is a
// distribution over the child's states.
struct Cpt {
    std::string child;
    std::vector<std::string> parents;
    std::vector<std::vector<double>> rows;
};

class BayesNet {
public:
    BayesNet() = default;

    BayesNet(Dag dag, std::vector<Cpt> cpts, double row_tolerance = kNormTolerance) : dag_(std::move(dag)) {
        const auto& schema = dag_.schema();
        if (cpts.size() != schema.size())
            throw ValidationError("need one CPT per node: got " + std::to_string(cpts.size()) + " for " +
                                  std::to_string(schema.size()) + " nodes");
        cpts_.resize(schema.size());
        std::vector<bool> filled(schema.size(), false);
        for (auto& cpt : cpts) {
            int idx = schema.index_of(cpt.child);
            if (filled[idx]) throw ValidationError("duplicate CPT for '" + cpt.child + "'");
            filled[idx] = true;

            auto expected = dag_.parents(cpt.child);
            std::vector<std::string> given = cpt.parents;
            std::sort(given.begin(), given.end());
            std::sort(expected.begin(), expected.end());
            if (given != expected) throw ValidationError("CPT parents of '" + cpt.child + "' do not match the graph");

            std::size_t n_rows = 1;
            for (const auto& p : cpt.parents) n_rows *= static_cast<std::size_t>(schema.cardinality(p));
            if (cpt.rows.size() != n_rows)
                throw ValidationError("CPT of '" + cpt.child + "' has " + std::to_string(cpt.rows.size()) +
                                      " rows, expected " + std::to_string(n_rows));
            int card = schema[idx].cardinality;
            for (const auto& row : cpt.rows) {
                if (row.size() != static_cast<std::size_t>(card))
                    throw ValidationError("CPT row of '" + cpt.child + "' has wrong length");
                double total = 0.0;
                for (double p : row) {
                    if (!(p >= 0.0) || !std::isfinite(p))
                        throw ValidationError("CPT of '" + cpt.child + "' has a negative or non-finite entry");
                    total += p;
                }
                if (std::abs(total - 1.0) > row_tolerance)
                    throw ValidationError("CPT row of '" + cpt.child + "' sums to " + std::to_string(total));
            }
            cpts_[idx] = std::move(cpt);
        }
        families_.resize(schema.size());
        for (std::size_t i = 0; i < schema.size(); ++i)
            for (const auto& p : cpts_[i].parents) families_[i].push_back(schema.index_of(p));
    }

    const Dag& dag() const noexcept { return dag_; }
    const VariableSchema& schema() const noexcept { return dag_.schema(); }
    const std::vector<Cpt>& cpts() const noexcept { return cpts_; }
    const Cpt& cpt(const std::string& node) const { return cpts_[schema().index_of(node)]; }

    // P(x_node | parents) under a full assignment of schema states.
    double factor(std::size_t node, std::span<const int> states) const {
        std::size_t row = 0;
        for (int p : families_[node])
            row = row * static_cast<std::size_t>(schema()[p].cardinality) + static_cast<std::size_t>(states[p]);
        return cpts_[node].rows[row][states[node]];
    }

    // Row of the node's CPT selected by the parent states inside `states`.
    const std::vector<double>& row_for(std::size_t node, std::span<const int> states) const {
        std::size_t row = 0;
        for (int p : families_[node])
            row = row * static_cast<std::size_t>(schema()[p].cardinality) + static_cast<std::size_t>(states[p]);
        return cpts_[node].rows[row];
    }

private:
    Dag dag_;
    std::vector<Cpt> cpts_;                  // schema order
    std::vector<std::vector<int>> families_;  // parent indices per node, CPT order
};

// Full joint P_G(x.) = prod_i P(x_i | pa_i).
inline ProbTable joint(const BayesNet& net) {
    const auto& schema = net.schema();
    std::vector<double> w(schema.cell_count());
    AssignmentCounter it(schema);
    std::size_t flat = 0;
    do {
        double p = 1.0;
        for (std::size_t i = 0; i < schema.size(); ++i) p *= net.factor(i, it.states());
        w[flat++] = p;
    } while (it.next());
    return ProbTable::normalized(schema, std::move(w));
}

namespace detail {
inline int check_clamp(const VariableSchema& schema, const std::string& node, int value) {
    int idx = schema.index_of(node);
    if (value < 0 || value >= schema[idx].cardinality) throw InvalidState(node, value);
    return idx;
}
}  // namespace detail

// P(rest | do(node) = value) by truncated factorization: the node's own
// factor is dropped and its state is clamped in every other factor.
inline ProbTable do_intervene(const BayesNet& net, const std::string& node, int value) {
    const auto& schema = net.schema();
    const int idx = detail::check_clamp(schema, node, value);
    VariableSchema rest = schema.without(node);

    std::vector<double> w(rest.cell_count());
    std::vector<int> full(schema.size());
    AssignmentCounter it(rest);
    std::size_t flat = 0;
    do {
        for (std::size_t i = 0, j = 0; i < schema.size(); ++i)
            full[i] = static_cast<int>(i) == idx ? value : it.states()[j++];
        double p = 1.0;
        for (std::size_t i = 0; i < schema.size(); ++i)
            if (static_cast<int>(i) != idx) p *= net.factor(i, full);
        w[flat++] = p;
    } while (it.next());
    return ProbTable::normalized(std::move(rest), std::move(w));
}

// Maximum-likelihood CPTs from counts:
// (count(child=c, pa=pi) + s) / (count(pa=pi) + s * card(child)).
// Parent configurations with no mass (and s = 0) get a uniform row.
inline BayesNet fit_cpts(const Dag& dag, const Dataset& data, double smoothing = 0.0) {
    if (!(data.schema() == dag.schema())) throw SchemaMismatch("dataset and DAG schemas differ");
    if (smoothing < 0.0) throw ValidationError("smoothing must be >= 0");
    const auto& schema = dag.schema();
    std::vector<Cpt> cpts;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        Cpt cpt{schema[i].name, dag.parents(schema[i].name), {}};
        std::vector<int> pidx;
        std::size_t n_rows = 1;
        for (const auto& p : cpt.parents) {
            pidx.push_back(schema.index_of(p));
            n_rows *= static_cast<std::size_t>(schema.cardinality(p));
        }
        const int card = schema[i].cardinality;
        std::vector<std::vector<double>> counts(n_rows, std::vector<double>(card, 0.0));
        for (std::size_t r = 0; r < data.rows(); ++r) {
            auto row = data.row(r);
            std::size_t k = 0;
            for (int p : pidx) k = k * static_cast<std::size_t>(schema[p].cardinality) + row[p];
            counts[k][row[i]] += 1.0;
        }
        for (auto& c : counts) {
            double total = 0.0;
            for (double v : c) total += v;
            double denom = total + smoothing * card;
            for (double& v : c) v = denom > 0.0 ? (v + smoothing) / denom : 1.0 / card;
        }
        cpt.rows = std::move(counts);
        cpts.push_back(std::move(cpt));
    }
    return BayesNet(dag, std::move(cpts));
}

// Projection of a joint table onto the DAG: each CPT row is
// P(child, pa) / P(pa), uniform where P(pa) = 0. Applied to an empirical
// table with zero smoothing this coincides with the count-based fit.
inline BayesNet fit_cpts(const Dag& dag, const ProbTable& table) {
    if (!(table.schema() == dag.schema())) throw SchemaMismatch("table and DAG schemas differ");
    const auto& schema = dag.schema();
    std::vector<Cpt> cpts;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        Cpt cpt{schema[i].name, dag.parents(schema[i].name), {}};
        std::vector<int> pidx;
        std::size_t n_rows = 1;
        for (const auto& p : cpt.parents) {
            pidx.push_back(schema.index_of(p));
            n_rows *= static_cast<std::size_t>(schema.cardinality(p));
        }
        const int card = schema[i].cardinality;
        std::vector<std::vector<double>> mass(n_rows, std::vector<double>(card, 0.0));
        AssignmentCounter it(schema);
        std::size_t flat = 0;
        do {
            const auto& s = it.states();
            std::size_t k = 0;
            for (int p : pidx) k = k * static_cast<std::size_t>(schema[p].cardinality) + s[p];
            mass[k][s[i]] += table[flat++];
        } while (it.next());
        for (auto& m : mass) {
            double total = 0.0;
            for (double v : m) total += v;
            for (double& v : m) v = total > 0.0 ? v / total : 1.0 / card;
        }
        cpt.rows = std::move(mass);
        cpts.push_back(std::move(cpt));
    }
    return BayesNet(dag, std::move(cpts));
}

namespace detail {
// Inverse CDF over states in ascending order. Rounding slack at the top end
// falls to the last state with positive mass.
inline int draw_state(const std::vector<double>& row, double u) {
    double cum = 0.0;
    int last_positive = 0;
    for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s] > 0.0) last_positive = static_cast<int>(s);
        cum += row[s];
        if (u < cum) return static_cast<int>(s);
    }
    return last_positive;
}

// Forward sampling; `clamp_idx` < 0 means no intervention. The node at
// topological position t draws from stream t (see rng.hpp); a clamped node
// draws nothing.
inline Dataset forward_sample(const BayesNet& net, std::size_t n, std::uint64_t seed, int clamp_idx, int clamp_value) {
    const auto& schema = net.schema();
    const auto& order = net.dag().topological_order();
    std::vector<RandomStream> streams;
    streams.reserve(order.size());
    for (std::size_t t = 0; t < order.size(); ++t) streams.emplace_back(seed, t);

    Dataset data(schema);
    std::vector<int> row(schema.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t t = 0; t < order.size(); ++t) {
            int node = order[t];
            if (node == clamp_idx) {
                row[node] = clamp_value;
                continue;
            }
            row[node] = draw_state(net.row_for(node, row), streams[t].uniform());
        }
        data.add_row(row);
    }
    return data;
}
}  // namespace detail

inline Dataset sample(const BayesNet& net, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ValidationError("sample size must be positive");
    return detail::forward_sample(net, n, seed, -1, 0);
}

// Samples the mutilated net; the clamped column is constant.
inline Dataset sample_do(const BayesNet& net, const std::string& node, int value, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ValidationError("sample size must be positive");
    int idx = detail::check_clamp(net.schema(), node, value);
    return detail::forward_sample(net, n, seed, idx, value);
}

}  // namespace gcf

#endif  // GCF_BAYES_NET_HPP
