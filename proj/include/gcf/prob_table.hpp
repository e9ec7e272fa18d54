#ifndef GCF_PROB_TABLE_HPP
#define GCF_PROB_TABLE_HPP

#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcf/error.hpp"
#include "gcf/schema.hpp"

namespace gcf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNormTolerance = 1e-9;

// Dense joint distribution over a VariableSchema, row-major.
class ProbTable {
public:
    ProbTable() : weights_{1.0} {}

    // Takes already-normalized weights; throws if they are not.
    ProbTable(VariableSchema schema, std::vector<double> weights)
        : schema_(std::move(schema)), weights_(std::move(weights)) {
        if (weights_.size() != schema_.cell_count())
            throw ValidationError("table has " + std::to_string(weights_.size()) + " cells, schema needs " +
                                  std::to_string(schema_.cell_count()));
        double total = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("table weights must be finite and >= 0");
            total += w;
        }
        if (std::abs(total - 1.0) > kNormTolerance)
            throw ValidationError("table weights sum to " + std::to_string(total) + ", expected 1");
    }

    // Normalizes nonnegative weights (which must have positive mass).
    static ProbTable normalized(VariableSchema schema, std::vector<double> weights) {
        double total = std::accumulate(weights.begin(), weights.end(), 0.0);
        if (!(total > 0.0)) throw ValidationError("cannot normalize a table with zero total mass");
        for (double& w : weights) w /= total;
        return ProbTable(std::move(schema), std::move(weights));
    }

    static ProbTable uniform(VariableSchema schema) {
        std::size_t n = schema.cell_count();
        return ProbTable(std::move(schema), std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    const VariableSchema& schema() const noexcept { return schema_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t flat) const { return weights_[flat]; }
    double at(std::span<const int> states) const { return weights_[schema_.flat_index(states)]; }
    double at(std::initializer_list<int> states) const {
        return at(std::span<const int>(states.begin(), states.size()));
    }

private:
    VariableSchema schema_;
    std::vector<double> weights_;
};

// Sums out every variable not in `keep`.
inline ProbTable marginalize(const ProbTable& t, std::span<const std::string> keep) {
    if (keep.empty()) throw ValidationError("marginalize needs at least one variable to keep");
    const auto& schema = t.schema();
    VariableSchema out_schema = schema.select(keep);

    std::vector<int> pos;
    for (const auto& v : out_schema) pos.push_back(schema.index_of(v.name));

    std::vector<double> out(out_schema.cell_count(), 0.0);
    std::vector<int> sub(pos.size());
    AssignmentCounter it(schema);
    std::size_t flat = 0;
    do {
        for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = it.states()[pos[i]];
        out[out_schema.flat_index(sub)] += t[flat++];
    } while (it.next());
    return ProbTable::normalized(std::move(out_schema), std::move(out));
}

inline ProbTable marginalize(const ProbTable& t, std::initializer_list<std::string> keep) {
    return marginalize(t, std::span<const std::string>(keep.begin(), keep.size()));
}

// Restricts to the slice variable == value and renormalizes over the others.
inline ProbTable condition(const ProbTable& t, const std::string& variable, int value) {
    const auto& schema = t.schema();
    int idx = schema.index_of(variable);
    if (value < 0 || value >= schema[idx].cardinality) throw InvalidState(variable, value);

    VariableSchema out_schema = schema.without(variable);
    std::vector<double> out(out_schema.cell_count(), 0.0);
    std::vector<int> sub(out_schema.size());
    AssignmentCounter it(schema);
    std::size_t flat = 0;
    double mass = 0.0;
    do {
        const auto& s = it.states();
        if (s[idx] == value) {
            for (std::size_t i = 0, j = 0; i < s.size(); ++i)
                if (static_cast<int>(i) != idx) sub[j++] = s[i];
            out[out_schema.flat_index(sub)] += t[flat];
            mass += t[flat];
        }
        ++flat;
    } while (it.next());
    if (!(mass > 0.0)) throw ZeroProbabilityEvidence(variable, value);
    return ProbTable::normalized(std::move(out_schema), std::move(out));
}

namespace detail {
inline void require_same_schema(const ProbTable& a, const ProbTable& b) {
    if (!(a.schema() == b.schema())) throw SchemaMismatch("divergence operands have different schemas");
}
}  // namespace detail

// Kullback-Leibler divergence in nats. 0 ln(0/q) = 0; p > 0 with q = 0 gives +inf.
inline double kl_divergence(const ProbTable& po, const ProbTable& pe) {
    detail::require_same_schema(po, pe);
    double sum = 0.0;
    for (std::size_t i = 0; i < po.size(); ++i) {
        double p = po[i], q = pe[i];
        if (p == 0.0) continue;
        if (q == 0.0) return kInf;
        sum += p * std::log(p / q);
    }
    return sum > 0.0 ? sum : 0.0;
}

// Pearson chi-squared divergence, sum PO^2/PE - 1.
inline double pearson_divergence(const ProbTable& po, const ProbTable& pe) {
    detail::require_same_schema(po, pe);
    double sum = 0.0;
    for (std::size_t i = 0; i < po.size(); ++i) {
        double p = po[i], q = pe[i];
        if (p == 0.0) {
            sum += q;  // (0-q)^2/q
            continue;
        }
        if (q == 0.0) return kInf;
        // (p-q)^2/q rather than p^2/q - 1 keeps the identity case exact.
        sum += (p - q) * (p - q) / q;
    }
    return sum;
}

inline double euclidean_distance_sq(const ProbTable& po, const ProbTable& pe) {
    detail::require_same_schema(po, pe);
    double sum = 0.0;
    for (std::size_t i = 0; i < po.size(); ++i) sum += (po[i] - pe[i]) * (po[i] - pe[i]);
    return sum;
}

inline double l1_distance(const ProbTable& a, const ProbTable& b) {
    detail::require_same_schema(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum;
}

}  // namespace gcf

#endif  // GCF_PROB_TABLE_HPP
