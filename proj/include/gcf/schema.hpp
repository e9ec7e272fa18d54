#ifndef GCF_SCHEMA_HPP
#define GCF_SCHEMA_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcf/error.hpp"

namespace gcf {

struct Variable {
    std::string name;
    int cardinality = 2;

    friend bool operator==(const Variable&, const Variable&) = default;
};

// An ordered list of categorical variables. Variable i takes states
// {0, ..., cardinality-1}. Cells of a joint table are laid out row-major in
// this order (the last variable varies fastest).
class VariableSchema {
public:
    VariableSchema() = default;

    explicit VariableSchema(std::vector<Variable> vars) : vars_(std::move(vars)) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].name.empty()) throw ValidationError("variable name must be nonempty");
            if (vars_[i].cardinality < 2)
                throw ValidationError("variable '" + vars_[i].name + "' needs cardinality >= 2");
            for (std::size_t j = 0; j < i; ++j)
                if (vars_[j].name == vars_[i].name)
                    throw ValidationError("duplicate variable '" + vars_[i].name + "'");
        }
    }

    std::size_t size() const noexcept { return vars_.size(); }
    bool empty() const noexcept { return vars_.empty(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    auto begin() const noexcept { return vars_.begin(); }
    auto end() const noexcept { return vars_.end(); }

    // Index of `name`, or -1.
    int find(const std::string& name) const noexcept {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    int index_of(const std::string& name) const {
        int i = find(name);
        if (i < 0) throw UnknownVariable(name);
        return i;
    }

    bool contains(const std::string& name) const noexcept { return find(name) >= 0; }

    int cardinality(const std::string& name) const { return vars_[index_of(name)].cardinality; }

    std::size_t cell_count() const noexcept {
        std::size_t n = 1;
        for (const auto& v : vars_) n *= static_cast<std::size_t>(v.cardinality);
        return n;
    }

    // Row-major flat index of a full assignment.
    std::size_t flat_index(std::span<const int> states) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            idx = idx * static_cast<std::size_t>(vars_[i].cardinality) + static_cast<std::size_t>(states[i]);
        return idx;
    }

    // Inverse of flat_index.
    void unflatten(std::size_t idx, std::span<int> states) const {
        for (std::size_t i = vars_.size(); i-- > 0;) {
            auto card = static_cast<std::size_t>(vars_[i].cardinality);
            states[i] = static_cast<int>(idx % card);
            idx /= card;
        }
    }

    // Sub-schema keeping the named variables, in this schema's order.
    VariableSchema select(std::span<const std::string> keep) const {
        for (const auto& k : keep) index_of(k);
        std::vector<Variable> out;
        for (const auto& v : vars_)
            for (const auto& k : keep)
                if (k == v.name) {
                    out.push_back(v);
                    break;
                }
        return VariableSchema(std::move(out));
    }

    VariableSchema without(const std::string& name) const {
        index_of(name);
        std::vector<Variable> out;
        for (const auto& v : vars_)
            if (v.name != name) out.push_back(v);
        return VariableSchema(std::move(out));
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& v : vars_) out.push_back(v.name);
        return out;
    }

    friend bool operator==(const VariableSchema&, const VariableSchema&) = default;

private:
    std::vector<Variable> vars_;
};

// Iterates every full assignment of a schema in row-major order.
class AssignmentCounter {
public:
    explicit AssignmentCounter(const VariableSchema& schema)
        : schema_(&schema), states_(schema.size(), 0) {}

    const std::vector<int>& states() const noexcept { return states_; }

    // Advance; false once every assignment has been visited.
    bool next() {
        for (std::size_t i = states_.size(); i-- > 0;) {
            if (++states_[i] < (*schema_)[i].cardinality) return true;
            states_[i] = 0;
        }
        return false;
    }

private:
    const VariableSchema* schema_;
    std::vector<int> states_;
};

}  // namespace gcf

#endif  // GCF_SCHEMA_HPP
