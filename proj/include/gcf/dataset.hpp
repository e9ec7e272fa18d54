#ifndef GCF_DATASET_HPP
#define GCF_DATASET_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gcf/error.hpp"
#include "gcf/prob_table.hpp"
#include "gcf/schema.hpp"

namespace gcf {

// Complete categorical observations, stored row-major with one column per
// schema variable.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(VariableSchema schema) : schema_(std::move(schema)) {}

    const VariableSchema& schema() const noexcept { return schema_; }
    std::size_t rows() const noexcept { return schema_.empty() ? 0 : cells_.size() / schema_.size(); }
    bool empty() const noexcept { return cells_.empty(); }

    std::span<const int> row(std::size_t r) const {
        return std::span<const int>(cells_).subspan(r * schema_.size(), schema_.size());
    }

    void add_row(std::span<const int> values) {
        if (values.size() != schema_.size())
            throw ValidationError("row has " + std::to_string(values.size()) + " values, expected " +
                                  std::to_string(schema_.size()));
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] < 0 || values[i] >= schema_[i].cardinality) throw InvalidState(schema_[i].name, values[i]);
        cells_.insert(cells_.end(), values.begin(), values.end());
    }
    void add_row(std::initializer_list<int> values) {
        add_row(std::span<const int>(values.begin(), values.size()));
    }

    // Column subset, in this dataset's schema order.
    Dataset project(std::span<const std::string> keep) const {
        Dataset out(schema_.select(keep));
        std::vector<int> pos;
        for (const auto& v : out.schema()) pos.push_back(schema_.index_of(v.name));
        out.cells_.reserve(rows() * pos.size());
        for (std::size_t r = 0; r < rows(); ++r) {
            auto src = row(r);
            for (int p : pos) out.cells_.push_back(src[p]);
        }
        return out;
    }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    VariableSchema schema_;
    std::vector<int> cells_;
};

// Plug-in estimate (count(x) + smoothing) / (N + smoothing * |cells|).
inline ProbTable empirical_from_dataset(const Dataset& data, double smoothing = 0.0) {
    if (smoothing < 0.0) throw ValidationError("smoothing must be >= 0");
    if (data.empty() && smoothing == 0.0) throw EmptyDataset();
    const auto& schema = data.schema();
    std::vector<double> counts(schema.cell_count(), smoothing);
    for (std::size_t r = 0; r < data.rows(); ++r) counts[schema.flat_index(data.row(r))] += 1.0;
    return ProbTable::normalized(schema, std::move(counts));
}

// Reads a dataset CSV: header of variable names (any order, exactly the
// schema's variables), then one integer state per cell. Columns are
// reordered into schema order.
inline Dataset read_dataset_csv(std::istream& in, const VariableSchema& schema, const std::string& source = "<csv>") {
    auto fail = [&](std::size_t line, std::size_t col, const std::string& msg) -> ParseError {
        return ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    };
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!line.empty() && line.back() == ',') out.emplace_back();
        return out;
    };
    auto chomp = [](std::string& s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    };

    std::string line;
    if (!std::getline(in, line)) throw fail(1, 1, "missing header line");
    chomp(line);
    auto header = split(line);
    if (header.size() != schema.size())
        throw fail(1, 1, "header has " + std::to_string(header.size()) + " columns, expected " +
                             std::to_string(schema.size()));
    std::vector<int> column_var(header.size());
    std::vector<bool> seen(schema.size(), false);
    for (std::size_t c = 0; c < header.size(); ++c) {
        int v = schema.find(header[c]);
        if (v < 0) throw fail(1, c + 1, "unknown variable '" + header[c] + "'");
        if (seen[v]) throw fail(1, c + 1, "duplicate column '" + header[c] + "'");
        seen[v] = true;
        column_var[c] = v;
    }

    Dataset data(schema);
    std::vector<int> values(schema.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        chomp(line);
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != header.size())
            throw fail(lineno, 1, "expected " + std::to_string(header.size()) + " fields, got " +
                                      std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto& cell = cells[c];
            int value = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
                throw fail(lineno, c + 1, "not an integer: '" + cell + "'");
            const auto& var = schema[column_var[c]];
            if (value < 0 || value >= var.cardinality)
                throw fail(lineno, c + 1, "state " + cell + " out of range for '" + var.name + "'");
            values[column_var[c]] = value;
        }
        data.add_row(values);
    }
    return data;
}

inline Dataset read_dataset_csv(const std::string& path, const VariableSchema& schema) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return read_dataset_csv(in, schema, path);
}

inline void write_dataset_csv(std::ostream& out, const Dataset& data) {
    const auto& schema = data.schema();
    for (std::size_t i = 0; i < schema.size(); ++i) out << (i ? "," : "") << schema[i].name;
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        auto row = data.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

}  // namespace gcf

#endif  // GCF_DATASET_HPP
