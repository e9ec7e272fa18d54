#ifndef GCF_ERROR_HPP
#define GCF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gcf {

// Broad classes of failure. The CLI maps these onto exit codes.
enum class ErrorClass {
    parse,        // malformed input file
    validation,   // well-formed input that violates a contract
    limit,        // configured resource cap exceeded
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorClass::parse, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorClass::validation, what) {}
};

class EmptyDataset : public ValidationError {
public:
    EmptyDataset() : ValidationError("empty dataset with zero smoothing") {}
};

class UnknownVariable : public ValidationError {
public:
    explicit UnknownVariable(const std::string& name)
        : ValidationError("unknown variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class InvalidState : public ValidationError {
public:
    InvalidState(const std::string& name, int value)
        : ValidationError("state " + std::to_string(value) + " out of range for variable '" + name + "'") {}
};

class SchemaMismatch : public ValidationError {
public:
    explicit SchemaMismatch(const std::string& what) : ValidationError("schema mismatch: " + what) {}
};

class ZeroProbabilityEvidence : public ValidationError {
public:
    ZeroProbabilityEvidence(const std::string& name, int value)
        : ValidationError("evidence " + name + "=" + std::to_string(value) + " has zero probability"),
          variable_(name), value_(value) {}
    const std::string& variable() const noexcept { return variable_; }
    int value() const noexcept { return value_; }

private:
    std::string variable_;
    int value_;
};

class UnknownEdge : public ValidationError {
public:
    UnknownEdge(const std::string& a, const std::string& b)
        : ValidationError("edge " + a + "---" + b + " not present in graph") {}
};

class MissingIntervention : public ValidationError {
public:
    MissingIntervention(const std::string& node, int value)
        : ValidationError("no interventional data for do(" + node + ")=" + std::to_string(value)),
          node_(node), value_(value) {}
    const std::string& node() const noexcept { return node_; }
    int value() const noexcept { return value_; }

private:
    std::string node_;
    int value_;
};

class EnumerationLimit : public Error {
public:
    EnumerationLimit(std::size_t k, std::size_t cap)
        : Error(ErrorClass::limit, "graph has " + std::to_string(k) + " undirected edges, cap is " +
                                       std::to_string(cap)),
          undirected_(k) {}
    std::size_t undirected_edges() const noexcept { return undirected_; }

private:
    std::size_t undirected_;
};

}  // namespace gcf

#endif  // GCF_ERROR_HPP
