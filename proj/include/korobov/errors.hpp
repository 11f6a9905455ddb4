#pragma once

#include <stdexcept>
#include <string>

namespace korobov {

/// Invalid input or infeasible query. Maps to CLI exit code 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A (notion, setting, s, t) cell that has no known characterization.
class UnsupportedQuery : public DomainError {
public:
    UnsupportedQuery(const std::string& what, std::string nearest)
        : DomainError(what), nearest_(std::move(nearest)) {}

    const std::string& nearest_covered_cell() const noexcept { return nearest_; }

private:
    std::string nearest_;
};

/// A configured resource cap was exceeded. Maps to CLI exit code 2.
/// Never a silent truncation: callers get this instead of a partial answer.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace korobov
