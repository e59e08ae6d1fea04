#pragma once

#include <stdexcept>
#include <string>

namespace rsimple {

// Budgeted searches refuse instead of thrashing.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : std::logic_error {
    explicit PreconditionViolated(const std::string& what) : std::logic_error(what) {}
};

struct InvalidKind : std::runtime_error {
    explicit InvalidKind(const std::string& what) : std::runtime_error(what) {}
};

struct FieldTooSmall : std::runtime_error {
    explicit FieldTooSmall(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rsimple
