#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace ghostgap {

// Error categories double as CLI exit codes: 2 parse, 3 validation,
// 4 budget/cap, 5 internal invariant violation.
enum class ErrorCategory : int {
    parse = 2,
    validation = 3,
    budget = 4,
    internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string message)
        : std::runtime_error(std::move(message)), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

struct ParseError : Error {
    explicit ParseError(std::string message)
        : Error(ErrorCategory::parse, std::move(message)) {}
};

struct ValidationError : Error {
    explicit ValidationError(std::string message)
        : Error(ErrorCategory::validation, std::move(message)) {}
};

struct DomainMismatch : ValidationError {
    explicit DomainMismatch(std::string message)
        : ValidationError(std::move(message)) {}
};

struct EmptyFamily : ValidationError {
    explicit EmptyFamily(std::string message)
        : ValidationError(std::move(message)) {}
};

// Legal input, but the resulting class would have no parameters.
struct EmptyFiberProduct : ValidationError {
    explicit EmptyFiberProduct(std::string message)
        : ValidationError(std::move(message)) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(std::string message)
        : Error(ErrorCategory::budget, std::move(message)) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(std::string message,
                            std::optional<long long> partial_lower_bound = std::nullopt)
        : Error(ErrorCategory::budget, std::move(message)),
          partial_lower_bound(partial_lower_bound) {}

    // Best exact result established before the budget ran out (e.g. a VC
    // dimension lower bound).
    std::optional<long long> partial_lower_bound;
};

struct ArithmeticOverflow : Error {
    explicit ArithmeticOverflow(std::string message)
        : Error(ErrorCategory::budget, std::move(message)) {}
};

// A provably-true invariant failed at runtime. Loudly fatal.
struct InternalError : Error {
    explicit InternalError(std::string message)
        : Error(ErrorCategory::internal, std::move(message)) {}
};

}  // namespace ghostgap
