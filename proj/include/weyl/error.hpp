#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weyl {

/// Caller violated a precondition (mixed fields, unknown identifiers, bad arguments).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

/// A window was too small to decide a question; the caller must widen it.
class IndeterminateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An arithmetic identity that must hold failed. Indicates a bug, never a math outcome.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Lexing or parsing failure, with the byte offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position, std::vector<std::string> expected = {})
        : std::runtime_error(format(message, position, expected)),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(const std::string& message, std::size_t position,
                              const std::vector<std::string>& expected) {
        std::string out = message + " at offset " + std::to_string(position);
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) out += ", ";
                out += expected[i];
            }
            out += ")";
        }
        return out;
    }

    std::size_t position_;
    std::vector<std::string> expected_;
};

/// Scenario validation failure carrying every violation found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "scenario validation failed:";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }

    std::vector<std::string> violations_;
};

}  // namespace weyl
