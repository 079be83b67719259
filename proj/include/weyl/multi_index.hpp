#pragma once

// Multi-indices over the derivation index set, the graded total order on
// them, lower sets and binomial products.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weyl/scalar.hpp"

namespace weyl {

/// Leading level: a nonnegative integer or minus infinity (the level of 0).
class Level {
public:
    static Level minus_infinity() { return Level{}; }
    static Level of(std::uint64_t n) { return Level{n}; }

    bool is_minus_infinity() const noexcept { return !value_; }
    std::uint64_t value() const { return value_.value(); }

    friend std::strong_ordering operator<=>(const Level& a, const Level& b) {
        if (!a.value_ || !b.value_) return bool(a.value_) <=> bool(b.value_);
        return *a.value_ <=> *b.value_;
    }
    friend bool operator==(const Level&, const Level&) = default;

    std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

private:
    Level() = default;
    explicit Level(std::uint64_t n) : value_(n) {}
    std::optional<std::uint64_t> value_;
};

class MultiIndex {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;

    MultiIndex() = default;
    /// Dense constructor: entry i is the exponent of derivation i.
    static MultiIndex from_dense(std::span<const std::uint32_t> exponents);
    static MultiIndex from_dense(std::initializer_list<std::uint32_t> exponents) {
        return from_dense(std::span<const std::uint32_t>(exponents.begin(), exponents.size()));
    }
    /// delta^(k) scaled by `exponent`.
    static MultiIndex unit(std::uint32_t k, std::uint32_t exponent = 1);

    bool is_zero() const noexcept { return entries_.empty(); }
    std::uint32_t operator[](std::uint32_t i) const;
    std::span<const Entry> entries() const noexcept { return entries_; }

    std::uint64_t level() const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    /// Componentwise difference; requires b <= a componentwise.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
    /// Componentwise <=.
    bool divides(const MultiIndex& other) const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<Entry> entries_;  // sorted by index, exponents > 0
};

/// Level first; at equal level the smallest index where the two differ decides.
std::weak_ordering compare(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return compare(a, b) < 0; }
};

inline Level level(const MultiIndex& a) { return Level::of(a.level()); }

/// {gamma : gamma_i <= alpha_i for all i}, ascending.
std::vector<MultiIndex> lower_set(const MultiIndex& alpha);

/// prod_i C(alpha_i, gamma_i) in the field; gamma must lie in the lower set of alpha.
Scalar binom_product(const MultiIndex& alpha, const MultiIndex& gamma, const FieldSpec& f);

std::set<std::uint32_t> supp(const MultiIndex& alpha);
/// Largest index in the support; nullopt stands for minus infinity.
std::optional<std::uint32_t> top_index(const MultiIndex& alpha);

/// One factor (d_i^power)^exponent of the base-p rewrite of d^(alpha).
struct PAdicFactor {
    std::uint32_t derivation;
    std::uint64_t power;     // p^s
    std::uint32_t exponent;  // base-p digit, 1 <= exponent <= p-1

    friend bool operator==(const PAdicFactor&, const PAdicFactor&) = default;
};

/// d^(alpha) = prod over i and nonzero base-p digits j_s of alpha_i of (d_i^{p^s})^{j_s}.
std::vector<PAdicFactor> p_adic_factor(const MultiIndex& alpha, std::uint64_t p);

/// "d1^2*d3" using derivation names, "1" for the zero multi-index.
std::string to_string(const MultiIndex& alpha, const std::vector<std::string>& names);

}  // namespace weyl
