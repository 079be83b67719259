#pragma once

// The commutative coefficient algebra A: sparse polynomial / Laurent
// polynomial arithmetic over an exact field, and derivations of A given by
// their images on generators.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weyl/scalar.hpp"

namespace weyl {

using VarId = std::uint32_t;

enum class VarKind { polynomial, laurent };

struct VariableSpec {
    std::string name;
    VarKind kind = VarKind::polynomial;
    /// Position in declaration order; this is the total order on generators.
    std::uint32_t declaration_index = 0;
    /// Set for members x1, x2, ... of a shift-rule family.
    std::optional<std::string> family;
    std::uint32_t family_member = 0;
    /// Created on demand rather than declared.
    bool implicit = false;
};

/// Exponent vector of a monomial of A. Zero exponents are never stored.
class Monomial {
public:
    using Entry = std::pair<VarId, std::int32_t>;

    Monomial() = default;
    static Monomial variable(VarId v, std::int32_t exponent = 1);

    bool is_one() const noexcept { return entries_.empty(); }
    std::int32_t exponent(VarId v) const;
    std::span<const Entry> entries() const noexcept { return entries_; }
    /// Sum of absolute exponents.
    std::int64_t abs_degree() const;
    /// Copy with the exponent of v shifted by delta.
    Monomial shifted(VarId v, std::int32_t delta) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Entry> entries_;  // sorted by VarId
};

/// Graded order: absolute degree first, then declaration-order
/// lexicographic comparison of exponents.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Element of A. A finite map monomial -> nonzero scalar.
class AElement {
public:
    using Terms = std::map<Monomial, Scalar, MonomialOrder>;

    AElement() = default;
    static AElement constant(const Scalar& c);
    static AElement one(const FieldSpec& f) { return constant(Scalar::one(f)); }
    static AElement term(const Scalar& c, Monomial m);

    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    /// Coefficient of m, or null when m is not in the support.
    const Scalar* find(const Monomial& m) const;

    /// Adds c*m, dropping the entry if it cancels.
    void add_term(const Monomial& m, const Scalar& c);

    AElement& operator+=(const AElement& rhs);
    AElement& operator-=(const AElement& rhs);
    AElement operator-() const;

    friend AElement operator+(AElement a, const AElement& b) { return a += b; }
    friend AElement operator-(AElement a, const AElement& b) { return a -= b; }
    friend AElement operator*(const AElement& a, const AElement& b);
    friend AElement operator*(const Scalar& c, const AElement& u);
    friend bool operator==(const AElement&, const AElement&) = default;

private:
    Terms terms_;
};

inline AElement a_add(const AElement& u, const AElement& v) { return u + v; }
inline AElement a_mul(const AElement& u, const AElement& v) { return u * v; }
inline AElement a_scale(const Scalar& c, const AElement& u) { return c * u; }

struct ShiftRule {
    std::string family;
    /// Image of x_i is x_{i+step}.
    std::uint32_t step = 1;
};

class Context;

/// A derivation of A determined by its values on generators and extended by
/// the Leibniz rule.
class Derivation {
public:
    Derivation(std::string name, std::map<VarId, AElement> images,
               std::optional<ShiftRule> shift = std::nullopt)
        : name_(std::move(name)), images_(std::move(images)), shift_(std::move(shift)) {}

    const std::string& name() const noexcept { return name_; }
    const std::map<VarId, AElement>& images() const noexcept { return images_; }
    const std::optional<ShiftRule>& shift() const noexcept { return shift_; }

    /// d(x_v). May create the next member of a shift family in ctx.
    AElement image(const Context& ctx, VarId v) const;
    bool covers(const Context& ctx, VarId v) const;

private:
    std::string name_;
    std::map<VarId, AElement> images_;
    std::optional<ShiftRule> shift_;
};

/// Field, generators and derivations. Shift families grow on demand
/// (thread-safe, bounded by the variable cap); everything else is fixed once
/// the context has been built.
class Context {
public:
    static constexpr std::size_t default_variable_cap = 64;

    explicit Context(FieldSpec field, std::size_t variable_cap = default_variable_cap);
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t variable_cap() const noexcept { return cap_; }

    VarId add_variable(const std::string& name, VarKind kind);
    /// Registers a derivation; a shift rule adopts existing variables named
    /// <family><digits> as family members.
    std::size_t add_derivation(Derivation d);

    std::size_t variable_count() const noexcept { return count_.load(std::memory_order_acquire); }
    const VariableSpec& variable(VarId v) const;
    /// Declared variable or a (possibly new) shift-family member.
    std::optional<VarId> find_variable(const std::string& name) const;
    /// Member `index` of a shift family, creating it and any missing
    /// predecessors past the current maximum.
    VarId family_member(const std::string& family, std::uint32_t index) const;

    std::size_t derivation_count() const noexcept { return derivations_.size(); }
    const Derivation& derivation(std::size_t i) const { return derivations_.at(i); }
    const std::vector<Derivation>& derivations() const noexcept { return derivations_; }
    std::optional<std::size_t> find_derivation(const std::string& name) const;

    Scalar zero() const { return Scalar::zero(field_); }
    Scalar one() const { return Scalar::one(field_); }

private:
    VarId push_variable(VariableSpec spec) const;

    FieldSpec field_;
    std::size_t cap_;
    std::unique_ptr<VariableSpec[]> vars_;
    mutable std::atomic<std::size_t> count_{0};
    mutable std::mutex mutex_;
    mutable std::map<std::string, VarId> by_name_;
    mutable std::map<std::string, std::map<std::uint32_t, VarId>> families_;
    std::map<std::string, VarKind> family_kind_;
    std::vector<Derivation> derivations_;
};

AElement apply_derivation(const Context& ctx, const Derivation& d, const AElement& u);
AElement apply_derivation(const Context& ctx, std::size_t d, const AElement& u);

/// True iff [d1, d2] vanishes on every listed generator. The commutator of
/// two derivations is a derivation, so this decides commutativity on the
/// subalgebra they generate.
bool check_commuting(const Context& ctx, const Derivation& d1, const Derivation& d2,
                     std::span<const VarId> vars);

/// All currently known generators, in declaration order.
std::vector<VarId> all_variables(const Context& ctx);
/// Generators that were declared, excluding on-demand family members.
std::vector<VarId> declared_variables(const Context& ctx);

std::string to_string(const Context& ctx, const Monomial& m);
/// Terms in descending monomial order, "0" for zero.
std::string to_string(const Context& ctx, const AElement& u);
/// Signed text of one term c*m, e.g. "-3*t^2", "1/2", "t".
std::string term_to_string(const Context& ctx, const Scalar& c, const Monomial& m);
/// Joins signed term strings with " + " / " - ".
std::string join_signed(const std::vector<std::string>& parts);

}  // namespace weyl
