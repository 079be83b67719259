#pragma once

// Elements of A[D] = A (x) F[D] in the normal form sum_alpha u_alpha d^(alpha),
// the Weyl-type product, the induced bracket and the action on A.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weyl/coefficient_algebra.hpp"
#include "weyl/multi_index.hpp"

namespace weyl {

class WeylElement {
public:
    using Terms = std::map<MultiIndex, AElement, MultiIndexOrder>;

    WeylElement() = default;
    /// u (x) d^(0).
    static WeylElement from_a(AElement u) { return term(MultiIndex{}, std::move(u)); }
    static WeylElement term(MultiIndex alpha, AElement u);
    /// 1 (x) d^(alpha).
    static WeylElement derivative(const FieldSpec& f, MultiIndex alpha) {
        return term(std::move(alpha), AElement::one(f));
    }
    static WeylElement identity(const FieldSpec& f) { return from_a(AElement::one(f)); }

    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const AElement* find(const MultiIndex& alpha) const;
    /// True iff every term has degree 0, i.e. the element lies in A.
    bool in_a() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero()); }

    void add_term(const MultiIndex& alpha, const AElement& u);

    WeylElement& operator+=(const WeylElement& rhs);
    WeylElement& operator-=(const WeylElement& rhs);
    WeylElement operator-() const;

    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(const Scalar& c, const WeylElement& x);
    /// Left multiplication by u (x) 1, which needs no normal ordering.
    friend WeylElement operator*(const AElement& u, const WeylElement& x);
    friend bool operator==(const WeylElement&, const WeylElement&) = default;

private:
    Terms terms_;
};

/// d^(alpha)(v) as a composition of single derivations. By default the
/// highest index is applied first; `lowest_first` reverses that.
AElement apply_derivative_power(const Context& ctx, const MultiIndex& alpha, const AElement& v,
                                bool lowest_first = false);

/// The normal-ordered product:
/// (u d^(a)) (v d^(b)) = u sum_{g <= a} C(a, g) d^(g)(v) d^(a+b-g).
WeylElement w_mul(const Context& ctx, const WeylElement& x, const WeylElement& y);
WeylElement lie_bracket(const Context& ctx, const WeylElement& x, const WeylElement& y);
/// Action on A: sum_alpha u_alpha d^(alpha)(a).
AElement act(const Context& ctx, const WeylElement& x, const AElement& a);

/// Integer power by repeated squaring.
WeylElement w_pow(const Context& ctx, const WeylElement& x, std::uint64_t n);

struct LeadingData {
    std::optional<std::pair<MultiIndex, AElement>> ld;
    std::optional<MultiIndex> deg;
    Level lev = Level::minus_infinity();
};

LeadingData leading(const WeylElement& x);
std::set<MultiIndex, MultiIndexOrder> support(const WeylElement& x);

struct SplitConstant {
    WeylElement y_star;  // every term of nonzero degree
    AElement y0;         // the degree-0 coefficient
};

SplitConstant split_constant(const WeylElement& y);

std::vector<std::string> derivation_names(const Context& ctx);

/// Descending order on degrees; a coefficient with more than one term is
/// parenthesised, e.g. "(t^2 + 1)*d1^2 + 3*d2 + t".
std::string to_string(const Context& ctx, const WeylElement& x);

}  // namespace weyl
