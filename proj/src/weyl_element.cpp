#include "weyl/weyl_element.hpp"

#include <algorithm>

#include "weyl/error.hpp"

namespace weyl {

WeylElement WeylElement::term(MultiIndex alpha, AElement u) {
    WeylElement x;
    if (!u.is_zero()) x.terms_.emplace(std::move(alpha), std::move(u));
    return x;
}

const AElement* WeylElement::find(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? nullptr : &it->second;
}

void WeylElement::add_term(const MultiIndex& alpha, const AElement& u) {
    if (u.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, u);
    if (inserted) return;
    it->second += u;
    if (it->second.is_zero()) terms_.erase(it);
}

WeylElement& WeylElement::operator+=(const WeylElement& rhs) {
    for (const auto& [a, u] : rhs.terms_) add_term(a, u);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& rhs) {
    for (const auto& [a, u] : rhs.terms_) add_term(a, -u);
    return *this;
}

WeylElement WeylElement::operator-() const {
    WeylElement out = *this;
    for (auto& [a, u] : out.terms_) u = -u;
    return out;
}

WeylElement operator*(const Scalar& c, const WeylElement& x) {
    WeylElement out;
    if (c.is_zero()) return out;
    for (const auto& [a, u] : x.terms_) out.terms_.emplace_hint(out.terms_.end(), a, c * u);
    return out;
}

WeylElement operator*(const AElement& u, const WeylElement& x) {
    WeylElement out;
    for (const auto& [a, v] : x.terms_) out.add_term(a, u * v);
    return out;
}

namespace {

void check_indices(const Context& ctx, const MultiIndex& alpha) {
    if (!alpha.is_zero() && alpha.entries().back().first >= ctx.derivation_count())
        throw UsageError("multi-index refers to derivation " +
                         std::to_string(alpha.entries().back().first) + " not in this context");
}

// d^(g)(v) for every g in `lower` (ascending), each obtained from its
// predecessor g - delta^(top(g)) by one more derivation.
std::vector<AElement> derivative_table(const Context& ctx, const std::vector<MultiIndex>& lower,
                                       const AElement& v) {
    std::vector<AElement> table(lower.size());
    table[0] = v;
    for (std::size_t k = 1; k < lower.size(); ++k) {
        const auto& g = lower[k];
        auto top = g.entries().back().first;
        MultiIndex parent = g - MultiIndex::unit(top);
        auto it = std::lower_bound(lower.begin(), lower.begin() + static_cast<std::ptrdiff_t>(k), parent,
                                   MultiIndexOrder{});
        const AElement& prev = table[static_cast<std::size_t>(it - lower.begin())];
        if (!prev.is_zero()) table[k] = apply_derivation(ctx, top, prev);
    }
    return table;
}

}  // namespace

AElement apply_derivative_power(const Context& ctx, const MultiIndex& alpha, const AElement& v,
                                bool lowest_first) {
    check_indices(ctx, alpha);
    AElement out = v;
    auto entries = alpha.entries();
    auto step = [&](const MultiIndex::Entry& e) {
        for (std::uint32_t r = 0; r < e.second && !out.is_zero(); ++r)
            out = apply_derivation(ctx, e.first, out);
    };
    if (lowest_first)
        std::for_each(entries.begin(), entries.end(), step);
    else
        std::for_each(entries.rbegin(), entries.rend(), step);
    return out;
}

WeylElement w_mul(const Context& ctx, const WeylElement& x, const WeylElement& y) {
    WeylElement out;
    const FieldSpec& f = ctx.field();
    for (const auto& [alpha, u] : x.terms()) {
        check_indices(ctx, alpha);
        std::vector<MultiIndex> lower = lower_set(alpha);
        std::vector<Scalar> binoms;
        binoms.reserve(lower.size());
        for (const auto& g : lower) binoms.push_back(binom_product(alpha, g, f));
        for (const auto& [beta, v] : y.terms()) {
            check_indices(ctx, beta);
            std::vector<AElement> table = derivative_table(ctx, lower, v);
            MultiIndex ab = alpha + beta;
            for (std::size_t k = 0; k < lower.size(); ++k) {
                if (binoms[k].is_zero() || table[k].is_zero()) continue;
                out.add_term(ab - lower[k], u * (binoms[k] * table[k]));
            }
        }
    }
    return out;
}

WeylElement lie_bracket(const Context& ctx, const WeylElement& x, const WeylElement& y) {
    return w_mul(ctx, x, y) - w_mul(ctx, y, x);
}

AElement act(const Context& ctx, const WeylElement& x, const AElement& a) {
    AElement out;
    for (const auto& [alpha, u] : x.terms()) out += u * apply_derivative_power(ctx, alpha, a);
    return out;
}

WeylElement w_pow(const Context& ctx, const WeylElement& x, std::uint64_t n) {
    WeylElement result = WeylElement::identity(ctx.field());
    WeylElement base = x;
    while (n) {
        if (n & 1) result = w_mul(ctx, result, base);
        n >>= 1;
        if (n) base = w_mul(ctx, base, base);
    }
    return result;
}

LeadingData leading(const WeylElement& x) {
    LeadingData d;
    if (x.is_zero()) return d;
    const auto& [beta, u] = *x.terms().rbegin();
    d.ld = std::make_pair(beta, u);
    d.deg = beta;
    d.lev = Level::of(beta.level());
    return d;
}

std::set<MultiIndex, MultiIndexOrder> support(const WeylElement& x) {
    std::set<MultiIndex, MultiIndexOrder> s;
    for (const auto& [a, u] : x.terms()) s.insert(s.end(), a);
    return s;
}

SplitConstant split_constant(const WeylElement& y) {
    SplitConstant out;
    for (const auto& [a, u] : y.terms()) {
        if (a.is_zero())
            out.y0 = u;
        else
            out.y_star.add_term(a, u);
    }
    return out;
}

std::vector<std::string> derivation_names(const Context& ctx) {
    std::vector<std::string> names;
    for (const auto& d : ctx.derivations()) names.push_back(d.name());
    return names;
}

std::string to_string(const Context& ctx, const WeylElement& x) {
    auto names = derivation_names(ctx);
    std::vector<std::string> parts;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        const auto& [alpha, u] = *it;
        if (alpha.is_zero()) {
            for (auto t = u.terms().rbegin(); t != u.terms().rend(); ++t)
                parts.push_back(term_to_string(ctx, t->second, t->first));
            continue;
        }
        std::string d = to_string(alpha, names);
        if (u.size() > 1) {
            parts.push_back("(" + to_string(ctx, u) + ")*" + d);
            continue;
        }
        const auto& [m, c] = *u.terms().begin();
        std::string coef = term_to_string(ctx, c, m);
        if (coef == "1")
            parts.push_back(d);
        else if (coef == "-1")
            parts.push_back("-" + d);
        else
            parts.push_back(coef + "*" + d);
    }
    return join_signed(parts);
}

}  // namespace weyl
