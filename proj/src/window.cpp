#include "weyl/window.hpp"

#include <algorithm>

#include "weyl/error.hpp"

namespace weyl {

bool Basis::ItemLess::operator()(const Item& a, const Item& b) const {
    auto c = compare(a.first, b.first);
    if (c != 0) return c < 0;
    return MonomialOrder{}(a.second, b.second);
}

Basis::Basis(std::vector<Item> items) : items_(std::move(items)) {
    for (std::size_t i = 0; i < items_.size(); ++i)
        if (!index_.emplace(items_[i], i).second) throw UsageError("duplicate basis element");
}

std::optional<std::size_t> Basis::index_of(const MultiIndex& alpha, const Monomial& m) const {
    auto it = index_.find(Item{alpha, m});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

WeylElement Basis::element(std::size_t i, const FieldSpec& f) const {
    const auto& [alpha, m] = items_.at(i);
    return WeylElement::term(alpha, AElement::term(Scalar::one(f), m));
}

std::optional<SparseVector> Basis::coordinates(const WeylElement& x) const {
    SparseVector v;
    for (const auto& [alpha, u] : x.terms()) {
        for (const auto& [m, c] : u.terms()) {
            auto idx = index_of(alpha, m);
            if (!idx) return std::nullopt;
            v.emplace_back(*idx, c);
        }
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

WeylElement Basis::from_coordinates(const SparseVector& v) const {
    WeylElement x;
    for (const auto& [i, c] : v) {
        const auto& [alpha, m] = items_.at(i);
        x.add_term(alpha, AElement::term(c, m));
    }
    return x;
}

ExponentBounds Window::bounds(VarId v) const {
    auto it = bounds_.find(v);
    return it == bounds_.end() ? ExponentBounds{} : it->second;
}

void Window::validate(const Context& ctx) const {
    for (const auto& [v, b] : bounds_) {
        const auto& spec = ctx.variable(v);
        if (b.lo > b.hi) throw UsageError("window bounds for " + spec.name + " have lo > hi");
        if (b.hi < 0) throw UsageError("window upper bound for " + spec.name + " must be >= 0");
        if (b.lo > 0) throw UsageError("window lower bound for " + spec.name + " must be <= 0");
        if (b.lo < 0 && spec.kind != VarKind::laurent)
            throw UsageError("negative window bound for polynomial variable " + spec.name);
    }
}

Window Window::interior(const mpq_class& margin) const {
    if (margin < 0 || margin > 1) throw UsageError("margin must lie in [0, 1]");
    mpq_class keep = 1 - margin;
    auto shrink = [&](std::int64_t x) {
        mpq_class q = keep * x;
        mpz_class r;
        // toward zero
        mpz_tdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return r.get_si();
    };
    std::map<VarId, ExponentBounds> b;
    for (const auto& [v, e] : bounds_)
        b[v] = {static_cast<std::int32_t>(shrink(e.lo)), static_cast<std::int32_t>(shrink(e.hi))};
    return Window(std::move(b), static_cast<std::uint32_t>(shrink(max_level_)), cap_);
}

bool Window::contains(const Monomial& m) const {
    for (const auto& [v, e] : m.entries()) {
        auto b = bounds(v);
        if (e < b.lo || e > b.hi) return false;
    }
    return true;
}

bool Window::contains(const AElement& u) const {
    for (const auto& [m, c] : u.terms())
        if (!contains(m)) return false;
    return true;
}

bool Window::contains(const WeylElement& x) const {
    for (const auto& [alpha, u] : x.terms())
        if (alpha.level() > max_level_ || !contains(u)) return false;
    return true;
}

std::vector<Monomial> Window::a_monomials() const {
    std::vector<Monomial> out{Monomial{}};
    for (const auto& [v, b] : bounds_) {
        std::vector<Monomial> next;
        for (const auto& m : out)
            for (std::int32_t e = b.lo; e <= b.hi; ++e) {
                next.push_back(m * Monomial::variable(v, e));
                if (next.size() > cap_) throw UsageError("window exceeds the basis cap of " + std::to_string(cap_));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

std::vector<MultiIndex> Window::multi_indices(const Context& ctx) const {
    const auto n = static_cast<std::uint32_t>(ctx.derivation_count());
    std::vector<MultiIndex> out{MultiIndex{}};
    // Extend one derivation at a time with every exponent keeping |alpha| <= max_level.
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<MultiIndex> next;
        for (const auto& a : out)
            for (std::uint32_t e = 0; a.level() + e <= max_level_; ++e) {
                next.push_back(a + MultiIndex::unit(i, e));
                if (next.size() > cap_) throw UsageError("window exceeds the basis cap of " + std::to_string(cap_));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), MultiIndexOrder{});
    return out;
}

std::shared_ptr<const Basis> Window::a_basis() const {
    std::vector<Basis::Item> items;
    for (auto& m : a_monomials()) items.emplace_back(MultiIndex{}, std::move(m));
    return std::make_shared<const Basis>(std::move(items));
}

std::shared_ptr<const Basis> Window::weyl_basis(const Context& ctx) const {
    auto monos = a_monomials();
    auto alphas = multi_indices(ctx);
    if (monos.size() * alphas.size() > cap_)
        throw UsageError("window exceeds the basis cap of " + std::to_string(cap_) + " (" +
                         std::to_string(monos.size() * alphas.size()) + " elements)");
    std::vector<Basis::Item> items;
    items.reserve(monos.size() * alphas.size());
    for (const auto& a : alphas)
        for (const auto& m : monos) items.emplace_back(a, m);
    return std::make_shared<const Basis>(std::move(items));
}

std::vector<WeylElement> SubspaceBasis::elements() const {
    std::vector<WeylElement> out;
    for (const auto& [p, row] : rows.rows()) out.push_back(basis->from_coordinates(row));
    return out;
}

std::optional<bool> SubspaceBasis::contains(const WeylElement& x) const {
    auto v = basis->coordinates(x);
    if (!v) return std::nullopt;
    return rows.contains(*v);
}

}  // namespace weyl
