#pragma once

// Finite truncation windows and their enumerated bases.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "weyl/linalg.hpp"
#include "weyl/weyl_element.hpp"

namespace weyl {

struct ExponentBounds {
    std::int32_t lo = 0;
    std::int32_t hi = 0;
    friend bool operator==(const ExponentBounds&, const ExponentBounds&) = default;
};

/// Enumerated basis of monomials u_m d^(alpha); position is the coordinate index.
class Basis {
public:
    using Item = std::pair<MultiIndex, Monomial>;

    explicit Basis(std::vector<Item> items);

    std::size_t size() const noexcept { return items_.size(); }
    const Item& operator[](std::size_t i) const { return items_.at(i); }
    const std::vector<Item>& items() const noexcept { return items_; }
    std::optional<std::size_t> index_of(const MultiIndex& alpha, const Monomial& m) const;

    WeylElement element(std::size_t i, const FieldSpec& f) const;
    /// nullopt if x has a term outside the basis.
    std::optional<SparseVector> coordinates(const WeylElement& x) const;
    WeylElement from_coordinates(const SparseVector& v) const;

private:
    struct ItemLess {
        bool operator()(const Item& a, const Item& b) const;
    };
    std::vector<Item> items_;
    std::map<Item, std::size_t, ItemLess> index_;
};

/// Per-variable exponent bounds plus a bound on the level |alpha|.
/// Variables without explicit bounds are confined to exponent 0.
class Window {
public:
    static constexpr std::size_t default_cap = 5000;

    Window() = default;
    Window(std::map<VarId, ExponentBounds> bounds, std::uint32_t max_level, std::size_t cap = default_cap)
        : bounds_(std::move(bounds)), max_level_(max_level), cap_(cap) {}

    const std::map<VarId, ExponentBounds>& bounds() const noexcept { return bounds_; }
    ExponentBounds bounds(VarId v) const;
    std::uint32_t max_level() const noexcept { return max_level_; }
    std::size_t cap() const noexcept { return cap_; }

    /// Throws UsageError when bounds contradict variable kinds or lo > hi.
    void validate(const Context& ctx) const;

    /// Shrinks every bound toward zero by the fraction `margin` in [0, 1].
    Window interior(const mpq_class& margin) const;

    bool contains(const Monomial& m) const;
    bool contains(const AElement& u) const;
    bool contains(const WeylElement& x) const;

    /// Window monomials of A, ascending monomial order.
    std::vector<Monomial> a_monomials() const;
    /// All alpha with |alpha| <= max_level over the context's derivations, ascending.
    std::vector<MultiIndex> multi_indices(const Context& ctx) const;

    /// Degree-0 basis (the window of A). Throws UsageError past the cap.
    std::shared_ptr<const Basis> a_basis() const;
    /// Ordered by degree first, then monomial.
    std::shared_ptr<const Basis> weyl_basis(const Context& ctx) const;

private:
    std::map<VarId, ExponentBounds> bounds_;
    std::uint32_t max_level_ = 0;
    std::size_t cap_ = default_cap;
};

/// A subspace of the span of an enumerated basis, in reduced row-echelon form.
struct SubspaceBasis {
    std::shared_ptr<const Basis> basis;
    RowSpace rows;

    std::size_t dimension() const noexcept { return rows.rank(); }
    std::vector<WeylElement> elements() const;
    /// nullopt when x leaves the basis.
    std::optional<bool> contains(const WeylElement& x) const;
};

}  // namespace weyl
