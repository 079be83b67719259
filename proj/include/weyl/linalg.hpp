#pragma once

// Sparse exact row reduction over a Scalar field.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "weyl/scalar.hpp"

namespace weyl {

/// Sorted by column, no zero entries.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// x + a*y.
SparseVector axpy(const SparseVector& x, const Scalar& a, const SparseVector& y);

/// Row space kept in reduced row-echelon form; the pivot of a row is its
/// first nonzero column. Columns at or past `pivot_limit` never become
/// pivots, which lets callers carry bookkeeping columns alongside the data.
class RowSpace {
public:
    explicit RowSpace(std::size_t pivot_limit = std::numeric_limits<std::size_t>::max())
        : limit_(pivot_limit) {}

    /// Remainder of v after eliminating every pivot column.
    SparseVector reduce(const SparseVector& v) const;
    /// True iff v enlarged the span.
    bool insert(const SparseVector& v);
    bool contains(const SparseVector& v) const;

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t pivot_limit() const noexcept { return limit_; }
    /// pivot column -> row, each row normalised to 1 at its pivot.
    const std::map<std::size_t, SparseVector>& rows() const noexcept { return rows_; }

private:
    std::size_t limit_;
    std::map<std::size_t, SparseVector> rows_;
};

/// Basis (in RREF) of the kernel of the linear map sending domain vector j
/// to images[j]. Kernel vectors are coordinate vectors over the domain.
RowSpace kernel_basis(const std::vector<SparseVector>& images, const FieldSpec& f);

/// Coefficients c with target = sum_k c_k vectors[k], if target is in the span.
std::optional<std::vector<Scalar>> express_in_span(const std::vector<SparseVector>& vectors,
                                                   const SparseVector& target, const FieldSpec& f);

}  // namespace weyl
