#include "weyl/linalg.hpp"

#include <algorithm>

namespace weyl {

SparseVector axpy(const SparseVector& x, const Scalar& a, const SparseVector& y) {
    if (a.is_zero()) return x;
    SparseVector out;
    out.reserve(x.size() + y.size());
    auto i = x.begin(), j = y.begin();
    while (i != x.end() || j != y.end()) {
        if (j == y.end() || (i != x.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == x.end() || j->first < i->first) {
            out.emplace_back(j->first, a * j->second);
            ++j;
        } else {
            Scalar s = i->second + a * j->second;
            if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVector RowSpace::reduce(const SparseVector& v) const {
    SparseVector r = v;
    std::size_t k = 0;
    while (k < r.size() && r[k].first < limit_) {
        auto it = rows_.find(r[k].first);
        if (it == rows_.end()) {
            ++k;
            continue;
        }
        std::size_t col = r[k].first;
        r = axpy(r, -r[k].second, it->second);
        // Entries before col are untouched; col itself has been cleared.
        while (k < r.size() && r[k].first <= col) ++k;
    }
    return r;
}

bool RowSpace::insert(const SparseVector& v) {
    SparseVector r = reduce(v);
    if (r.empty() || r.front().first >= limit_) return false;
    std::size_t pivot = r.front().first;
    Scalar inv = r.front().second.inverse();
    for (auto& [c, s] : r) s *= inv;
    for (auto& [p, row] : rows_) {
        for (const auto& [c, s] : row) {
            if (c == pivot) {
                row = axpy(row, -s, r);
                break;
            }
            if (c > pivot) break;
        }
    }
    rows_.emplace(pivot, std::move(r));
    return true;
}

bool RowSpace::contains(const SparseVector& v) const {
    SparseVector r = reduce(v);
    return r.empty() || r.front().first >= limit_;
}

RowSpace kernel_basis(const std::vector<SparseVector>& images, const FieldSpec& f) {
    std::size_t width = 0;
    for (const auto& img : images)
        if (!img.empty()) width = std::max(width, img.back().first + 1);
    // Row-reduce [image | e_j]; a row whose image part vanishes after
    // reduction carries a kernel vector in its bookkeeping part.
    RowSpace image_rows(width);
    RowSpace kernel;
    for (std::size_t j = 0; j < images.size(); ++j) {
        SparseVector v = images[j];
        v.emplace_back(width + j, Scalar::one(f));
        SparseVector r = image_rows.reduce(v);
        if (!r.empty() && r.front().first < width) {
            image_rows.insert(v);
            continue;
        }
        SparseVector k;
        k.reserve(r.size());
        for (auto& [c, s] : r) k.emplace_back(c - width, std::move(s));
        kernel.insert(k);
    }
    return kernel;
}

std::optional<std::vector<Scalar>> express_in_span(const std::vector<SparseVector>& vectors,
                                                   const SparseVector& target, const FieldSpec& f) {
    std::size_t width = 0;
    for (const auto& v : vectors)
        if (!v.empty()) width = std::max(width, v.back().first + 1);
    if (!target.empty()) width = std::max(width, target.back().first + 1);
    RowSpace rows(width);
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        SparseVector v = vectors[k];
        v.emplace_back(width + k, Scalar::one(f));
        rows.insert(v);
    }
    SparseVector r = rows.reduce(target);
    if (!r.empty() && r.front().first < width) return std::nullopt;
    std::vector<Scalar> coef(vectors.size(), Scalar::zero(f));
    for (const auto& [c, s] : r) coef[c - width] = -s;
    return coef;
}

}  // namespace weyl
