#pragma once

// Seeded random sampling of scalars, A-elements and A[D]-elements.

#include <cstdint>
#include <random>
#include <vector>

#include "weyl/weyl_element.hpp"

namespace weyl {

struct SampleShape {
    std::uint32_t max_level = 3;      // bound on |alpha|
    std::int32_t max_degree = 4;      // bound on the absolute degree of coefficient monomials
    std::size_t max_terms = 3;        // distinct degrees per WeylElement
    std::size_t max_coef_terms = 3;   // monomials per coefficient
    long coef_range = 3;              // numerators in [-coef_range, coef_range]
};

class ElementSampler {
public:
    /// Samples over `vars`, or over the declared variables when empty.
    ElementSampler(const Context& ctx, std::uint64_t seed, SampleShape shape = {}, std::vector<VarId> vars = {});

    Scalar scalar(bool nonzero = false);
    Monomial monomial();
    MultiIndex multi_index();
    AElement a_element(bool nonzero = false);
    WeylElement element(bool nonzero = false);

    std::mt19937_64& engine() noexcept { return rng_; }
    const SampleShape& shape() const noexcept { return shape_; }

private:
    long uniform(long lo, long hi);

    const Context& ctx_;
    SampleShape shape_;
    std::vector<VarId> vars_;
    std::mt19937_64 rng_;
};

}  // namespace weyl
