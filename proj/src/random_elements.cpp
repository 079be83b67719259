#include "weyl/random_elements.hpp"

#include <algorithm>

namespace weyl {

ElementSampler::ElementSampler(const Context& ctx, std::uint64_t seed, SampleShape shape, std::vector<VarId> vars)
    : ctx_(ctx), shape_(shape), vars_(std::move(vars)), rng_(seed) {
    if (vars_.empty()) vars_ = declared_variables(ctx);
}

long ElementSampler::uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

Scalar ElementSampler::scalar(bool nonzero) {
    const FieldSpec& f = ctx_.field();
    for (;;) {
        Scalar s;
        if (f.is_rational()) {
            s = Scalar::from_fraction(uniform(-shape_.coef_range, shape_.coef_range), uniform(1, 3));
        } else {
            s = Scalar::from_int(uniform(0, static_cast<long>(std::min<std::uint64_t>(f.characteristic() - 1, 1000000))), f);
        }
        if (!nonzero || !s.is_zero()) return s;
    }
}

Monomial ElementSampler::monomial() {
    Monomial m;
    if (vars_.empty()) return m;
    long budget = uniform(0, shape_.max_degree);
    std::vector<VarId> order = vars_;
    std::shuffle(order.begin(), order.end(), rng_);
    for (VarId v : order) {
        if (budget == 0) break;
        long e = uniform(0, budget);
        budget -= e;
        if (e == 0) continue;
        bool negative = ctx_.variable(v).kind == VarKind::laurent && uniform(0, 1) == 1;
        m = m * Monomial::variable(v, static_cast<std::int32_t>(negative ? -e : e));
    }
    return m;
}

MultiIndex ElementSampler::multi_index() {
    const auto n = static_cast<std::uint32_t>(ctx_.derivation_count());
    MultiIndex a;
    if (n == 0) return a;
    long budget = uniform(0, shape_.max_level);
    while (budget > 0) {
        long e = uniform(1, budget);
        a = a + MultiIndex::unit(static_cast<std::uint32_t>(uniform(0, n - 1)), static_cast<std::uint32_t>(e));
        budget -= e;
    }
    return a;
}

AElement ElementSampler::a_element(bool nonzero) {
    for (;;) {
        AElement u;
        auto terms = uniform(1, static_cast<long>(shape_.max_coef_terms));
        for (long i = 0; i < terms; ++i) u.add_term(monomial(), scalar(true));
        if (!nonzero || !u.is_zero()) return u;
    }
}

WeylElement ElementSampler::element(bool nonzero) {
    for (;;) {
        WeylElement x;
        auto terms = uniform(1, static_cast<long>(shape_.max_terms));
        for (long i = 0; i < terms; ++i) x.add_term(multi_index(), a_element(true));
        if (!nonzero || !x.is_zero()) return x;
    }
}

}  // namespace weyl
