#include <doctest.h>

#include <random>

#include "support.hpp"
#include "weyl/error.hpp"
#include "weyl/multi_index.hpp"

using namespace weyl;
using namespace weyl::test;

namespace {

const FieldSpec Q = FieldSpec::rational();

MultiIndex random_index(std::mt19937_64& rng, std::uint32_t n, std::uint32_t max_entry) {
    std::vector<std::uint32_t> e(n);
    for (auto& x : e) x = std::uniform_int_distribution<std::uint32_t>(0, max_entry)(rng);
    return MultiIndex::from_dense(std::span<const std::uint32_t>(e));
}

// Direct reading of the order: level first, then the first differing index.
int oracle_compare(const MultiIndex& a, const MultiIndex& b, std::uint32_t n) {
    if (a.level() != b.level()) return a.level() < b.level() ? -1 : 1;
    for (std::uint32_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int sign(std::weak_ordering o) { return o < 0 ? -1 : o > 0 ? 1 : 0; }

}  // namespace

TEST_CASE("level") {
    CHECK(MultiIndex::from_dense({2, 0, 3}).level() == 5);
    CHECK(MultiIndex{}.level() == 0);
    CHECK(level(MultiIndex::unit(4)) == Level::of(1));
    CHECK(Level::minus_infinity() < Level::of(0));
    CHECK(Level::minus_infinity().to_string() == "-inf");
    CHECK(MultiIndex::from_dense({0, 0}).is_zero());
}

TEST_CASE("graded order") {
    CHECK(compare(MultiIndex::from_dense({0, 1}), MultiIndex::from_dense({1, 0})) < 0);
    CHECK(compare(MultiIndex::from_dense({2}), MultiIndex::from_dense({0, 0, 3})) < 0);
    auto a = MultiIndex::from_dense({1, 2});
    CHECK(compare(a, a) == 0);
    CHECK(compare(MultiIndex{}, MultiIndex::unit(0)) < 0);
}

TEST_CASE("lower sets") {
    auto set = lower_set(MultiIndex::from_dense({1, 1}));
    std::vector<MultiIndex> expect{MultiIndex{}, MultiIndex::from_dense({0, 1}), MultiIndex::from_dense({1, 0}),
                                   MultiIndex::from_dense({1, 1})};
    CHECK(set == expect);
    CHECK(lower_set(MultiIndex{}) == std::vector<MultiIndex>{MultiIndex{}});
    CHECK(lower_set(MultiIndex::unit(0, 2)) ==
          std::vector<MultiIndex>{MultiIndex{}, MultiIndex::unit(0), MultiIndex::unit(0, 2)});
}

TEST_CASE("binomial products") {
    CHECK(binom_product(MultiIndex::from_dense({2, 1}), MultiIndex::from_dense({1, 1}), Q) == Scalar::from_int(2, Q));
    CHECK(binom_product(MultiIndex::from_dense({3, 4}), MultiIndex{}, Q).is_one());
    CHECK(binom_product(MultiIndex::unit(0, 5), MultiIndex::unit(0, 2), FieldSpec::prime(5)).is_zero());
    CHECK_THROWS_AS(binom_product(MultiIndex::unit(0, 1), MultiIndex::unit(1, 1), Q), UsageError);
    CHECK_THROWS_AS(binom_product(MultiIndex::unit(0, 1), MultiIndex::unit(0, 2), Q), UsageError);
}

TEST_CASE("support and top index") {
    auto a = MultiIndex::from_dense({0, 2, 0, 1});
    CHECK(supp(a) == std::set<std::uint32_t>{1, 3});
    CHECK(top_index(a) == 3u);
    CHECK(supp(MultiIndex{}).empty());
    CHECK_FALSE(top_index(MultiIndex{}).has_value());
    CHECK(top_index(MultiIndex::unit(6)) == 6u);
}

TEST_CASE("subtraction and divisibility") {
    auto a = MultiIndex::from_dense({2, 1});
    CHECK(a - MultiIndex::unit(0) == MultiIndex::from_dense({1, 1}));
    CHECK_THROWS_AS(a - MultiIndex::unit(1, 2), UsageError);
    CHECK(MultiIndex::unit(0).divides(a));
    CHECK_FALSE(MultiIndex::unit(1, 2).divides(a));
}

TEST_CASE("p-adic factorization") {
    CHECK(p_adic_factor(MultiIndex::unit(0, 3), 2) == std::vector<PAdicFactor>{{0, 1, 1}, {0, 2, 1}});
    for (std::uint64_t p : {2u, 3u, 5u})
        CHECK(p_adic_factor(MultiIndex::unit(0, static_cast<std::uint32_t>(p)), p) ==
              std::vector<PAdicFactor>{{0, p, 1}});
    CHECK(p_adic_factor(MultiIndex::unit(0, 6), 5) == std::vector<PAdicFactor>{{0, 1, 1}, {0, 5, 1}});
    CHECK(p_adic_factor(MultiIndex{}, 3).empty());
    CHECK(p_adic_factor(MultiIndex::from_dense({4, 7}), 3) ==
          std::vector<PAdicFactor>{{0, 1, 1}, {0, 3, 1}, {1, 1, 1}, {1, 3, 2}});
}

TEST_CASE("text form") {
    std::vector<std::string> names{"d1", "d2", "d3"};
    CHECK(to_string(MultiIndex::from_dense({2, 0, 1}), names) == "d1^2*d3");
    CHECK(to_string(MultiIndex{}, names) == "1");
}

TEST_CASE("property: compare is a total order extending the level") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_index(rng, 3, 3), b = random_index(rng, 3, 3), c = random_index(rng, 3, 3);
        CHECK(sign(compare(a, b)) == oracle_compare(a, b, 3));
        CHECK(sign(compare(a, b)) == -sign(compare(b, a)));
        CHECK((compare(a, b) == 0) == (a == b));
        if (compare(a, b) < 0 && compare(b, c) < 0) CHECK(compare(a, c) < 0);
        if (a.level() < b.level()) CHECK(compare(a, b) < 0);
    }
}

TEST_CASE("property: lower sets are complete, sorted and downward closed") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_index(rng, 3, 3);
        auto set = lower_set(a);
        std::size_t expect = 1;
        for (std::uint32_t i = 0; i < 3; ++i) expect *= a[i] + 1;
        CHECK(set.size() == expect);
        CHECK(std::is_sorted(set.begin(), set.end(), MultiIndexOrder{}));
        CHECK(std::adjacent_find(set.begin(), set.end()) == set.end());
        for (const auto& g : set) {
            CHECK(g.divides(a));
            for (const auto& [i, e] : g.entries()) {
                auto lower = g - MultiIndex::unit(i);
                CHECK(std::find(set.begin(), set.end(), lower) != set.end());
            }
        }
    }
}

TEST_CASE("property: Vandermonde convolution of binomial products") {
    std::mt19937_64 rng(31);
    for (const FieldSpec& f : {Q, FieldSpec::prime(3)}) {
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_index(rng, 2, 3), b = random_index(rng, 2, 3);
            for (const auto& g : lower_set(a + b)) {
                Scalar sum = Scalar::zero(f);
                for (const auto& g1 : lower_set(a))
                    if (g1.divides(g) && (g - g1).divides(b))
                        sum += binom_product(a, g1, f) * binom_product(b, g - g1, f);
                CHECK(sum == binom_product(a + b, g, f));
            }
        }
    }
}

TEST_CASE("property: p-adic factors recompose to the derivative monomial") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        auto ctx = weyl_fp(p);
        const FieldSpec& f = ctx->field();
        for (std::uint32_t n = 0; n <= 6; ++n) {
            MultiIndex alpha = MultiIndex::unit(0, n);
            WeylElement product = WeylElement::identity(f);
            for (const auto& fac : p_adic_factor(alpha, p)) {
                CHECK(fac.exponent >= 1);
                CHECK(fac.exponent <= p - 1);
                WeylElement power = WeylElement::derivative(f, MultiIndex::unit(fac.derivation,
                                                                              static_cast<std::uint32_t>(fac.power)));
                product = w_mul(*ctx, product, w_pow(*ctx, power, fac.exponent));
            }
            CHECK(product == WeylElement::derivative(f, alpha));
        }
    }
}
