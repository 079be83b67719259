#include "weyl/multi_index.hpp"

#include <algorithm>

#include "weyl/error.hpp"

namespace weyl {

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> exponents) {
    MultiIndex a;
    for (std::uint32_t i = 0; i < exponents.size(); ++i)
        if (exponents[i] != 0) a.entries_.emplace_back(i, exponents[i]);
    return a;
}

MultiIndex MultiIndex::unit(std::uint32_t k, std::uint32_t exponent) {
    MultiIndex a;
    if (exponent != 0) a.entries_.emplace_back(k, exponent);
    return a;
}

std::uint32_t MultiIndex::operator[](std::uint32_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::uint32_t k) { return e.first < k; });
    return it != entries_.end() && it->first == i ? it->second : 0;
}

std::uint64_t MultiIndex::level() const {
    std::uint64_t n = 0;
    for (const auto& [i, e] : entries_) n += e;
    return n;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    auto i = a.entries_.begin(), j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
        if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first))
            out.entries_.push_back(*i++);
        else if (i == a.entries_.end() || j->first < i->first)
            out.entries_.push_back(*j++);
        else
            out.entries_.emplace_back(i->first, i->second + j->second), ++i, ++j;
    }
    return out;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (!b.divides(a)) throw UsageError("multi-index difference would be negative");
    MultiIndex out;
    for (const auto& [k, e] : a.entries_) {
        std::uint32_t d = e - b[k];
        if (d != 0) out.entries_.emplace_back(k, d);
    }
    return out;
}

bool MultiIndex::divides(const MultiIndex& other) const {
    for (const auto& [k, e] : entries_)
        if (other[k] < e) return false;
    return true;
}

std::weak_ordering compare(const MultiIndex& a, const MultiIndex& b) {
    auto la = a.level(), lb = b.level();
    if (la != lb) return la <=> lb;
    auto ea = a.entries(), eb = b.entries();
    auto i = ea.begin(), j = eb.begin();
    while (i != ea.end() || j != eb.end()) {
        std::uint32_t x, y;
        if (j == eb.end() || (i != ea.end() && i->first < j->first))
            x = i->second, y = 0, ++i;
        else if (i == ea.end() || j->first < i->first)
            x = 0, y = j->second, ++j;
        else
            x = i->second, y = j->second, ++i, ++j;
        if (x != y) return x <=> y;
    }
    return std::weak_ordering::equivalent;
}

std::vector<MultiIndex> lower_set(const MultiIndex& alpha) {
    auto entries = alpha.entries();
    std::vector<std::uint32_t> cur(entries.size(), 0);
    std::vector<MultiIndex> out;
    // odometer over the sparse positions of alpha
    for (;;) {
        MultiIndex acc;
        for (std::size_t k = 0; k < entries.size(); ++k)
            if (cur[k]) acc = acc + MultiIndex::unit(entries[k].first, cur[k]);
        out.push_back(std::move(acc));
        std::size_t k = 0;
        while (k < entries.size() && cur[k] == entries[k].second) cur[k++] = 0;
        if (k == entries.size()) break;
        ++cur[k];
    }
    std::sort(out.begin(), out.end(), MultiIndexOrder{});
    return out;
}

Scalar binom_product(const MultiIndex& alpha, const MultiIndex& gamma, const FieldSpec& f) {
    if (!gamma.divides(alpha)) throw UsageError("binom_product: gamma is not in J(alpha)");
    Scalar out = Scalar::one(f);
    for (const auto& [k, g] : gamma.entries()) out *= binom_scalar(alpha[k], g, f);
    return out;
}

std::set<std::uint32_t> supp(const MultiIndex& alpha) {
    std::set<std::uint32_t> s;
    for (const auto& [k, e] : alpha.entries()) s.insert(k);
    return s;
}

std::optional<std::uint32_t> top_index(const MultiIndex& alpha) {
    if (alpha.is_zero()) return std::nullopt;
    return alpha.entries().back().first;
}

std::vector<PAdicFactor> p_adic_factor(const MultiIndex& alpha, std::uint64_t p) {
    if (!is_prime(p)) throw UsageError("p_adic_factor needs a prime");
    std::vector<PAdicFactor> out;
    for (const auto& [k, e] : alpha.entries()) {
        std::uint64_t n = e, power = 1;
        while (n) {
            auto digit = static_cast<std::uint32_t>(n % p);
            if (digit) out.push_back({k, power, digit});
            n /= p;
            power *= p;
        }
    }
    return out;
}

std::string to_string(const MultiIndex& alpha, const std::vector<std::string>& names) {
    if (alpha.is_zero()) return "1";
    std::string out;
    for (const auto& [k, e] : alpha.entries()) {
        if (!out.empty()) out += '*';
        out += k < names.size() ? names[k] : "d?" + std::to_string(k);
        if (e != 1) out += '^' + std::to_string(e);
    }
    return out;
}

}  // namespace weyl
