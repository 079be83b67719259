#include "weyl/scalar.hpp"

#include <charconv>

#include "weyl/error.hpp"

namespace weyl {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t reduce(const mpz_class& value, std::uint64_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
    return r.get_ui();
}

// Inverse of a in [1, p) by the extended Euclidean algorithm.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(p);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw InternalError("residue not invertible modulo a prime");
    std::int64_t m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((old_s % m) + m) % m);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 32)) throw UsageError("field characteristic must be below 2^32");
    if (!is_prime(p)) throw UsageError("field characteristic " + std::to_string(p) + " is not prime");
    return FieldSpec{p};
}

std::string FieldSpec::to_string() const {
    return is_rational() ? "Q" : "F_" + std::to_string(p_);
}

Scalar Scalar::from_int(long value, const FieldSpec& f) {
    return from_integer(mpz_class(value), f);
}

Scalar Scalar::from_integer(const mpz_class& value, const FieldSpec& f) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational())
        s.value_ = mpq_class(value);
    else
        s.value_ = reduce(value, f.characteristic());
    return s;
}

Scalar Scalar::from_fraction(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero();
    mpq_class q(num, den);
    q.canonicalize();
    Scalar s;
    s.value_ = std::move(q);
    return s;
}

Scalar Scalar::parse(std::string_view text, const FieldSpec& f) {
    auto bad = [&] { return UsageError("malformed scalar '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view part, bool allow_sign) {
        std::string_view digits = part;
        if (allow_sign && !digits.empty() && digits.front() == '-') digits.remove_prefix(1);
        if (digits.empty()) throw bad();
        for (char c : digits)
            if (c < '0' || c > '9') throw bad();
        return mpz_class(std::string(part));
    };
    if (f.is_rational()) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return from_integer(parse_int(text, true), f);
        mpz_class num = parse_int(text.substr(0, slash), true);
        mpz_class den = parse_int(text.substr(slash + 1), false);
        if (den == 0) throw DivisionByZero();
        Scalar s = from_fraction(num, den);
        // Only the canonical spelling round-trips bit-exactly.
        if (s.to_string() != text) throw bad();
        return s;
    }
    mpz_class v = parse_int(text, false);
    if (v >= mpz_class(std::to_string(f.characteristic()))) throw bad();
    return from_integer(v, f);
}

bool Scalar::is_zero() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
    return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
    return std::get<std::uint64_t>(value_) == 1;
}

const mpq_class& Scalar::rational_value() const {
    if (!field_.is_rational()) throw UsageError("rational_value on a prime-field scalar");
    return std::get<mpq_class>(value_);
}

std::uint64_t Scalar::residue() const {
    if (field_.is_rational()) throw UsageError("residue on a rational scalar");
    return std::get<std::uint64_t>(value_);
}

void Scalar::require_same_field(const Scalar& other) const {
    if (!(field_ == other.field_))
        throw UsageError("mixed fields: " + field_.to_string() + " and " + other.field_.to_string());
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (auto* q = std::get_if<mpq_class>(&s.value_)) {
        *q = -*q;
    } else {
        auto& r = std::get<std::uint64_t>(s.value_);
        if (r != 0) r = field_.characteristic() - r;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar s = *this;
    if (auto* q = std::get_if<mpq_class>(&s.value_))
        *q = 1 / *q;
    else
        s.value_ = inverse_mod(std::get<std::uint64_t>(value_), field_.characteristic());
    return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    require_same_field(rhs);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
        *q += std::get<mpq_class>(rhs.value_);
    } else {
        auto p = field_.characteristic();
        auto& r = std::get<std::uint64_t>(value_);
        r = (r + std::get<std::uint64_t>(rhs.value_)) % p;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
    require_same_field(rhs);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
        *q *= std::get<mpq_class>(rhs.value_);
    } else {
        auto& r = std::get<std::uint64_t>(value_);
        r = mul_mod(r, std::get<std::uint64_t>(rhs.value_), field_.characteristic());
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    require_same_field(rhs);
    return *this *= rhs.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
}

std::string Scalar::to_string() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    return std::to_string(std::get<std::uint64_t>(value_));
}

Scalar binom_scalar(std::uint64_t n, std::uint64_t k, const FieldSpec& f) {
    if (k > n) throw UsageError("binomial C(n, k) requires k <= n");
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return Scalar::from_integer(c, f);
}

}  // namespace weyl
