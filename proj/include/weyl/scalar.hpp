#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace weyl {

/// The ground field: either the rationals or a prime field F_p.
class FieldSpec {
public:
    enum class Kind { rational, prime };

    FieldSpec() = default;

    static FieldSpec rational() { return FieldSpec{}; }
    /// Throws UsageError unless p is a prime below 2^32.
    static FieldSpec prime(std::uint64_t p);

    Kind kind() const noexcept { return p_ == 0 ? Kind::rational : Kind::prime; }
    bool is_rational() const noexcept { return p_ == 0; }
    /// 0 for the rationals.
    std::uint64_t characteristic() const noexcept { return p_; }

    /// "Q" or "F_p".
    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    explicit FieldSpec(std::uint64_t p) : p_(p) {}
    std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact field element in canonical form. Rationals are kept in lowest
/// terms with positive denominator; residues live in [0, p).
class Scalar {
public:
    /// Rational zero.
    Scalar() = default;

    static Scalar zero(const FieldSpec& f) { return from_int(0, f); }
    static Scalar one(const FieldSpec& f) { return from_int(1, f); }
    static Scalar from_int(long value, const FieldSpec& f);
    static Scalar from_integer(const mpz_class& value, const FieldSpec& f);
    /// num/den in the rational field; den must be nonzero.
    static Scalar from_fraction(const mpz_class& num, const mpz_class& den);

    /// Textual form: "a" or "a/b" for rationals, a decimal in [0, p) for residues.
    static Scalar parse(std::string_view text, const FieldSpec& f);

    const FieldSpec& field() const noexcept { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Only valid in the rational field.
    const mpq_class& rational_value() const;
    /// Only valid in a prime field.
    std::uint64_t residue() const;

    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string to_string() const;

private:
    void require_same_field(const Scalar& other) const;

    FieldSpec field_;
    std::variant<mpq_class, std::uint64_t> value_;
};

/// C(n, k) computed over the integers and then mapped into the field.
Scalar binom_scalar(std::uint64_t n, std::uint64_t k, const FieldSpec& f);

}  // namespace weyl
