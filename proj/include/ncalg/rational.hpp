#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmp.h>

namespace ncalg {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline and
/// handled with overflow-checked machine arithmetic; anything larger is
/// promoted to a GMP rational.  Either way the value is kept in lowest terms
/// with a positive denominator, so equality is structural.
class Rational {
public:
    Rational() noexcept = default;
    Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    Rational(const Rational& other);
    Rational(Rational&& other) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&& other) noexcept = default;
    ~Rational() = default;

    /// Parses "a", "-a", "a/b".  Throws std::invalid_argument on malformed input
    /// or a zero denominator.
    static Rational parse(std::string_view text);

    std::string to_string() const;

    bool is_zero() const noexcept { return !big_ && num_ == 0; }
    bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const noexcept;

    /// Numerator/denominator as decimal strings (always exact).
    std::string numerator_string() const;
    std::string denominator_string() const;

    /// Residue modulo an odd prime p.  Throws std::domain_error if p divides
    /// the denominator.
    std::uint32_t mod(std::uint32_t p) const;

    Rational operator-() const;
    Rational inverse() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::size_t hash() const;

    /// GMP interop.
    static Rational from_mpq(mpq_srcptr q);
    void to_mpq(mpq_ptr out) const;

private:
    struct MpqDeleter {
        void operator()(__mpq_struct* q) const noexcept;
    };
    using BigPtr = std::unique_ptr<__mpq_struct, MpqDeleter>;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    BigPtr big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace ncalg

template <>
struct std::hash<ncalg::Rational> {
    std::size_t operator()(const ncalg::Rational& r) const { return r.hash(); }
};
