#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ncalg/rational.hpp"

namespace ncalg {

/// The rationals, as a coefficient field for the templated engines.
struct RationalField {
    using Element = Rational;

    Element zero() const { return Rational(); }
    Element one() const { return Rational(1); }
    Element from_rational(const Rational& r) const { return r; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const { return a.inverse(); }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    bool is_one(const Element& a) const { return a.is_one(); }
    std::string to_string(const Element& a) const { return a.to_string(); }
    std::string name() const { return "Q"; }
};

/// Z/pZ for an odd prime p < 2^31.
class PrimeField {
public:
    using Element = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 3 || p >= (1u << 31) || !is_prime(p)) throw std::invalid_argument("not an odd prime below 2^31");
    }

    std::uint32_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_rational(const Rational& r) const { return r.mod(p_); }
    Element from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Element>(r < 0 ? r + p_ : r);
    }
    Element add(Element a, Element b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element inv(Element a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        std::uint64_t result = 1;
        std::uint64_t base = a;
        for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
        }
        return static_cast<Element>(result);
    }
    bool is_zero(Element a) const { return a == 0; }
    bool is_one(Element a) const { return a == 1; }
    std::string to_string(Element a) const { return std::to_string(a); }
    std::string name() const { return "F_" + std::to_string(p_); }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

}  // namespace ncalg
