#include "ncalg/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ncalg {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits_small(i128 v) { return v >= -static_cast<i128>(kSmallMax) && v <= static_cast<i128>(kSmallMax); }

void set_mpz_i128(mpz_ptr out, i128 v) {
    u128 m = uabs(v);
    auto hi = static_cast<std::uint64_t>(m >> 64);
    auto lo = static_cast<std::uint64_t>(m);
    mpz_set_ui(out, static_cast<unsigned long>(hi));
    mpz_mul_2exp(out, out, 64);
    mpz_add_ui(out, out, static_cast<unsigned long>(lo));
    if (v < 0) mpz_neg(out, out);
}

}  // namespace

void Rational::MpqDeleter::operator()(__mpq_struct* q) const noexcept {
    mpq_clear(q);
    delete q;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    i128 n = num;
    i128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits_small(n) && fits_small(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    } else {
        mpq_t q;
        mpq_init(q);
        set_mpz_i128(mpq_numref(q), n);
        set_mpz_i128(mpq_denref(q), d);
        *this = from_mpq(q);
        mpq_clear(q);
    }
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) {
        big_.reset(new __mpq_struct);
        mpq_init(big_.get());
        mpq_set(big_.get(), other.big_.get());
    }
}

Rational& Rational::operator=(const Rational& other) {
    if (this != &other) {
        Rational tmp(other);
        *this = std::move(tmp);
    }
    return *this;
}

Rational Rational::from_mpq(mpq_srcptr q) {
    Rational r;
    if (mpz_fits_slong_p(mpq_numref(q)) && mpz_fits_slong_p(mpq_denref(q))) {
        long n = mpz_get_si(mpq_numref(q));
        long d = mpz_get_si(mpq_denref(q));
        if (n != std::numeric_limits<long>::min()) {
            r.num_ = n;
            r.den_ = d;
            return r;
        }
    }
    r.big_.reset(new __mpq_struct);
    mpq_init(r.big_.get());
    mpq_set(r.big_.get(), q);
    r.num_ = 0;
    r.den_ = 0;
    return r;
}

void Rational::to_mpq(mpq_ptr out) const {
    if (big_) {
        mpq_set(out, big_.get());
    } else {
        mpz_set_si(mpq_numref(out), num_);
        mpz_set_si(mpq_denref(out), den_);
    }
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = trim(text.substr(0, slash));
        den = trim(text.substr(slash + 1));
    }
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string ns(num);
    if (ns.front() == '+') ns.erase(0, 1);
    std::string ds(den);
    mpq_t q;
    mpq_init(q);
    mpz_set_str(mpq_numref(q), ns.c_str(), 10);
    mpz_set_str(mpq_denref(q), ds.c_str(), 10);
    if (mpz_sgn(mpq_denref(q)) == 0) {
        mpq_clear(q);
        throw std::invalid_argument("rational with zero denominator");
    }
    mpq_canonicalize(q);
    Rational r = from_mpq(q);
    mpq_clear(q);
    return r;
}

std::string Rational::numerator_string() const {
    if (!big_) return std::to_string(num_);
    char* s = mpz_get_str(nullptr, 10, mpq_numref(big_.get()));
    std::string out(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

std::string Rational::denominator_string() const {
    if (!big_) return std::to_string(den_);
    char* s = mpz_get_str(nullptr, 10, mpq_denref(big_.get()));
    std::string out(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

std::string Rational::to_string() const {
    if (!big_) return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    std::string d = denominator_string();
    return d == "1" ? numerator_string() : numerator_string() + "/" + d;
}

bool Rational::is_integer() const { return big_ ? mpz_cmp_ui(mpq_denref(big_.get()), 1) == 0 : den_ == 1; }

int Rational::sign() const noexcept {
    if (big_) return mpq_sgn(big_.get());
    return (num_ > 0) - (num_ < 0);
}

std::uint32_t Rational::mod(std::uint32_t p) const {
    std::uint64_t n;
    std::uint64_t d;
    if (big_) {
        n = mpz_fdiv_ui(mpq_numref(big_.get()), p);
        d = mpz_fdiv_ui(mpq_denref(big_.get()), p);
    } else {
        std::int64_t r = num_ % static_cast<std::int64_t>(p);
        n = static_cast<std::uint64_t>(r < 0 ? r + p : r);
        d = static_cast<std::uint64_t>(den_ % static_cast<std::int64_t>(p));
    }
    if (d == 0) throw std::domain_error("prime divides denominator");
    // d^(p-2) mod p
    std::uint64_t inv = 1;
    std::uint64_t base = d;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(n * inv % p);
}

Rational Rational::operator-() const {
    if (!big_) {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    mpq_t q;
    mpq_init(q);
    mpq_neg(q, big_.get());
    Rational r = from_mpq(q);
    mpq_clear(q);
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (!big_) {
        Rational r;
        r.num_ = num_ < 0 ? -den_ : den_;
        r.den_ = num_ < 0 ? -num_ : num_;
        return r;
    }
    mpq_t q;
    mpq_init(q);
    mpq_inv(q, big_.get());
    Rational r = from_mpq(q);
    mpq_clear(q);
    return r;
}

namespace {

template <class Op>
Rational big_op(const Rational& a, const Rational& b, Op op, void (*to)(const Rational&, mpq_ptr),
                Rational (*from)(mpq_srcptr)) {
    mpq_t x, y, z;
    mpq_init(x);
    mpq_init(y);
    mpq_init(z);
    to(a, x);
    to(b, y);
    op(z, x, y);
    Rational r = from(z);
    mpq_clear(x);
    mpq_clear(y);
    mpq_clear(z);
    return r;
}

Rational reduce128(i128 n, i128 d) {
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits_small(n) && fits_small(d)) {
        return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    mpq_t q;
    mpq_init(q);
    set_mpz_i128(mpq_numref(q), n);
    set_mpz_i128(mpq_denref(q), d);
    Rational r = Rational::from_mpq(q);
    mpq_clear(q);
    return r;
}

}  // namespace

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == 1 && b.den_ == 1) {
            std::int64_t s;
            if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
                Rational r;
                r.num_ = s;
                return r;
            }
        }
        i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
        i128 d = static_cast<i128>(a.den_) * b.den_;
        return reduce128(n, d);
    }
    return big_op(
        a, b, [](mpq_ptr z, mpq_srcptr x, mpq_srcptr y) { mpq_add(z, x, y); },
        [](const Rational& r, mpq_ptr out) { r.to_mpq(out); }, &Rational::from_mpq);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == 1 && b.den_ == 1) {
            std::int64_t p;
            if (!__builtin_mul_overflow(a.num_, b.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
                Rational r;
                r.num_ = p;
                return r;
            }
        }
        std::int64_t g1 = std::gcd(a.num_, b.den_);
        std::int64_t g2 = std::gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        i128 n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
        i128 d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
        if (n == 0) return Rational();
        return reduce128(n, d);
    }
    return big_op(
        a, b, [](mpq_ptr z, mpq_srcptr x, mpq_srcptr y) { mpq_mul(z, x, y); },
        [](const Rational& r, mpq_ptr out) { r.to_mpq(out); }, &Rational::from_mpq);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return mpq_equal(a.big_.get(), b.big_.get()) != 0;
    return false;  // canonical: a big value never equals a small one
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }
    mpq_t x, y;
    mpq_init(x);
    mpq_init(y);
    a.to_mpq(x);
    b.to_mpq(y);
    bool lt = mpq_cmp(x, y) < 0;
    mpq_clear(x);
    mpq_clear(y);
    return lt;
}

std::size_t Rational::hash() const {
    if (!big_) return std::hash<std::int64_t>{}(num_) * 31u + std::hash<std::int64_t>{}(den_);
    return std::hash<std::string>{}(to_string());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace ncalg
