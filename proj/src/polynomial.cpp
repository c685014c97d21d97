#include "ncalg/polynomial.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ncalg/errors.hpp"

namespace ncalg {

namespace {

void require_same_alphabet(const MonomialOrder& a, const MonomialOrder& b) {
    if (a.alphabet_ptr() != b.alphabet_ptr() && !(a.alphabet() == b.alphabet())) throw AlphabetMismatch();
}

}  // namespace

NCPolynomial::NCPolynomial(MonomialOrder order) : order_(std::move(order)) {}

NCPolynomial::NCPolynomial(MonomialOrder order, std::vector<Term> terms)
    : order_(std::move(order)), terms_(std::move(terms)) {
    const std::size_t g = order_.size();
    for (const auto& t : terms_)
        for (Letter l : t.word)
            if (l >= g) throw AlphabetMismatch();
    normalize();
}

void NCPolynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [this](const Term& a, const Term& b) { return order_.compare(a.word, b.word) > 0; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().word == t.word) {
            merged.back().coeff += t.coeff;
        } else {
            if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
    terms_ = std::move(merged);
    homogeneous_ = true;
    for (const auto& t : terms_)
        if (t.word.degree() != terms_.front().word.degree()) homogeneous_ = false;
}

NCPolynomial NCPolynomial::constant(MonomialOrder order, const Rational& c) {
    return NCPolynomial(std::move(order), {Term{Word{}, c}});
}

NCPolynomial NCPolynomial::monomial(MonomialOrder order, Word w, const Rational& c) {
    return NCPolynomial(std::move(order), {Term{std::move(w), c}});
}

NCPolynomial NCPolynomial::generator(MonomialOrder order, Letter l) {
    return monomial(std::move(order), Word{l});
}

std::optional<std::size_t> NCPolynomial::degree() const {
    if (terms_.empty() || !homogeneous_) return std::nullopt;
    return terms_.front().word.degree();
}

std::size_t NCPolynomial::max_degree() const {
    std::size_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.word.degree());
    return d;
}

Rational NCPolynomial::coefficient(const Word& w) const {
    for (const auto& t : terms_)
        if (t.word == w) return t.coeff;
    return Rational();
}

NCPolynomial NCPolynomial::with_order(const MonomialOrder& order) const {
    require_same_alphabet(order_, order);
    return NCPolynomial(order, terms_);
}

NCPolynomial NCPolynomial::monic() const {
    if (terms_.empty()) return *this;
    return leading_coefficient().inverse() * *this;
}

NCPolynomial NCPolynomial::operator-() const {
    NCPolynomial out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

NCPolynomial operator+(const NCPolynomial& a, const NCPolynomial& b) {
    require_same_alphabet(a.order_, b.order_);
    std::vector<Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return NCPolynomial(a.order_, std::move(terms));
}

NCPolynomial operator-(const NCPolynomial& a, const NCPolynomial& b) { return a + (-b); }

NCPolynomial operator*(const Rational& c, const NCPolynomial& p) {
    if (c.is_zero()) return NCPolynomial(p.order_);
    NCPolynomial out = p;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
    require_same_alphabet(a.order_, b.order_);
    std::unordered_map<Word, Rational, WordHash> acc;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) acc[s.word * t.word] += s.coeff * t.coeff;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [w, c] : acc)
        if (!c.is_zero()) terms.push_back(Term{w, c});
    return NCPolynomial(a.order_, std::move(terms));
}

bool operator==(const NCPolynomial& a, const NCPolynomial& b) {
    if (!(a.order_.alphabet() == b.order_.alphabet())) return false;
    if (a.order_.precedence() == b.order_.precedence()) return a.terms_ == b.terms_;
    return a.terms_ == b.with_order(a.order_).terms_;
}

std::string NCPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        if (t.word.empty()) {
            out += c.to_string();
        } else {
            if (!c.is_one()) out += c.to_string() + "*";
            out += t.word.to_string(order_.alphabet());
        }
    }
    return out;
}

NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q) { return p * q; }

NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b) { return a * b - b * a; }

}  // namespace ncalg
