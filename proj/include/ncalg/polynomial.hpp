#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncalg/rational.hpp"
#include "ncalg/word.hpp"

namespace ncalg {

struct Term {
    Word word;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Element of the free algebra Q<alphabet>: a finite combination of words with
/// nonzero rational coefficients.  Immutable; terms are kept in descending
/// order for the polynomial's monomial order, so the leading term is first.
class NCPolynomial {
public:
    explicit NCPolynomial(MonomialOrder order);
    /// Combines equal words, drops zeros, sorts.
    NCPolynomial(MonomialOrder order, std::vector<Term> terms);

    static NCPolynomial constant(MonomialOrder order, const Rational& c);
    static NCPolynomial monomial(MonomialOrder order, Word w, const Rational& c = Rational(1));
    static NCPolynomial generator(MonomialOrder order, Letter l);

    const MonomialOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Preconditions: nonzero.
    const Word& leading_word() const { return terms_.front().word; }
    const Rational& leading_coefficient() const { return terms_.front().coeff; }

    bool is_homogeneous() const { return homogeneous_; }
    /// Degree when homogeneous and nonzero.
    std::optional<std::size_t> degree() const;
    std::size_t max_degree() const;

    Rational coefficient(const Word& w) const;

    /// Same polynomial re-sorted for another order on the same alphabet.
    NCPolynomial with_order(const MonomialOrder& order) const;
    NCPolynomial monic() const;

    NCPolynomial operator-() const;
    friend NCPolynomial operator+(const NCPolynomial& a, const NCPolynomial& b);
    friend NCPolynomial operator-(const NCPolynomial& a, const NCPolynomial& b);
    friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
    friend NCPolynomial operator*(const Rational& c, const NCPolynomial& p);

    /// Equal as elements of the free algebra (orders may differ).
    friend bool operator==(const NCPolynomial& a, const NCPolynomial& b);

    /// Renders in the presentation DSL's expression syntax, e.g. "x*y - 2*y*x".
    std::string to_string() const;

private:
    void normalize();

    MonomialOrder order_;
    std::vector<Term> terms_;
    bool homogeneous_ = true;
};

/// Bilinear extension of concatenation.  Throws AlphabetMismatch.
NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q);
/// ab - ba.
NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b);

}  // namespace ncalg
