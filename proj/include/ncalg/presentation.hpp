#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ncalg/polynomial.hpp"

namespace ncalg {

/// A finitely presented graded algebra Q<generators>/(relations).  Generators
/// have degree 1; every relation is nonzero, homogeneous and of degree >= 2.
class Presentation {
public:
    /// Throws RelationError if a relation is zero, inhomogeneous or of degree < 2,
    /// and AlphabetMismatch if it is over another alphabet.
    Presentation(std::string name, MonomialOrder order, std::vector<NCPolynomial> relations,
                 std::string source = "");

    const std::string& name() const { return name_; }
    /// Alphabet with its default precedence (the listed generator order).
    const MonomialOrder& order() const { return order_; }
    const Alphabet& alphabet() const { return order_.alphabet(); }
    const AlphabetPtr& alphabet_ptr() const { return order_.alphabet_ptr(); }
    std::size_t generator_count() const { return order_.size(); }
    const std::vector<NCPolynomial>& relations() const { return relations_; }
    const std::string& source() const { return source_; }

    std::size_t max_relation_degree() const;
    bool is_quadratic() const;

    /// Generator as a polynomial, by name.
    NCPolynomial gen(std::string_view name) const;

    /// Same data as the DSL accepts; parse_presentation(to_text()) == *this.
    std::string to_text() const;

    /// Name, generators (in order) and relations agree.  Source is metadata.
    friend bool operator==(const Presentation& a, const Presentation& b);

private:
    std::string name_;
    MonomialOrder order_;
    std::vector<NCPolynomial> relations_;
    std::string source_;
};

/// Parses the presentation DSL:
///
///     algebra <name> over Q
///     generators <name> <name> ...
///     relations
///     <expr>
///     ...
///
/// with expr := ['-'] term (('+'|'-') term)*, term := [coeff '*'] factor ('*' factor)*,
/// factor := generator | generator '^' k | '[' expr ',' expr ']'.  `#` starts a
/// comment.  The `algebra` line is optional (name defaults to "unnamed"); when
/// the `generators` line is missing, generators are taken in order of first
/// appearance.  Throws ParseError (with line/column) or RelationError.
Presentation parse_presentation(std::string_view text, std::string source = "");

/// Parses a single expression over `order`'s alphabet.
NCPolynomial parse_expression(std::string_view text, const MonomialOrder& order);

// Built-in families.  Generators x_{ij} / a_{ij} are named "x12", "a31", ...
// (with an underscore separator, "x1_10", once n >= 10) and listed
// lexicographically by (i, j).

/// Free-algebra presentation of H*(McCool group; Q) = E/I: exterior relations
/// (squares and anticommutators) plus a_ij a_ji and a_kj a_ji - a_kj a_ki + a_ij a_ki.
Presentation mccool_cohomology(int n);
/// Enveloping algebra U(g_n), the quadratic dual of mccool_cohomology(n).
Presentation u_g(int n);
/// U(g_4 / h_4): eight generators, sixteen commutator relations.
Presentation u_g_mod_h();
/// Quadratic dual of u_g_mod_h() as an exterior algebra modulo twelve elements.
Presentation u_g_mod_h_dual();
/// Free algebra on the given generators.
Presentation free_algebra(std::vector<std::string> names, std::string name = "free");

std::string generator_name(char prefix, int i, int j, int n);

/// Linear change of generators: each new generator is a degree-1 polynomial in
/// the old ones; the coefficient matrix must be invertible.
struct LinearSubstitution {
    AlphabetPtr target;
    /// images[k] expresses target generator k in the source generators.
    std::vector<NCPolynomial> images;
};

/// Rewrites every relation in the new generators.  Throws SingularError for a
/// non-invertible matrix and Error on size mismatch.
Presentation apply_substitution(const Presentation& p, const LinearSubstitution& s);

/// Column-sum change of variables X_j = sum_{i != j} x_ij for u_g(n): X_j
/// replaces x_nj for j < n and x_{n-1,n} for j = n.  The target alphabet lists
/// the surviving x's lexicographically followed by X1..Xn, which is also the
/// intended deg-lex precedence (x12 > x13 > x21 > X1 > X2 > X3 for n = 3).
LinearSubstitution column_sum_substitution(const Presentation& ug, int n);

}  // namespace ncalg
