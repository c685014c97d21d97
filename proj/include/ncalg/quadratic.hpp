#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncalg/groebner.hpp"
#include "ncalg/hilbert.hpp"
#include "ncalg/linalg.hpp"

namespace ncalg {

/// The relation space R of a quadratic algebra as an echelon basis over the
/// g^2 words x_i x_j, indexed i*g + j (alphabet order).
struct QuadraticData {
    std::string name;
    AlphabetPtr alphabet;
    DenseMatrix<RationalField> rows;  // reduced row echelon form, no zero rows

    std::size_t generators() const { return alphabet->size(); }
    std::size_t rank() const { return rows.rows(); }
    /// Same row space (requires the same generator count).
    bool same_span(const QuadraticData& other) const;
};

/// Throws RelationError if some relation is not of degree 2.
QuadraticData quadratic_data(const Presentation& p);

/// Presentation of the dual on generators named `names` (default: the same
/// names).  Relations are an echelon basis of the annihilator of R under
/// <x_i* x_j*, x_k x_l> = delta_ik delta_jl.
Presentation quadratic_dual(const QuadraticData& q, std::vector<std::string> names = {});

struct KoszulDefectReport {
    std::size_t max_degree = 0;
    /// Coefficients of h_A(t) * h_dual(-t).
    std::vector<BigInt> product;
    std::optional<std::size_t> first_defect;
    /// A defect always rules out Koszulity; without one, the test decides
    /// only when the dual vanishes in degree 3.
    bool conclusive = false;
    bool dual_vanishes_in_degree3 = false;
};

/// Throws TruncationError when either series is shorter than max_degree.
KoszulDefectReport koszul_series_test(const HilbertSeries& a, const HilbertSeries& dual, std::size_t max_degree);

struct PbwResult {
    bool pbw = false;
    std::string order;
    /// A degree-3 overlap whose two reductions differ, with the normal form
    /// of their difference.
    std::optional<Ambiguity> witness;
    std::vector<NCPolynomial> witness_elements;  // the two basis elements involved
    std::optional<NCPolynomial> witness_normal_form;
};

/// True iff the quadratic relations form a Groebner basis for `order`: every
/// degree-3 overlap of leading words resolves.  Throws RelationError for
/// non-quadratic input.
PbwResult pbw_check(const Presentation& p, const MonomialOrder& order);

/// Quadratic relations satisfied by the elements `subgens` (degree 1) of the
/// ambient algebra: a basis of the kernel of y_a y_b -> NF(s_a s_b).
/// Generators of the result are named `names` (default y1..yk).  Throws Error
/// for dependent or non-linear subgenerators.
Presentation quadratic_closure_subalgebra(const GroebnerBasis& ambient, const std::vector<NCPolynomial>& subgens,
                                          std::vector<std::string> names = {}, std::string name = "closure");

/// Generators x_in, x_ni (i < n) of the normal subalgebra T_n of u_g(n).
std::vector<std::string> fiber_generator_names(int n);
/// Generators of u_g(n) other than x_{2i-1,2i}, x_{2i,2i-1} (i <= floor(n/2)).
std::vector<std::string> complement_generator_names(int n);

}  // namespace ncalg
