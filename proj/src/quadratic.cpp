#include "ncalg/quadratic.hpp"

#include <map>

#include "ncalg/errors.hpp"

namespace ncalg {

namespace {

DenseMatrix<RationalField> echelon(DenseMatrix<RationalField> m) {
    rref(RationalField{}, m);
    return m;
}

NCPolynomial row_polynomial(const MonomialOrder& order, const std::vector<Rational>& row, std::size_t g) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < row.size(); ++k)
        if (!row[k].is_zero())
            terms.push_back({Word{static_cast<Letter>(k / g), static_cast<Letter>(k % g)}, row[k]});
    return NCPolynomial(order, std::move(terms));
}

}  // namespace

bool QuadraticData::same_span(const QuadraticData& other) const {
    return generators() == other.generators() && rows == other.rows;
}

QuadraticData quadratic_data(const Presentation& p) {
    const std::size_t g = p.generator_count();
    QuadraticData q;
    q.name = p.name();
    q.alphabet = p.alphabet_ptr();
    q.rows = DenseMatrix<RationalField>(0, g * g, Rational());
    for (std::size_t i = 0; i < p.relations().size(); ++i) {
        const auto& r = p.relations()[i];
        if (*r.degree() != 2) throw RelationError("relation " + std::to_string(i + 1) + " is not quadratic");
        std::vector<Rational> row(g * g);
        for (const auto& t : r.terms()) row[t.word[0] * g + t.word[1]] = t.coeff;
        q.rows.append_row(row);
    }
    q.rows = echelon(std::move(q.rows));
    return q;
}

Presentation quadratic_dual(const QuadraticData& q, std::vector<std::string> names) {
    const std::size_t g = q.generators();
    if (names.empty()) names = q.alphabet->names();
    if (names.size() != g) throw Error("dual generator name count does not match");
    auto basis = nullspace(RationalField{}, q.rows);
    DenseMatrix<RationalField> m(0, g * g, Rational());
    for (auto& v : basis) m.append_row(v);
    m = echelon(std::move(m));
    MonomialOrder order(make_alphabet(std::move(names)));
    std::vector<NCPolynomial> rels;
    for (std::size_t r = 0; r < m.rows(); ++r) rels.push_back(row_polynomial(order, m.row(r), g));
    return Presentation(q.name + "-dual", order, std::move(rels), "dual:" + q.name);
}

KoszulDefectReport koszul_series_test(const HilbertSeries& a, const HilbertSeries& dual, std::size_t max_degree) {
    if (a.coefficients.size() <= max_degree || dual.coefficients.size() <= max_degree)
        throw TruncationError("series shorter than the requested degree");
    KoszulDefectReport rep;
    rep.max_degree = max_degree;
    rep.product.assign(max_degree + 1, 0);
    for (std::size_t d = 0; d <= max_degree; ++d) {
        for (std::size_t i = 0; i <= d; ++i) {
            BigInt term = dual[i] * a[d - i];
            if (i % 2) rep.product[d] -= term;
            else rep.product[d] += term;
        }
        if (d >= 1 && rep.product[d] != 0 && !rep.first_defect) rep.first_defect = d;
    }
    rep.dual_vanishes_in_degree3 = max_degree >= 3 && dual[3] == 0;
    rep.conclusive = rep.first_defect.has_value() || rep.dual_vanishes_in_degree3;
    return rep;
}

PbwResult pbw_check(const Presentation& p, const MonomialOrder& order) {
    if (!p.is_quadratic()) throw RelationError("PBW check needs a quadratic presentation");
    PbwResult res;
    res.order = order.to_string();
    auto gb = compute_gb(p, order, 2);
    auto elems = gb.elements(2);
    std::vector<Word> leads;
    for (const auto& e : elems) leads.push_back(e.leading_word());
    for (const auto& a : find_ambiguities(leads, 3)) {
        if (a.inclusion) continue;
        const Word pre = a.word.prefix(a.second_offset);
        const Word post = a.word.suffix(a.word.degree() - leads[a.first].degree());
        NCPolynomial s = elems[a.first] * NCPolynomial::monomial(order, post) -
                         NCPolynomial::monomial(order, pre) * elems[a.second];
        NCPolynomial nf = gb.reduce(s);
        if (!nf.is_zero()) {
            res.witness = a;
            res.witness_elements = {elems[a.first], elems[a.second]};
            res.witness_normal_form = nf;
            return res;
        }
    }
    res.pbw = true;
    return res;
}

Presentation quadratic_closure_subalgebra(const GroebnerBasis& ambient, const std::vector<NCPolynomial>& subgens,
                                          std::vector<std::string> names, std::string name) {
    if (ambient.truncation_degree() < 2) throw TruncationError("closure needs truncation at least 2");
    const std::size_t k = subgens.size();
    const std::size_t g = ambient.presentation().generator_count();
    if (k == 0) throw Error("no subgenerators");
    DenseMatrix<RationalField> lin(0, g, Rational());
    for (const auto& s : subgens) {
        if (!(s.order().alphabet() == ambient.presentation().alphabet())) throw AlphabetMismatch();
        if (s.is_zero() || s.degree() != std::size_t{1}) throw Error("subgenerators must be homogeneous of degree 1");
        std::vector<Rational> row(g);
        for (const auto& t : s.terms()) row[t.word[0]] = t.coeff;
        lin.append_row(row);
    }
    if (rank(RationalField{}, lin) != k) throw Error("subgenerators are linearly dependent");

    std::map<Word, std::size_t> column_of;
    std::vector<NCPolynomial> images;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            images.push_back(ambient.normal_form(subgens[a] * subgens[b]));
            for (const auto& t : images.back().terms()) column_of.emplace(t.word, 0);
        }
    std::size_t idx = 0;
    for (auto& [w, c] : column_of) c = idx++;
    DenseMatrix<RationalField> m(column_of.size(), k * k, Rational());
    for (std::size_t ab = 0; ab < images.size(); ++ab)
        for (const auto& t : images[ab].terms()) m(column_of.at(t.word), ab) = t.coeff;
    auto kernel = nullspace(RationalField{}, m);
    DenseMatrix<RationalField> rel(0, k * k, Rational());
    for (auto& v : kernel) rel.append_row(v);
    rel = echelon(std::move(rel));

    if (names.empty())
        for (std::size_t a = 0; a < k; ++a) names.push_back("y" + std::to_string(a + 1));
    if (names.size() != k) throw Error("name count does not match subgenerator count");
    MonomialOrder order(make_alphabet(std::move(names)));
    std::vector<NCPolynomial> rels;
    for (std::size_t r = 0; r < rel.rows(); ++r) rels.push_back(row_polynomial(order, rel.row(r), k));
    return Presentation(std::move(name), order, std::move(rels), "closure:" + ambient.presentation().name());
}

std::vector<std::string> fiber_generator_names(int n) {
    if (n < 2) throw Error("n must be at least 2");
    std::vector<std::string> out;
    for (int i = 1; i < n; ++i) out.push_back(generator_name('x', i, n, n));
    for (int j = 1; j < n; ++j) out.push_back(generator_name('x', n, j, n));
    return out;
}

std::vector<std::string> complement_generator_names(int n) {
    if (n < 2) throw Error("n must be at least 2");
    const int m = n / 2;
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const bool paired = (std::min(i, j) % 2 == 1) && std::max(i, j) == std::min(i, j) + 1 && std::max(i, j) <= 2 * m;
            if (!paired) out.push_back(generator_name('x', i, j, n));
        }
    return out;
}

}  // namespace ncalg
