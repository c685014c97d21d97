#include "doctest.h"

#include <gmpxx.h>

#include <random>

#include "ncalg/errors.hpp"
#include "ncalg/groebner.hpp"
#include "ncalg/hilbert.hpp"
#include "ncalg/quadratic.hpp"
#include "support.hpp"

using namespace ncalg;

namespace {

std::vector<Presentation> quadratic_builtins() {
    std::vector<Presentation> out;
    for (int n = 2; n <= 5; ++n) {
        out.push_back(mccool_cohomology(n));
        out.push_back(u_g(n));
    }
    out.push_back(u_g_mod_h());
    out.push_back(u_g_mod_h_dual());
    return out;
}

HilbertSeries series(const Presentation& p, std::size_t d) { return hilbert_series(compute_gb(p, p.order(), d), d); }

KoszulDefectReport koszul(const Presentation& p, std::size_t d) {
    return koszul_series_test(series(p, d), series(quadratic_dual(quadratic_data(p)), d), d);
}

HilbertSeries from_ints(std::vector<long> v) {
    HilbertSeries h;
    for (long x : v) h.coefficients.emplace_back(x);
    return h;
}

std::vector<NCPolynomial> gens(const Presentation& p, const std::vector<std::string>& names) {
    std::vector<NCPolynomial> out;
    for (const auto& n : names) out.push_back(p.gen(n));
    return out;
}

}  // namespace

TEST_CASE("duality is an involution on built-ins and random data") {
    std::vector<Presentation> ps = quadratic_builtins();
    std::mt19937 rng(41);
    std::uniform_int_distribution<std::size_t> gdist(1, 4);
    for (int k = 0; k < 100; ++k) {
        const std::size_t g = gdist(rng);
        std::uniform_int_distribution<std::size_t> rdist(0, g * g);
        ps.push_back(support::random_quadratic(rng, g, rdist(rng)));
    }
    for (const auto& p : ps) {
        CAPTURE(p.to_text());
        QuadraticData q = quadratic_data(p);
        Presentation dual = quadratic_dual(q);
        QuadraticData qd = quadratic_data(dual);
        CHECK(q.rank() + qd.rank() == q.generators() * q.generators());
        CHECK(quadratic_data(quadratic_dual(qd)).same_span(q));
    }
}

TEST_CASE("dual relations annihilate the original ones") {
    std::mt19937 rng(42);
    for (int k = 0; k < 20; ++k) {
        Presentation p = support::random_quadratic(rng, 3, 1 + k % 6);
        Presentation d = quadratic_dual(quadratic_data(p));
        for (const auto& r : p.relations())
            for (const auto& s : d.relations()) {
                mpq_class dot = 0;
                for (const auto& t : r.terms()) {
                    mpq_class a, b;
                    t.coeff.to_mpq(a.get_mpq_t());
                    s.coefficient(t.word).to_mpq(b.get_mpq_t());
                    dot += a * b;
                }
                CHECK(dot == 0);
            }
    }
}

TEST_CASE("cohomology duals span the enveloping algebra relations") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        Presentation ug = u_g(n);
        Presentation dual = quadratic_dual(quadratic_data(mccool_cohomology(n)), ug.alphabet().names());
        CHECK(quadratic_data(dual).same_span(quadratic_data(ug)));
        CHECK(dual.relations().size() == ug.relations().size());
    }
}

TEST_CASE("dual of the quotient: series 1, 8, 16, 0 and the built-in span") {
    Presentation d = quadratic_dual(quadratic_data(u_g_mod_h()), u_g_mod_h_dual().alphabet().names());
    CHECK(quadratic_data(d).same_span(quadratic_data(u_g_mod_h_dual())));
    CHECK(series(d, 4).to_strings() == std::vector<std::string>{"1", "8", "16", "0", "0"});
}

TEST_CASE("series test arithmetic") {
    auto r = koszul_series_test(from_ints({1, 2, 1}), from_ints({1, 2, 0}), 2);
    CHECK(r.product[2] == -3);
    CHECK(r.first_defect == std::optional<std::size_t>{2});
    CHECK(r.conclusive);
    CHECK_THROWS_AS(koszul_series_test(from_ints({1, 2}), from_ints({1, 2, 0}), 2), TruncationError);

    auto ok = koszul_series_test(from_ints({1, 2, 3, 4}), from_ints({1, 2, 1, 0}), 3);
    CHECK_FALSE(ok.first_defect);
    CHECK(ok.dual_vanishes_in_degree3);
    CHECK(ok.conclusive);
}

TEST_CASE("series test on built-ins") {
    auto ug3 = koszul(u_g(3), 6);
    CHECK_FALSE(ug3.first_defect);
    CHECK(ug3.dual_vanishes_in_degree3);

    auto m4 = koszul(mccool_cohomology(4), 4);
    CHECK_FALSE(m4.first_defect);
    CHECK_FALSE(m4.conclusive);

    auto q = koszul(u_g_mod_h(), 7);
    CHECK_FALSE(q.first_defect);
    CHECK(q.conclusive);
    for (std::size_t d = 1; d <= 7; ++d) CHECK(q.product[d] == 0);
}

TEST_CASE("PBW certificates") {
    CHECK(pbw_check(u_g(2), u_g(2).order()).pbw);

    Presentation s3 = apply_substitution(u_g(3), column_sum_substitution(u_g(3), 3));
    auto r3 = pbw_check(s3, MonomialOrder::parse(s3.alphabet_ptr(), "deglex:x12>x13>x21>X1>X2>X3"));
    CHECK(r3.pbw);
    CHECK_FALSE(r3.witness);

    Presentation s4 = apply_substitution(u_g(4), column_sum_substitution(u_g(4), 4));
    auto r4 = pbw_check(s4, s4.order());
    CHECK_FALSE(r4.pbw);
    REQUIRE(r4.witness);
    CHECK(r4.witness->word.degree() == 3);
    CHECK_FALSE(r4.witness_normal_form->is_zero());
    CHECK_THROWS_AS(pbw_check(parse_presentation("generators x\nrelations\nx*x*x\n"), MonomialOrder(make_alphabet({"x"}))),
                    RelationError);
}

TEST_CASE("PBW implies no series defect") {
    for (const auto& p : {u_g(2), u_g(3)}) {
        Presentation s = p.generator_count() == 2 ? p : apply_substitution(p, column_sum_substitution(p, 3));
        CHECK(pbw_check(s, s.order()).pbw);
        CHECK_FALSE(koszul(p, 6).first_defect);
    }
}

TEST_CASE("quadratic closure of the normal subalgebra") {
    Presentation ug3 = u_g(3);
    auto gb = compute_gb(ug3, ug3.order(), 2);
    auto names = fiber_generator_names(3);
    CHECK(names == std::vector<std::string>{"x13", "x23", "x31", "x32"});
    Presentation t3 = quadratic_closure_subalgebra(gb, gens(ug3, names), names, "t3");
    REQUIRE(t3.relations().size() == 1);
    CHECK(t3.relations()[0].to_string() == "x13*x23 - x23*x13");
    CHECK_THROWS_AS(quadratic_closure_subalgebra(gb, {ug3.gen("x13"), ug3.gen("x13")}), Error);
}

TEST_CASE("closures of the normal and complement subalgebras show no defect through degree 6") {
    for (int n = 3; n <= 4; ++n) {
        Presentation ug = u_g(n);
        auto gb = compute_gb(ug, ug.order(), 2);
        auto names = fiber_generator_names(n);
        Presentation t = quadratic_closure_subalgebra(gb, gens(ug, names), names, "t");
        CAPTURE(n);
        CHECK_FALSE(koszul(t, 6).first_defect);
    }
    Presentation ug4 = u_g(4);
    auto gb4 = compute_gb(ug4, ug4.order(), 2);
    auto rn = complement_generator_names(4);
    CHECK(rn.size() == 8);
    Presentation r4 = quadratic_closure_subalgebra(gb4, gens(ug4, rn), rn, "r4");
    CHECK_FALSE(koszul(r4, 6).first_defect);
}
