#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "ncalg/errors.hpp"
#include "ncalg/morphisms.hpp"
#include "ncalg/quadratic.hpp"
#include "support.hpp"

using namespace ncalg;

namespace {

GroebnerBasis gb2(const Presentation& p) { return compute_gb(p, p.order(), 2); }

std::vector<int> inverse_perm(const std::vector<int>& s) {
    std::vector<int> inv(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) inv[static_cast<std::size_t>(s[i] - 1)] = static_cast<int>(i + 1);
    return inv;
}

bool same_images(const MorphismSpec& a, const MorphismSpec& b) {
    if (a.images.size() != b.images.size()) return false;
    for (std::size_t i = 0; i < a.images.size(); ++i)
        if (!(a.images[i] == b.images[i])) return false;
    return true;
}

Presentation closure_on(int n, const std::vector<std::string>& names) {
    Presentation ug = u_g(n);
    std::vector<NCPolynomial> g;
    for (const auto& s : names) g.push_back(ug.gen(s));
    return quadratic_closure_subalgebra(gb2(ug), g, names, "t" + std::to_string(n));
}

}  // namespace

TEST_CASE("identity is a morphism of every presentation") {
    for (const auto& p : support::small_builtins()) CHECK(verify_morphism(identity_morphism(p), gb2(p)).ok);
}

TEST_CASE("inclusions and projections split") {
    for (int n = 3; n <= 4; ++n) {
        CAPTURE(n);
        MorphismSpec i = inclusion_morphism(n);
        MorphismSpec pi = projection_morphism(n + 1);
        CHECK(verify_morphism(i, gb2(u_g(n + 1))).ok);
        CHECK(verify_morphism(pi, gb2(u_g(n))).ok);
        CHECK(verify_splitting(i, pi, gb2(u_g(n))).ok);
        CHECK(verify_morphism(compose(i, pi), gb2(u_g(n))).ok);
    }
}

TEST_CASE("all permutation actions on four strands are automorphisms") {
    std::vector<int> s{1, 2, 3, 4};
    auto gb = gb2(u_g(4));
    std::size_t count = 0;
    do {
        MorphismSpec f = permutation_morphism(4, s);
        CHECK(verify_morphism(f, gb).ok);
        MorphismSpec back = permutation_morphism(4, inverse_perm(s));
        CHECK(same_images(compose(f, back), identity_morphism(u_g(4))));
        ++count;
    } while (std::next_permutation(s.begin(), s.end()));
    CHECK(count == 24);
}

TEST_CASE("random permutation actions invert on five strands") {
    std::mt19937 rng(61);
    std::vector<int> s(5);
    std::iota(s.begin(), s.end(), 1);
    for (int k = 0; k < 10; ++k) {
        std::shuffle(s.begin(), s.end(), rng);
        CHECK(same_images(compose(permutation_morphism(5, s), permutation_morphism(5, inverse_perm(s))),
                          identity_morphism(u_g(5))));
    }
    CHECK_THROWS_AS(permutation_morphism(3, {1, 1, 2}), Error);
}

TEST_CASE("retraction onto the fiber fails on the full algebra") {
    MorphismSpec p = fiber_retraction(3);
    MorphismCheck c = verify_morphism(p, gb2(u_g(3)));
    CHECK_FALSE(c.ok);
    REQUIRE(c.relation);
    CHECK_FALSE(c.image_normal_form->is_zero());
}

TEST_CASE("retraction and its section on the normal subalgebra closures") {
    for (int n = 2; n <= 4; ++n) {
        CAPTURE(n);
        Presentation big = closure_on(n + 1, fiber_generator_names(n + 1));
        Presentation small = closure_on(n, fiber_generator_names(n));
        MorphismSpec p = restrict_morphism(fiber_retraction(n), big, small);
        CHECK(verify_morphism(p, gb2(small)).ok);
    }
    // Section: include, then swap strands 3 and 4.
    Presentation t3 = closure_on(3, fiber_generator_names(3));
    Presentation t4 = closure_on(4, fiber_generator_names(4));
    MorphismSpec tau = compose(inclusion_morphism(3), permutation_morphism(4, {1, 2, 4, 3}));
    CHECK(verify_morphism(tau, gb2(u_g(4))).ok);
    MorphismSpec p = fiber_retraction(3);
    CHECK(verify_splitting(tau, p, gb2(u_g(3)), fiber_generator_names(3)).ok);
    CHECK_FALSE(verify_splitting(tau, p, gb2(u_g(3))).ok);
    CHECK(verify_morphism(restrict_morphism(p, t4, t3), gb2(t3)).ok);
}

TEST_CASE("composition of verified maps is verified") {
    MorphismSpec a = inclusion_morphism(3), b = inclusion_morphism(4);
    MorphismSpec c = compose(a, b);
    CHECK(c.source.name() == "ug3");
    CHECK(c.target.name() == "ug5");
    CHECK(verify_morphism(c, gb2(u_g(5))).ok);
    CHECK_THROWS_AS(compose(b, a), ChainMismatch);
}

TEST_CASE("map file parsing") {
    Presentation src = parse_presentation("generators a b\nrelations\n[a,b]\n");
    Presentation tgt = parse_presentation("generators x y z\nrelations\n[x,y]\n[x,z]\n[y,z]\n");
    MorphismSpec f = parse_morphism("# comment\na -> x + 2*y\nb -> 0\n", src, tgt);
    CHECK(f.images[0].to_string() == "x + 2*y");
    CHECK(f.images[1].is_zero());
    CHECK(verify_morphism(f, gb2(tgt)).ok);
    CHECK(parse_morphism(f.to_text(), src, tgt).to_text() == f.to_text());
    try {
        parse_morphism("a -> x\nb -> w\n", src, tgt);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_morphism("a -> x\n", src, tgt), Error);
    CHECK_THROWS_AS(parse_morphism("a -> x\na -> y\nb -> z\n", src, tgt), Error);
    CHECK_THROWS_AS(parse_morphism("a -> x*y\nb -> z\n", src, tgt), Error);
    CHECK_THROWS_AS(parse_morphism("a x\n", src, tgt), ParseError);
    MorphismSpec bad = parse_morphism("a -> x\nb -> x\n", src, tgt);
    CHECK(verify_morphism(bad, gb2(tgt)).ok);
    MorphismSpec g = parse_morphism("x -> a\ny -> b\nz -> a\n", tgt, src);
    CHECK(verify_morphism(g, gb2(src)).ok);
    CHECK_THROWS_AS(verify_morphism(g, gb2(tgt)), AlphabetMismatch);
}
