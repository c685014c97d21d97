#include "doctest.h"

#include <random>
#include <set>

#include "ncalg/errors.hpp"
#include "ncalg/quadratic.hpp"
#include "ncalg/resolution.hpp"
#include "support.hpp"

using namespace ncalg;

namespace {

BettiOptions exact_options() {
    BettiOptions o;
    o.strategy = BettiStrategy::Exact;
    return o;
}

void check_shape(const BettiTable& t, const Presentation& p) {
    CHECK(t.at(0, 0) == 1);
    for (const auto& [ij, v] : t.entries) {
        if (ij.second < ij.first) CHECK(v == 0);
        if (ij.first == 0 && ij.second > 0) CHECK(v == 0);
    }
    CHECK(t.at(1, 1) == p.generator_count());
    CHECK(t.at(2, 2) == quadratic_data(p).rank());
}

}  // namespace

TEST_CASE("free algebra: only the generators") {
    Presentation f = free_algebra({"x", "y"});
    auto gb = compute_gb(f, f.order(), 6);
    auto t = betti_numbers(gb, 3, 6, exact_options());
    CHECK(t.at(1, 1) == 2);
    for (std::size_t j = 2; j <= 6; ++j) {
        CHECK(t.at(2, j) == 0);
        CHECK(t.at(3, j) == 0);
    }
    for (auto r : euler_check(hilbert_series(gb, 6), t, 6)) CHECK(r == 0);
}

TEST_CASE("three-strand algebra has a length-two linear resolution") {
    Presentation p = u_g(3);
    auto gb = compute_gb(p, p.order(), 6);
    auto t = betti_numbers(gb, 3, 6, exact_options());
    check_shape(t, p);
    CHECK(t.at(2, 2) == 9);
    for (std::size_t j = 3; j <= 6; ++j) {
        CHECK(t.at(2, j) == 0);
        CHECK(t.at(3, j) == 0);
    }
    for (auto r : euler_check(hilbert_series(gb, 6), t, 6)) CHECK(r == 0);
    CHECK(t.strategy_tag() == "exact-rational");
}

TEST_CASE("modular and exact strategies agree through degree 6") {
    for (const auto& p : {u_g(3), u_g_mod_h(), mccool_cohomology(3), u_g_mod_h_dual()}) {
        CAPTURE(p.name());
        auto gb = compute_gb(p, p.order(), 6);
        auto exact = betti_numbers(gb, 3, 6, exact_options());
        BettiOptions mo;
        mo.exact_recheck_degree = 6;
        mo.exact_fallback = false;
        auto modular = betti_numbers(gb, 3, 6, mo);
        CHECK(exact.entries == modular.entries);
        CHECK(modular.primes.size() == 2);
        CHECK(modular.primes[0] != modular.primes[1]);
        CHECK_FALSE(modular.fell_back_to_exact);
        check_shape(modular, p);
    }
}

TEST_CASE("degree-three syzygies match the dual algebra in degree three") {
    std::mt19937 rng(51);
    for (int k = 0; k < 25; ++k) {
        Presentation p = support::random_quadratic(rng, 3, 1 + k % 7);
        CAPTURE(p.to_text());
        auto gb = compute_gb(p, p.order(), 4);
        auto t = betti_numbers(gb, 3, 4, exact_options());
        Presentation d = quadratic_dual(quadratic_data(p));
        auto hd = hilbert_series(compute_gb(d, d.order(), 3), 3);
        CHECK(t.at(3, 3) == hd[3].get_ui());
        check_shape(t, p);
        auto res = euler_check(hilbert_series(gb, 4), t, 4);
        for (std::size_t j = 0; j <= 3; ++j) CHECK(res[j] == 0);
    }
}

TEST_CASE("quotient algebra is linear through degree 7 with sparse blocks") {
    Presentation p = u_g_mod_h();
    auto gb = compute_gb(p, p.order(), 7);
    auto t = betti_numbers(gb, 3, 7);
    check_shape(t, p);
    CHECK(t.at(1, 1) == 8);
    CHECK(t.at(2, 2) == 16);
    for (std::size_t j = 3; j <= 7; ++j) CHECK(t.at(3, j) == 0);
    for (auto r : euler_check(hilbert_series(gb, 7), t, 7)) CHECK(r == 0);
    REQUIRE_FALSE(t.blocks.empty());
    for (const auto& b : t.blocks) {
        if (b.rows < 1000) continue;
        CAPTURE(b.key);
        CHECK(b.max_column_nonzeros * 4 <= b.rows);
    }
}

TEST_CASE("multigrading keys are additive and constant on relations") {
    for (const auto& p : {u_g_mod_h(), u_g(4), mccool_cohomology(3)}) {
        CAPTURE(p.name());
        Multigrading mg = multigrading(p, 9);
        CHECK(mg.rank >= 1);
        for (const auto& r : p.relations()) {
            std::set<std::int64_t> keys;
            for (const auto& t : r.terms()) keys.insert(mg.key(t.word));
            CHECK(keys.size() == 1);
        }
        std::mt19937 rng(52);
        for (int k = 0; k < 50; ++k) {
            Word a = support::random_word(rng, p.generator_count(), 3), b = support::random_word(rng, p.generator_count(), 4);
            CHECK(mg.key(a * b) == mg.key(a) + mg.key(b));
        }
    }
    CHECK(multigrading(u_g_mod_h(), 9).rank == 4);
}

TEST_CASE("modular primes are deterministic, distinct and in range") {
    auto a = modular_primes(4, 7), b = modular_primes(4, 7);
    CHECK(a == b);
    CHECK(std::set<std::uint32_t>(a.begin(), a.end()).size() == 4);
    for (auto p : a) {
        CHECK(p > (1u << 30));
        CHECK(p < (1u << 31));
    }
    CHECK(modular_primes(2, 8) != a);
}

TEST_CASE("precondition errors") {
    Presentation p = u_g(3);
    auto gb = compute_gb(p, p.order(), 4);
    CHECK_THROWS_AS(betti_numbers(gb, 4, 4), Error);
    BettiOptions exact;
    exact.strategy = BettiStrategy::Exact;
    CHECK_THROWS_AS(betti_numbers(gb, 3, 5, exact), TruncationError);
    CHECK_THROWS_AS(betti_numbers(gb, 3, 6), TruncationError);
    Presentation cubic = parse_presentation("generators x y\nrelations\nx*y*x\n");
    CHECK_THROWS_AS(betti_numbers(compute_gb(cubic, cubic.order(), 4), 3, 4), RelationError);
    auto t = betti_numbers(gb, 3, 4);
    auto other = hilbert_series(compute_gb(u_g(2), u_g(2).order(), 4), 4);
    CHECK_THROWS_AS(euler_check(other, t, 4), Error);
    CHECK_THROWS_AS(euler_check(hilbert_series(gb, 3), t, 4), TruncationError);
}

TEST_CASE("modular run one degree past the basis matches a full-length basis") {
    for (const auto& p : {u_g_mod_h(), u_g(3), mccool_cohomology(3)}) {
        CAPTURE(p.name());
        auto shorter = compute_gb(p, p.order(), 5);
        auto full = compute_gb(p, p.order(), 6);
        BettiTable past = betti_numbers(shorter, 3, 6);
        BettiTable within = betti_numbers(full, 3, 6);
        CHECK(past.entries == within.entries);
        REQUIRE(past.top_dimension);
        CHECK(BigInt(static_cast<unsigned long>(*past.top_dimension)) == hilbert_series(full, 6)[6]);
        CHECK_FALSE(within.top_dimension);
    }
}
