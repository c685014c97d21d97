#include "doctest.h"

#include "ncalg/errors.hpp"
#include "ncalg/hilbert.hpp"
#include "ncalg/quadratic.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace ncalg;

namespace {

std::vector<std::string> as_strings(const std::vector<mpz_class>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

std::vector<std::string> as_strings(const std::vector<std::uint64_t>& v) {
    std::vector<std::string> out;
    for (auto x : v) out.push_back(std::to_string(x));
    return out;
}

}  // namespace

TEST_CASE("automaton counts match the test oracle through degree 5") {
    for (const auto& p : support::small_builtins()) {
        CAPTURE(p.name());
        auto h = hilbert_series(compute_gb(p, p.order(), 5), 5);
        CHECK(h.to_strings() == as_strings(oracle::hilbert(p, 5)));
    }
}

TEST_CASE("automaton counts match the library brute force") {
    for (const auto& p : support::small_builtins()) {
        CAPTURE(p.name());
        CHECK(hilbert_series(compute_gb(p, p.order(), 4), 4) == brute_force_hilbert(p, 4));
    }
    std::mt19937 rng(31);
    for (int k = 0; k < 10; ++k) {
        Presentation p = support::random_quadratic(rng, 3, 2 + k % 4);
        CHECK(hilbert_series(compute_gb(p, p.order(), 5), 5) == brute_force_hilbert(p, 5));
    }
}

TEST_CASE("cohomology series is (1 + n t)^(n-1) including trailing zeros") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        Presentation p = mccool_cohomology(n);
        const std::size_t D = static_cast<std::size_t>(n);
        auto h = hilbert_series(compute_gb(p, p.order(), D), D);
        CHECK(h.to_strings() == as_strings(oracle::binomial_power(n, static_cast<unsigned>(n - 1), D)));
        CHECK(h[D] == 0);
    }
    CHECK(hilbert_series(compute_gb(mccool_cohomology(4), mccool_cohomology(4).order(), 4), 4).to_strings() ==
          std::vector<std::string>{"1", "12", "48", "64", "0"});
}

TEST_CASE("quotient series agrees with 1/(1-4t)^2 through degree 7") {
    Presentation p = u_g_mod_h();
    auto h = hilbert_series(compute_gb(p, p.order(), 7), 7);
    CHECK(h.to_strings() == as_strings(oracle::inverse_power(4, 2, 7)));
    CHECK(h.to_strings() ==
          std::vector<std::string>{"1", "8", "48", "256", "1280", "6144", "28672", "131072"});
}

TEST_CASE("reference series match the test oracle") {
    CHECK(reference_series(ReferenceKind::InvOneMinus4tCubed, 8).to_strings() ==
          as_strings(oracle::inverse_power(4, 3, 8)));
    CHECK(reference_series(ReferenceKind::InvOneMinus4tSquared, 8).to_strings() ==
          as_strings(oracle::inverse_power(4, 2, 8)));
    CHECK(reference_series(ReferenceKind::OnePlusNtPowNMinus1, 6, 5).to_strings() ==
          as_strings(oracle::binomial_power(5, 4, 6)));
}

TEST_CASE("dimension sanity: a_d <= g a_(d-1) and degree two matches the relation rank") {
    std::mt19937 rng(32);
    std::vector<Presentation> ps = support::small_builtins();
    for (int k = 0; k < 10; ++k) ps.push_back(support::random_quadratic(rng, 4, 1 + k));
    for (const auto& p : ps) {
        CAPTURE(p.name());
        auto h = hilbert_series(compute_gb(p, p.order(), 4), 4);
        const std::size_t g = p.generator_count();
        CHECK(h[0] == 1);
        CHECK(h[1] == static_cast<long>(g));
        for (std::size_t d = 1; d <= 4; ++d) CHECK(h[d] <= static_cast<long>(g) * h[d - 1]);
        CHECK(h[2] == static_cast<long>(g * g - quadratic_data(p).rank()));
    }
}

TEST_CASE("free algebra series and guards") {
    Presentation f = free_algebra({"x", "y"});
    auto gb = compute_gb(f, f.order(), 4);
    CHECK(hilbert_series(gb, 4).to_strings() == std::vector<std::string>{"1", "2", "4", "8", "16"});
    CHECK_THROWS_AS(hilbert_series(gb, 5), TruncationError);
    CHECK_THROWS_AS(brute_force_hilbert(u_g(5), 6), SizeGuardError);
}

TEST_CASE("modular counts agree with rational counts for large primes") {
    for (const auto& p : support::small_builtins()) {
        CAPTURE(p.name());
        auto gb = compute_gb(p, p.order(), 6);
        for (std::uint32_t prime : {2147483629u, 1000000007u})
            CHECK(modular_hilbert_series(p, p.order(), 6, prime) == hilbert_series(gb, 6));
    }
    // 1/3 has no residue mod 3.
    auto third = parse_presentation("generators x y\nrelations\nx*y - 1/3*y*x\n");
    CHECK_THROWS_AS(modular_hilbert_series(third, third.order(), 3, 3), Error);
}
