#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ncalg/groebner.hpp"

namespace ncalg {

using BigInt = mpz_class;

/// Graded dimensions a_0..a_D.
struct HilbertSeries {
    std::string algebra;
    std::vector<BigInt> coefficients;

    std::size_t max_degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    const BigInt& operator[](std::size_t d) const { return coefficients.at(d); }
    std::vector<std::string> to_strings() const;
    friend bool operator==(const HilbertSeries& a, const HilbertSeries& b) {
        return a.coefficients == b.coefficients;
    }
};

/// Counts normal words by dynamic programming over the obstruction automaton.
/// Throws TruncationError if max_degree exceeds the truncation.
HilbertSeries hilbert_series(const GroebnerBasis& gb, std::size_t max_degree);

/// a_d = g^d - rank of the span of all u*r*v of degree d, by exact row
/// reduction with no Groebner machinery.  Throws SizeGuardError when
/// g^max_degree > 10^7.
HilbertSeries brute_force_hilbert(const Presentation& p, std::size_t max_degree);

/// Normal-word counts of the completion over F_prime.  Each coefficient is an
/// upper bound for the rational dimension and equals it for all but finitely
/// many primes.  Throws Error when prime divides a coefficient denominator.
HilbertSeries modular_hilbert_series(const Presentation& p, const MonomialOrder& order, std::size_t max_degree,
                                     std::uint32_t prime, unsigned threads = 1);

enum class ReferenceKind {
    OnePlusNtPowNMinus1,  // (1 + n t)^(n-1)
    InvOneMinus4tSquared,  // 1 / (1 - 4t)^2
    InvOneMinus4tCubed,    // 1 / (1 - 4t)^3
    InvOneMinus3tSquared,  // 1 / (1 - 3t)^2
};

/// Coefficients of a closed form; `n` is used by OnePlusNtPowNMinus1 only.
HilbertSeries reference_series(ReferenceKind kind, std::size_t max_degree, int n = 0);

/// (1 + a t)^m and 1 / (1 - a t)^m, through max_degree.
std::vector<BigInt> binomial_power_series(long a, unsigned m, std::size_t max_degree);
std::vector<BigInt> inverse_power_series(long a, unsigned m, std::size_t max_degree);

}  // namespace ncalg
