#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncalg/groebner.hpp"
#include "ncalg/hilbert.hpp"

namespace ncalg {

/// The finest Z^m-grading for which every relation is homogeneous, folded into
/// one integer key per generator so that the key of a word (the sum over its
/// letters) separates multidegrees of words up to a degree bound.
struct Multigrading {
    std::size_t rank = 1;                 // m, at least 1 (total degree)
    std::size_t used = 1;                 // components kept in the key
    std::vector<std::int64_t> letter_key;  // by Letter
    std::vector<std::vector<std::int64_t>> components;  // m x g integer basis

    std::int64_t key(const Word& w) const;
};

/// When the full grading does not fit into 63 bits for words up to
/// max_degree, trailing components are dropped; a coarser grading is still a
/// grading.
Multigrading multigrading(const Presentation& p, std::size_t max_degree);

enum class BettiStrategy { Exact, Modular };

struct BettiOptions {
    BettiStrategy strategy = BettiStrategy::Modular;
    std::uint64_t seed = 0x6e63616c67ULL;
    /// Recompute internal degrees <= this exactly and compare (modular only).
    std::size_t exact_recheck_degree = 0;
    /// On an unlucky prime or a disagreement, rerun with exact arithmetic
    /// instead of throwing ModularDisagreement.
    bool exact_fallback = true;
    /// Eliminate every multidegree block through this internal degree, not
    /// only the blocks the Hilbert series predicts to carry kernel.
    std::size_t full_elimination_degree = 6;
    unsigned threads = 1;
    std::function<void(const std::string&)> progress;
};

/// One multidegree block of the degree-j part of the second differential.
struct BlockStats {
    std::size_t internal_degree = 0;
    std::int64_t key = 0;
    std::size_t columns = 0;
    std::size_t rows = 0;
    std::size_t kernel = 0;
    std::size_t max_column_nonzeros = 0;
    std::size_t products = 0;      // left multiples of lower kernel landing here
    std::size_t product_rank = 0;
};

struct BettiTable {
    std::string algebra;
    std::size_t max_i = 0;
    std::size_t max_j = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> entries;
    BettiStrategy strategy = BettiStrategy::Modular;
    std::vector<std::uint32_t> primes;
    /// Highest internal degree rechecked with exact arithmetic (0 = none).
    std::size_t exact_recheck_degree = 0;
    bool fell_back_to_exact = false;
    /// dim A_max_j from the modular bases when max_j is one past the
    /// truncation of the rational basis.
    std::optional<std::uint64_t> top_dimension;
    std::vector<BlockStats> blocks;

    bool known(std::size_t i, std::size_t j) const { return entries.count({i, j}) > 0; }
    /// 0 for entries outside the computed range.
    std::uint64_t at(std::size_t i, std::size_t j) const;
    /// "exact-rational" or "modular(p1,p2)".
    std::string strategy_tag() const;
};

/// Graded Betti numbers dim Tor_{i,j}(k,k) for i <= max_i <= 3 and j <= max_j,
/// from the start of the minimal free resolution of the trivial left module.
/// Requires a quadratic presentation and a basis truncated at >= max_j, or at
/// max_j - 1 under the modular strategy (no exact fallback then).
BettiTable betti_numbers(const GroebnerBasis& gb, std::size_t max_i, std::size_t max_j,
                         const BettiOptions& options = {});

/// `count` distinct primes in (2^30, 2^31), determined by the seed.
std::vector<std::uint32_t> modular_primes(std::size_t count, std::uint64_t seed);

/// Coefficients of h(t) * sum_i (-1)^i sum_j Tor_{i,j} t^j - 1 through
/// max_degree, using the entries present in the table.
std::vector<BigInt> euler_check(const HilbertSeries& h, const BettiTable& b, std::size_t max_degree);

}  // namespace ncalg
