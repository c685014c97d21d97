#pragma once

// Reference computations used only by the tests.  They share no algorithmic
// code with the library: words are plain base-g integers and ranks come from
// straightforward Gaussian elimination modulo a fixed prime.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "ncalg/presentation.hpp"

namespace oracle {

constexpr std::uint64_t kPrime = 2147483647ULL;  // 2^31 - 1

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= kPrime;
    while (e) {
        if (e & 1) r = r * b % kPrime;
        b = b * b % kPrime;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t residue(const ncalg::Rational& q) {
    mpq_class v;
    q.to_mpq(v.get_mpq_t());
    mpz_class n = v.get_num() % kPrime;
    if (n < 0) n += kPrime;
    mpz_class d = v.get_den() % kPrime;
    return n.get_ui() * mod_pow(d.get_ui(), kPrime - 2) % kPrime;
}

/// Sparse rows keyed by column; rank by elimination with pivots on the
/// smallest column.
class RankCounter {
public:
    void add(std::map<std::uint64_t, std::uint64_t> row) {
        while (!row.empty()) {
            auto [col, val] = *row.begin();
            auto it = pivots_.find(col);
            if (it == pivots_.end()) {
                const std::uint64_t inv = mod_pow(val, kPrime - 2);
                for (auto& [c, v] : row) v = v * inv % kPrime;
                pivots_.emplace(col, std::move(row));
                return;
            }
            for (const auto& [c, v] : it->second) {
                std::uint64_t& slot = row[c];
                slot = (slot + kPrime - v * val % kPrime) % kPrime;
                if (slot == 0) row.erase(c);
            }
        }
    }
    std::size_t rank() const { return pivots_.size(); }

private:
    std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> pivots_;
};

/// dim A_d = g^d - dim I_d, where I_d is spanned by all u r v of degree d.
inline std::vector<std::uint64_t> hilbert(const ncalg::Presentation& p, std::size_t max_degree) {
    const std::uint64_t g = p.generator_count();
    struct Rel {
        std::size_t degree;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;  // (base-g word, coefficient)
    };
    std::vector<Rel> rels;
    for (const auto& r : p.relations()) {
        Rel out{r.max_degree(), {}};
        for (const auto& t : r.terms()) {
            std::uint64_t w = 0;
            for (auto l : t.word) w = w * g + l;
            out.terms.emplace_back(w, residue(t.coeff));
        }
        rels.push_back(std::move(out));
    }
    std::vector<std::uint64_t> out{1};
    std::uint64_t power = 1;
    for (std::size_t d = 1; d <= max_degree; ++d) {
        power *= g;
        RankCounter rc;
        for (const auto& r : rels) {
            if (r.degree > d) continue;
            const std::size_t free = d - r.degree;
            for (std::size_t left = 0; left <= free; ++left) {
                std::uint64_t lcount = 1, rscale = 1;
                for (std::size_t k = 0; k < left; ++k) lcount *= g;
                for (std::size_t k = 0; k < free - left; ++k) rscale *= g;
                std::uint64_t mid = 1;
                for (std::size_t k = 0; k < r.degree; ++k) mid *= g;
                for (std::uint64_t u = 0; u < lcount; ++u)
                    for (std::uint64_t v = 0; v < rscale; ++v) {
                        std::map<std::uint64_t, std::uint64_t> row;
                        for (const auto& [w, c] : r.terms) row[(u * mid + w) * rscale + v] = c;
                        rc.add(std::move(row));
                    }
            }
        }
        out.push_back(power - rc.rank());
    }
    return out;
}

/// Coefficients of (1 + a t)^m through max_degree.
inline std::vector<mpz_class> binomial_power(long a, unsigned m, std::size_t max_degree) {
    std::vector<mpz_class> c(max_degree + 1, 0);
    c[0] = 1;
    for (unsigned k = 0; k < m; ++k)
        for (std::size_t d = max_degree; d >= 1; --d) c[d] += a * c[d - 1];
    return c;
}

/// Coefficients of 1 / (1 - a t)^m through max_degree.
inline std::vector<mpz_class> inverse_power(long a, unsigned m, std::size_t max_degree) {
    std::vector<mpz_class> c(max_degree + 1, 0);
    c[0] = 1;
    for (unsigned k = 0; k < m; ++k)
        for (std::size_t d = 1; d <= max_degree; ++d) c[d] += a * c[d - 1];
    return c;
}

}  // namespace oracle
