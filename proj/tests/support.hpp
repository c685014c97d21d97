#pragma once

#include <random>
#include <string>
#include <vector>

#include "ncalg/presentation.hpp"

namespace support {

inline ncalg::Word random_word(std::mt19937& rng, std::size_t g, std::size_t degree) {
    std::uniform_int_distribution<ncalg::Letter> pick(0, static_cast<ncalg::Letter>(g - 1));
    std::vector<ncalg::Letter> w(degree);
    for (auto& l : w) l = pick(rng);
    return ncalg::Word(std::move(w));
}

inline ncalg::Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    return ncalg::Rational(num(rng), den(rng));
}

/// Up to `terms` terms with degrees in [0, max_degree].
inline ncalg::NCPolynomial random_polynomial(std::mt19937& rng, const ncalg::MonomialOrder& order,
                                             std::size_t max_degree, std::size_t terms) {
    std::uniform_int_distribution<std::size_t> deg(0, max_degree);
    std::vector<ncalg::Term> ts;
    for (std::size_t k = 0; k < terms; ++k) ts.push_back({random_word(rng, order.size(), deg(rng)), random_rational(rng)});
    return ncalg::NCPolynomial(order, std::move(ts));
}

inline ncalg::NCPolynomial random_homogeneous(std::mt19937& rng, const ncalg::MonomialOrder& order,
                                              std::size_t degree, std::size_t terms) {
    std::vector<ncalg::Term> ts;
    for (std::size_t k = 0; k < terms; ++k) ts.push_back({random_word(rng, order.size(), degree), random_rational(rng)});
    return ncalg::NCPolynomial(order, std::move(ts));
}

inline std::vector<std::string> letters(std::size_t g) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < g; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

/// Random quadratic presentation on g generators with r (nonzero) relations.
inline ncalg::Presentation random_quadratic(std::mt19937& rng, std::size_t g, std::size_t r) {
    ncalg::MonomialOrder order(ncalg::make_alphabet(letters(g)));
    std::vector<ncalg::NCPolynomial> rels;
    while (rels.size() < r) {
        auto f = random_homogeneous(rng, order, 2, 3);
        if (!f.is_zero()) rels.push_back(f);
    }
    return ncalg::Presentation("random", order, std::move(rels));
}

/// The built-ins small enough for exhaustive cross-checks.
inline std::vector<ncalg::Presentation> small_builtins() {
    return {ncalg::mccool_cohomology(2), ncalg::mccool_cohomology(3), ncalg::u_g(2), ncalg::u_g(3),
            ncalg::u_g_mod_h(), ncalg::u_g_mod_h_dual()};
}

}  // namespace support
