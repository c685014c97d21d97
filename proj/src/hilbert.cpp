#include "ncalg/hilbert.hpp"

#include <algorithm>

#include "ncalg/detail/completion.hpp"
#include "ncalg/detail/sparse.hpp"
#include "ncalg/field.hpp"
#include "ncalg/errors.hpp"

namespace ncalg {

std::vector<std::string> HilbertSeries::to_strings() const {
    std::vector<std::string> out;
    for (const auto& c : coefficients) out.push_back(c.get_str());
    return out;
}

HilbertSeries hilbert_series(const GroebnerBasis& gb, std::size_t max_degree) {
    if (max_degree > gb.truncation_degree())
        throw TruncationError("requested degree " + std::to_string(max_degree) + " exceeds truncation " +
                              std::to_string(gb.truncation_degree()));
    HilbertSeries h;
    h.algebra = gb.presentation().name();
    const unsigned g = static_cast<unsigned>(gb.presentation().generator_count());
    const detail::Automaton* aut = gb.engine().automaton();
    h.coefficients.assign(max_degree + 1, 0);
    h.coefficients[0] = 1;
    if (!aut) {
        for (std::size_t d = 1; d <= max_degree; ++d) h.coefficients[d] = h.coefficients[d - 1] * g;
        return h;
    }
    std::vector<BigInt> cur(aut->states(), 0), nxt(aut->states(), 0);
    cur[0] = 1;
    for (std::size_t d = 1; d <= max_degree; ++d) {
        for (auto& v : nxt) v = 0;
        for (std::uint32_t s = 0; s < aut->states(); ++s) {
            if (cur[s] == 0) continue;
            for (unsigned c = 0; c < g; ++c) {
                const std::uint32_t t = aut->next(s, c);
                if (aut->match(t) < 0) nxt[t] += cur[s];
            }
        }
        std::swap(cur, nxt);
        for (const auto& v : cur) h.coefficients[d] += v;
    }
    return h;
}

HilbertSeries brute_force_hilbert(const Presentation& p, std::size_t max_degree) {
    const std::size_t g = p.generator_count();
    BigInt bound = 1;
    for (std::size_t d = 0; d < max_degree; ++d) bound *= static_cast<unsigned long>(g);
    if (bound > 10000000) throw SizeGuardError("g^max_degree exceeds 10^7");

    RationalField Q;
    HilbertSeries h;
    h.algebra = p.name();
    h.coefficients.assign(max_degree + 1, 0);
    std::vector<std::size_t> power(max_degree + 1, 1);
    for (std::size_t d = 1; d <= max_degree; ++d) power[d] = power[d - 1] * g;
    for (std::size_t d = 0; d <= max_degree; ++d) {
        const std::size_t n = power[d];
        // Echelon rows keyed by their largest column.
        std::vector<std::int32_t> pivot_of(n, -1);
        std::vector<detail::SparseVec<Rational>> pivots;
        detail::Accumulator<RationalField> acc(n, Q);
        std::vector<std::uint32_t> heap;
        for (const auto& r : p.relations()) {
            const std::size_t k = *r.degree();
            if (k > d) continue;
            for (std::size_t a = 0; a + k <= d; ++a) {
                const std::size_t b = d - k - a;
                for (std::size_t u = 0; u < power[a]; ++u) {
                    for (std::size_t v = 0; v < power[b]; ++v) {
                        for (const auto& t : r.terms()) {
                            std::size_t w = 0;
                            for (Letter l : t.word) w = w * g + l;
                            acc.add(Q, static_cast<std::uint32_t>((u * power[k] + w) * power[b] + v), t.coeff);
                        }
                        // reduce against the pivots, largest column first
                        heap.assign(acc.touched_list().begin(), acc.touched_list().end());
                        std::make_heap(heap.begin(), heap.end());
                        detail::SparseVec<Rational> rest;
                        while (!heap.empty()) {
                            std::pop_heap(heap.begin(), heap.end());
                            const std::uint32_t i = heap.back();
                            heap.pop_back();
                            if (acc.at(i).is_zero()) continue;
                            const std::int32_t pv = pivot_of[i];
                            if (pv < 0) {
                                rest.push(i, acc.at(i));
                                continue;
                            }
                            const Rational f = -acc.at(i);
                            acc.ref(i) = Rational();
                            const auto& row = pivots[static_cast<std::size_t>(pv)];
                            for (std::size_t q = 0; q + 1 < row.size(); ++q) {
                                const std::uint32_t j = row.idx[q];
                                if (!acc.touched(j)) {
                                    heap.push_back(j);
                                    std::push_heap(heap.begin(), heap.end());
                                }
                                acc.add(Q, j, f * row.val[q]);
                            }
                        }
                        acc.reset(Q);
                        if (rest.empty()) continue;
                        std::reverse(rest.idx.begin(), rest.idx.end());
                        std::reverse(rest.val.begin(), rest.val.end());
                        const Rational inv = rest.val.back().inverse();
                        for (auto& c : rest.val) c *= inv;
                        pivot_of[rest.idx.back()] = static_cast<std::int32_t>(pivots.size());
                        pivots.push_back(std::move(rest));
                    }
                }
            }
        }
        h.coefficients[d] = static_cast<unsigned long>(n - pivots.size());
    }
    return h;
}

std::vector<BigInt> binomial_power_series(long a, unsigned m, std::size_t max_degree) {
    std::vector<BigInt> out(max_degree + 1, 0);
    BigInt binom = 1;
    BigInt apow = 1;
    for (std::size_t d = 0; d <= max_degree && d <= m; ++d) {
        out[d] = binom * apow;
        binom = binom * static_cast<unsigned long>(m - d) / static_cast<unsigned long>(d + 1);
        apow *= a;
    }
    return out;
}

std::vector<BigInt> inverse_power_series(long a, unsigned m, std::size_t max_degree) {
    // coefficient of t^d in (1 - a t)^(-m) is C(d + m - 1, m - 1) a^d
    std::vector<BigInt> out(max_degree + 1, 0);
    if (m == 0) {
        out[0] = 1;
        return out;
    }
    BigInt apow = 1;
    for (std::size_t d = 0; d <= max_degree; ++d) {
        BigInt binom;
        mpz_bin_uiui(binom.get_mpz_t(), d + m - 1, m - 1);
        out[d] = binom * apow;
        apow *= a;
    }
    return out;
}

HilbertSeries reference_series(ReferenceKind kind, std::size_t max_degree, int n) {
    HilbertSeries h;
    switch (kind) {
        case ReferenceKind::OnePlusNtPowNMinus1:
            if (n < 1) throw Error("n must be at least 1");
            h.algebra = "(1+" + std::to_string(n) + "t)^" + std::to_string(n - 1);
            h.coefficients = binomial_power_series(n, static_cast<unsigned>(n - 1), max_degree);
            break;
        case ReferenceKind::InvOneMinus4tSquared:
            h.algebra = "1/(1-4t)^2";
            h.coefficients = inverse_power_series(4, 2, max_degree);
            break;
        case ReferenceKind::InvOneMinus4tCubed:
            h.algebra = "1/(1-4t)^3";
            h.coefficients = inverse_power_series(4, 3, max_degree);
            break;
        case ReferenceKind::InvOneMinus3tSquared:
            h.algebra = "1/(1-3t)^2";
            h.coefficients = inverse_power_series(3, 2, max_degree);
            break;
    }
    return h;
}

HilbertSeries modular_hilbert_series(const Presentation& p, const MonomialOrder& order, std::size_t max_degree,
                                     std::uint32_t prime, unsigned threads) {
    if (!(order.alphabet() == p.alphabet())) throw AlphabetMismatch();
    PrimeField F(prime);
    detail::Packing pk(p.generator_count());
    using C = detail::Completion<PrimeField>;
    std::vector<C::Relation> rels;
    for (const auto& r : p.relations()) {
        if (!r.degree()) throw RelationError("relation is not homogeneous: " + r.to_string());
        C::Relation er;
        er.degree = static_cast<unsigned>(*r.degree());
        try {
            for (const auto& t : r.terms()) {
                detail::Packed w = 0;
                for (Letter l : t.word) w = pk.append(w, order.weight(l));
                er.terms.emplace_back(w, F.from_rational(t.coeff));
            }
        } catch (const std::domain_error&) {
            throw Error(std::to_string(prime) + " divides a coefficient denominator");
        }
        std::sort(er.terms.begin(), er.terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::erase_if(er.terms, [](const auto& t) { return t.second == 0; });
        if (!er.terms.empty()) rels.push_back(std::move(er));
    }
    detail::EngineOptions eo;
    eo.threads = threads;
    C c(F, p.generator_count(), std::move(rels), eo);
    c.extend_to(static_cast<unsigned>(max_degree));
    HilbertSeries h;
    h.algebra = p.name();
    for (auto v : c.count_normal_words(static_cast<unsigned>(max_degree)))
        h.coefficients.emplace_back(static_cast<unsigned long>(v));
    return h;
}

}  // namespace ncalg
