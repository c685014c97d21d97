#include "ncalg/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "ncalg/errors.hpp"

namespace ncalg {

GroebnerBasis::GroebnerBasis(std::shared_ptr<const Presentation> p, MonomialOrder order)
    : presentation_(std::move(p)), order_(std::move(order)), letter_of_code_(order_.size()) {
    for (Letter l = 0; l < order_.size(); ++l) letter_of_code_[order_.weight(l)] = l;
}

detail::Packed GroebnerBasis::pack(const Word& w) const {
    detail::Packed out = 0;
    for (Letter l : w) out = engine_->packing().append(out, code(l));
    return out;
}

Word GroebnerBasis::unpack(detail::Packed w, std::size_t degree) const {
    std::vector<Letter> letters(degree);
    const auto& pk = engine_->packing();
    for (std::size_t i = 0; i < degree; ++i)
        letters[i] = letter(pk.letter(w, static_cast<unsigned>(degree), static_cast<unsigned>(i)));
    return Word(std::move(letters));
}

std::size_t GroebnerBasis::size() const {
    std::size_t n = 0;
    for (std::size_t d = 2; d <= truncation_degree(); ++d) n += size(d);
    return n;
}

std::size_t GroebnerBasis::size(std::size_t degree) const {
    if (degree > truncation_degree()) throw TruncationError("degree exceeds truncation");
    return engine_->level(static_cast<unsigned>(degree)).obstructions.size();
}

NCPolynomial GroebnerBasis::element_of(unsigned degree, std::uint32_t id) const {
    const auto& lvl = engine_->level(degree);
    std::vector<Term> terms;
    terms.push_back({unpack(lvl.obstructions[id], degree), Rational(1)});
    for (const auto& [w, c] : lvl.tails[id]) terms.push_back({unpack(w, degree), -c});
    return NCPolynomial(order_, std::move(terms));
}

std::vector<NCPolynomial> GroebnerBasis::elements(std::size_t degree) const {
    std::vector<NCPolynomial> out;
    const std::size_t n = size(degree);
    out.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(element_of(static_cast<unsigned>(degree), i));
    return out;
}

std::vector<NCPolynomial> GroebnerBasis::elements() const {
    std::vector<NCPolynomial> out;
    for (std::size_t d = 2; d <= truncation_degree(); ++d) {
        auto e = elements(d);
        out.insert(out.end(), std::make_move_iterator(e.begin()), std::make_move_iterator(e.end()));
    }
    return out;
}

std::vector<Word> GroebnerBasis::obstructions(std::size_t degree) const {
    if (degree > truncation_degree()) throw TruncationError("degree exceeds truncation");
    std::vector<Word> out;
    for (auto w : engine_->level(static_cast<unsigned>(degree)).obstructions) out.push_back(unpack(w, degree));
    return out;
}

std::vector<Word> GroebnerBasis::obstructions() const {
    std::vector<Word> out;
    for (std::size_t d = 2; d <= truncation_degree(); ++d) {
        auto o = obstructions(d);
        out.insert(out.end(), o.begin(), o.end());
    }
    return out;
}

std::vector<Word> GroebnerBasis::normal_words(std::size_t degree) const {
    if (degree > truncation_degree()) throw TruncationError("degree exceeds truncation");
    std::vector<Word> out;
    const detail::Automaton* aut = engine_->automaton();
    const unsigned g = static_cast<unsigned>(order_.size());
    // Depth-first in letter-code order, which is ascending deg-lex.
    std::vector<unsigned> codes;
    std::vector<std::uint32_t> states{0};
    std::function<void()> walk = [&]() {
        if (codes.size() == degree) {
            std::vector<Letter> letters;
            for (unsigned c : codes) letters.push_back(letter(c));
            out.emplace_back(std::move(letters));
            return;
        }
        for (unsigned c = 0; c < g; ++c) {
            std::uint32_t t = 0;
            if (aut) {
                t = aut->next(states.back(), c);
                if (aut->match(t) >= 0) continue;
            }
            codes.push_back(c);
            states.push_back(t);
            walk();
            codes.pop_back();
            states.pop_back();
        }
    };
    walk();
    return out;
}

std::size_t GroebnerBasis::normal_word_count(std::size_t degree) const {
    if (degree > truncation_degree()) throw TruncationError("degree exceeds truncation");
    return static_cast<std::size_t>(engine_->count_normal_words(static_cast<unsigned>(degree)).back());
}

NCPolynomial GroebnerBasis::reduce(const NCPolynomial& f) const {
    if (!(f.order().alphabet() == order_.alphabet())) throw AlphabetMismatch();
    if (f.max_degree() > engine_->packing().max_length()) throw SizeGuardError("polynomial degree too large");
    std::map<std::size_t, Engine::Poly> parts;
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        if (t.word.degree() < 2) {
            out.push_back(t);
            continue;
        }
        parts[t.word.degree()].emplace_back(pack(t.word), t.coeff);
    }
    for (auto& [d, poly] : parts) {
        std::sort(poly.begin(), poly.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [w, c] : engine_->normal_form(static_cast<unsigned>(d), poly)) out.push_back({unpack(w, d), c});
    }
    return NCPolynomial(f.order(), std::move(out));
}

NCPolynomial GroebnerBasis::normal_form(const NCPolynomial& f) const {
    if (f.max_degree() > truncation_degree())
        throw TruncationError("degree " + std::to_string(f.max_degree()) + " exceeds truncation " +
                              std::to_string(truncation_degree()));
    return reduce(f);
}

NCPolynomial normal_form(const GroebnerBasis& gb, const NCPolynomial& f) { return gb.normal_form(f); }

GroebnerBasis compute_gb(const Presentation& p, const MonomialOrder& order, std::size_t max_degree,
                         const GroebnerOptions& options) {
    if (!(order.alphabet() == p.alphabet())) throw AlphabetMismatch();
    if (max_degree < 1) throw TruncationError("truncation degree must be at least 1");
    if (max_degree < p.max_relation_degree())
        throw TruncationError("truncation degree " + std::to_string(max_degree) + " is below relation degree " +
                              std::to_string(p.max_relation_degree()));
    const detail::Packing packing(static_cast<unsigned>(p.generator_count()));
    if (max_degree > packing.max_length())
        throw SizeGuardError("degree " + std::to_string(max_degree) + " exceeds the supported word length " +
                             std::to_string(packing.max_length()));

    GroebnerBasis gb(std::make_shared<const Presentation>(p), order);
    std::vector<GroebnerBasis::Engine::Relation> rels;
    for (const auto& r : p.relations()) {
        GroebnerBasis::Engine::Relation er;
        er.degree = static_cast<unsigned>(*r.degree());
        for (const auto& t : r.terms()) {
            detail::Packed w = 0;
            for (Letter l : t.word) w = packing.append(w, order.weight(l));
            er.terms.emplace_back(w, t.coeff);
        }
        rels.push_back(std::move(er));
    }
    detail::EngineOptions eo;
    eo.threads = std::max(1u, options.threads);
    eo.reverse_processing = options.reverse_processing;
    eo.on_degree = options.progress;
    auto engine = std::make_shared<GroebnerBasis::Engine>(RationalField{}, packing.generators, std::move(rels), eo);
    engine->extend_to(static_cast<unsigned>(max_degree));

    gb.stats_ = engine->stats();
    gb.engine_ = std::move(engine);
    return gb;
}

std::vector<Ambiguity> find_ambiguities(const std::vector<Word>& obstructions, std::size_t degree) {
    std::vector<Ambiguity> out;
    for (std::size_t i = 0; i < obstructions.size(); ++i) {
        const Word& a = obstructions[i];
        for (std::size_t j = 0; j < obstructions.size(); ++j) {
            const Word& b = obstructions[j];
            if (a.empty() || b.empty()) continue;
            // inclusion: b inside a (a itself at offset 0 excluded)
            if (a.degree() == degree && b.degree() <= a.degree()) {
                for (std::size_t pos = 0; pos + b.degree() <= a.degree(); ++pos) {
                    if (i == j && pos == 0) continue;
                    if (std::equal(b.begin(), b.end(), a.begin() + static_cast<std::ptrdiff_t>(pos)))
                        out.push_back({i, j, a, 0, pos, true});
                }
            }
            // overlap: a = p s, b = s q with s a nonempty proper factor of both
            for (std::size_t s = 1; s < a.degree() && s < b.degree(); ++s) {
                if (a.degree() + b.degree() - s != degree) continue;
                if (!std::equal(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(s),
                                a.end() - static_cast<std::ptrdiff_t>(s)))
                    continue;
                out.push_back({i, j, a * b.suffix(b.degree() - s), 0, a.degree() - s, false});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Ambiguity& x, const Ambiguity& y) {
        return std::tie(x.word, x.first, x.second, x.first_offset, x.second_offset, x.inclusion) <
               std::tie(y.word, y.first, y.second, y.first_offset, y.second_offset, y.inclusion);
    });
    return out;
}

}  // namespace ncalg
