#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "ncalg/detail/completion.hpp"
#include "ncalg/field.hpp"
#include "ncalg/presentation.hpp"

namespace ncalg {

using detail::DegreeStats;

struct GroebnerOptions {
    unsigned threads = 1;
    /// Process S-polynomials in reverse order; the result must not change.
    bool reverse_processing = false;
    /// Called after each degree completes.
    std::function<void(const DegreeStats&)> progress;
};

/// Interreduced monic two-sided Groebner basis of a homogeneous ideal,
/// truncated at a degree bound.  Immutable once computed.
class GroebnerBasis {
public:
    using Engine = detail::Completion<RationalField>;

    const Presentation& presentation() const { return *presentation_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t truncation_degree() const { return engine_->degree(); }

    /// Number of basis elements of degree <= truncation.
    std::size_t size() const;
    std::size_t size(std::size_t degree) const;
    /// Elements sorted by degree, then by leading word (ascending).
    std::vector<NCPolynomial> elements() const;
    std::vector<NCPolynomial> elements(std::size_t degree) const;
    /// Leading words, in the same order as elements().
    std::vector<Word> obstructions() const;
    std::vector<Word> obstructions(std::size_t degree) const;

    /// Normal words of one degree, ascending in the order.  Enumerates them
    /// all; use normal_word_count for large degrees.
    std::vector<Word> normal_words(std::size_t degree) const;
    std::size_t normal_word_count(std::size_t degree) const;

    /// Reduced form of f; throws TruncationError if deg f exceeds the truncation.
    NCPolynomial normal_form(const NCPolynomial& f) const;
    /// Rewriting by the basis elements without the degree check; for f beyond
    /// the truncation the result is reduced but not necessarily canonical.
    NCPolynomial reduce(const NCPolynomial& f) const;

    const std::vector<DegreeStats>& stats() const { return stats_; }

    // Internal representation, shared with the hilbert and resolution modules.
    const Engine& engine() const { return *engine_; }
    detail::Packed pack(const Word& w) const;
    Word unpack(detail::Packed w, std::size_t degree) const;
    /// Engine letter code of a generator and back (codes follow the order).
    unsigned code(Letter l) const { return order_.weight(l); }
    Letter letter(unsigned code) const { return letter_of_code_[code]; }

private:
    friend GroebnerBasis compute_gb(const Presentation&, const MonomialOrder&, std::size_t, const GroebnerOptions&);
    GroebnerBasis(std::shared_ptr<const Presentation> p, MonomialOrder order);

    NCPolynomial element_of(unsigned degree, std::uint32_t id) const;

    std::shared_ptr<const Presentation> presentation_;
    MonomialOrder order_;
    std::vector<Letter> letter_of_code_;
    std::shared_ptr<const Engine> engine_;
    std::vector<DegreeStats> stats_;
};

/// Completes the relations of p to a Groebner basis valid through max_degree.
/// Throws TruncationError if max_degree is below a relation degree,
/// AlphabetMismatch if the order is over another alphabet, and SizeGuardError
/// if words of length max_degree cannot be packed.
GroebnerBasis compute_gb(const Presentation& p, const MonomialOrder& order, std::size_t max_degree,
                         const GroebnerOptions& options = {});

NCPolynomial normal_form(const GroebnerBasis& gb, const NCPolynomial& f);

/// A word carrying two occurrences of obstructions.  For an overlap the first
/// occurrence starts at 0 and the second ends at the end of the word; for an
/// inclusion the second lies inside the first.
struct Ambiguity {
    std::size_t first = 0;   // index into the obstruction list
    std::size_t second = 0;
    Word word;
    std::size_t first_offset = 0;
    std::size_t second_offset = 0;
    bool inclusion = false;

    friend bool operator==(const Ambiguity&, const Ambiguity&) = default;
};

/// All overlap and inclusion ambiguities whose word has the given degree,
/// sorted lexicographically by word (letter indices), then by element indices
/// and offsets.
std::vector<Ambiguity> find_ambiguities(const std::vector<Word>& obstructions, std::size_t degree);

}  // namespace ncalg
