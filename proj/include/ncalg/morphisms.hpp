#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncalg/groebner.hpp"

namespace ncalg {

/// An algebra map given on generators; every image is linear (or zero) in
/// the target generators.
struct MorphismSpec {
    std::string name;
    Presentation source;
    Presentation target;
    std::vector<NCPolynomial> images;  // by source letter, over target.order()

    /// Substitutes the images into f (a polynomial over the source alphabet).
    NCPolynomial apply(const NCPolynomial& f) const;
    /// One `gen -> expr` line per source generator.
    std::string to_text() const;
};

/// Throws Error unless every source generator gets exactly one linear image.
MorphismSpec make_morphism(std::string name, const Presentation& source, const Presentation& target,
                           std::vector<NCPolynomial> images);

/// Parses lines `gen -> expr` ('#' starts a comment).  Throws ParseError on
/// bad syntax or unknown names and Error on missing or repeated generators.
MorphismSpec parse_morphism(std::string_view text, const Presentation& source, const Presentation& target,
                            std::string name = "map");

struct MorphismCheck {
    bool ok = true;
    /// First relation whose image does not reduce to zero.
    std::optional<std::size_t> relation;
    std::optional<NCPolynomial> image_normal_form;
};

/// True iff every source relation maps into the ideal of target_gb.
/// Throws AlphabetMismatch and TruncationError.
MorphismCheck verify_morphism(const MorphismSpec& m, const GroebnerBasis& target_gb);

/// g after f.  Throws ChainMismatch unless f's target is g's source.
MorphismSpec compose(const MorphismSpec& f, const MorphismSpec& g);

struct SplittingCheck {
    bool ok = true;
    std::optional<std::string> generator;  // first generator not fixed
    std::optional<NCPolynomial> image;
};

/// Checks that retraction after section fixes each generator of the section's
/// source, or only those named in `generators` when it is nonempty.  `gb` is
/// a basis of the section's source.  Throws ChainMismatch.
SplittingCheck verify_splitting(const MorphismSpec& section, const MorphismSpec& retraction, const GroebnerBasis& gb,
                                const std::vector<std::string>& generators = {});

/// The same assignment between presentations on subsets of the generators,
/// matched by name.  Throws Error if an image leaves the new target.
MorphismSpec restrict_morphism(const MorphismSpec& m, const Presentation& source, const Presentation& target);

MorphismSpec identity_morphism(const Presentation& p);
/// x_ij -> x_ij from u_g(n) into u_g(n+1).
MorphismSpec inclusion_morphism(int n);
/// u_g(n) -> u_g(n-1), killing x_in and x_ni.
MorphismSpec projection_morphism(int n);
/// u_g(n+1) -> u_g(n): x_{i,n+1} -> x_in, x_{n+1,j} -> x_nj, all else 0.
MorphismSpec fiber_retraction(int n);
/// x_ij -> x_{s(i) s(j)} on u_g(n); `perm` lists s(1)..s(n).
MorphismSpec permutation_morphism(int n, const std::vector<int>& perm);

}  // namespace ncalg
