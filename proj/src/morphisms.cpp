#include "ncalg/morphisms.hpp"

#include <algorithm>
#include <cctype>

#include "ncalg/errors.hpp"

namespace ncalg {

NCPolynomial MorphismSpec::apply(const NCPolynomial& f) const {
    if (!(f.order().alphabet() == source.alphabet())) throw AlphabetMismatch();
    NCPolynomial out(target.order());
    for (const auto& t : f.terms()) {
        NCPolynomial prod = NCPolynomial::constant(target.order(), t.coeff);
        for (Letter l : t.word) {
            prod = prod * images[l];
            if (prod.is_zero()) break;
        }
        out = out + prod;
    }
    return out;
}

std::string MorphismSpec::to_text() const {
    std::string s;
    for (Letter l = 0; l < source.generator_count(); ++l)
        s += source.alphabet().name(l) + " -> " + (images[l].is_zero() ? "0" : images[l].to_string()) + "\n";
    return s;
}

MorphismSpec make_morphism(std::string name, const Presentation& source, const Presentation& target,
                           std::vector<NCPolynomial> images) {
    if (images.size() != source.generator_count()) throw Error("one image per source generator is required");
    for (std::size_t l = 0; l < images.size(); ++l) {
        const auto& im = images[l];
        if (!(im.order().alphabet() == target.alphabet())) throw AlphabetMismatch();
        if (!im.is_zero() && im.degree() != std::optional<std::size_t>{1})
            throw Error("image of " + source.alphabet().name(static_cast<Letter>(l)) + " is not linear");
        images[l] = im.with_order(target.order());
    }
    return MorphismSpec{std::move(name), source, target, std::move(images)};
}

MorphismSpec parse_morphism(std::string_view text, const Presentation& source, const Presentation& target,
                            std::string name) {
    std::vector<std::optional<NCPolynomial>> images(source.generator_count());
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++number;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        const auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw ParseError("expected 'gen -> expr'", number, first + 1);
        std::string_view gen = line.substr(first, arrow - first);
        while (!gen.empty() && std::isspace(static_cast<unsigned char>(gen.back()))) gen.remove_suffix(1);
        auto letter = source.alphabet().find(gen);
        if (!letter) throw ParseError("unknown source generator '" + std::string(gen) + "'", number, first + 1);
        if (images[*letter]) throw Error("generator " + std::string(gen) + " is assigned twice");
        try {
            images[*letter] = parse_expression(line.substr(arrow + 2), target.order());
        } catch (const ParseError& e) {
            throw ParseError(e.message(), number, arrow + 2 + e.column());
        }
    }
    std::vector<NCPolynomial> out;
    for (Letter l = 0; l < images.size(); ++l) {
        if (!images[l]) throw Error("generator " + source.alphabet().name(l) + " has no image");
        out.push_back(std::move(*images[l]));
    }
    return make_morphism(std::move(name), source, target, std::move(out));
}

MorphismCheck verify_morphism(const MorphismSpec& m, const GroebnerBasis& target_gb) {
    if (!(target_gb.presentation().alphabet() == m.target.alphabet())) throw AlphabetMismatch();
    const std::size_t need = std::max<std::size_t>(2, m.source.max_relation_degree());
    if (target_gb.truncation_degree() < need)
        throw TruncationError("target basis must be truncated at degree >= " + std::to_string(need));
    MorphismCheck out;
    for (std::size_t i = 0; i < m.source.relations().size(); ++i) {
        NCPolynomial nf = target_gb.normal_form(m.apply(m.source.relations()[i]));
        if (!nf.is_zero()) {
            out.ok = false;
            out.relation = i;
            out.image_normal_form = std::move(nf);
            return out;
        }
    }
    return out;
}

MorphismSpec compose(const MorphismSpec& f, const MorphismSpec& g) {
    if (!(f.target == g.source))
        throw ChainMismatch("cannot compose: " + f.name + " lands in " + f.target.name() + ", " + g.name + " starts at " +
                            g.source.name());
    std::vector<NCPolynomial> images;
    for (const auto& im : f.images) images.push_back(g.apply(im));
    return MorphismSpec{g.name + "*" + f.name, f.source, g.target, std::move(images)};
}

SplittingCheck verify_splitting(const MorphismSpec& section, const MorphismSpec& retraction, const GroebnerBasis& gb,
                                const std::vector<std::string>& generators) {
    MorphismSpec c = compose(section, retraction);
    if (!(c.target == section.source)) throw ChainMismatch("retraction does not return to the section's source");
    if (!(gb.presentation().alphabet() == section.source.alphabet())) throw AlphabetMismatch();
    std::vector<Letter> letters;
    if (generators.empty()) {
        for (Letter l = 0; l < section.source.generator_count(); ++l) letters.push_back(l);
    } else {
        for (const auto& n : generators) letters.push_back(section.source.alphabet().at(n));
    }
    SplittingCheck out;
    for (Letter l : letters) {
        NCPolynomial im = gb.normal_form(c.images[l]);
        if (!(im == NCPolynomial::generator(gb.order(), l))) {
            out.ok = false;
            out.generator = section.source.alphabet().name(l);
            out.image = std::move(im);
            return out;
        }
    }
    return out;
}

MorphismSpec restrict_morphism(const MorphismSpec& m, const Presentation& source, const Presentation& target) {
    std::vector<NCPolynomial> images;
    for (Letter l = 0; l < source.generator_count(); ++l) {
        const std::string& nm = source.alphabet().name(l);
        const auto old = m.source.alphabet().find(nm);
        if (!old) throw Error("generator " + nm + " is not in the source of " + m.name);
        std::vector<Term> terms;
        for (const auto& t : m.images[*old].terms()) {
            const std::string& tn = m.target.alphabet().name(t.word[0]);
            const auto nl = target.alphabet().find(tn);
            if (!nl) throw Error("image of " + nm + " uses " + tn + ", which is not in " + target.name());
            terms.push_back({Word{*nl}, t.coeff});
        }
        images.emplace_back(target.order(), std::move(terms));
    }
    return MorphismSpec{m.name, source, target, std::move(images)};
}

MorphismSpec identity_morphism(const Presentation& p) {
    std::vector<NCPolynomial> images;
    for (Letter l = 0; l < p.generator_count(); ++l) images.push_back(NCPolynomial::generator(p.order(), l));
    return MorphismSpec{"id", p, p, std::move(images)};
}

namespace {

/// Builds a map between u_g families from an index rule; rule(i, j) returns
/// the target index pair or nothing for 0.
template <class Rule>
MorphismSpec index_map(std::string name, int n_src, int n_tgt, Rule rule) {
    Presentation src = u_g(n_src);
    Presentation tgt = u_g(n_tgt);
    std::vector<NCPolynomial> images;
    for (Letter l = 0; l < src.generator_count(); ++l) {
        const std::string& nm = src.alphabet().name(l);
        int i = 0, j = 0;
        // names are x<i><j> or x<i>_<j>
        if (auto us = nm.find('_'); us != std::string::npos) {
            i = std::stoi(nm.substr(1, us - 1));
            j = std::stoi(nm.substr(us + 1));
        } else {
            i = nm[1] - '0';
            j = nm[2] - '0';
        }
        auto to = rule(i, j);
        if (!to) {
            images.emplace_back(tgt.order());
        } else {
            images.push_back(tgt.gen(generator_name('x', to->first, to->second, n_tgt)));
        }
    }
    return MorphismSpec{std::move(name), std::move(src), std::move(tgt), std::move(images)};
}

}  // namespace

MorphismSpec inclusion_morphism(int n) {
    if (n < 2) throw Error("n must be at least 2");
    return index_map("i" + std::to_string(n), n, n + 1,
                     [](int i, int j) { return std::optional<std::pair<int, int>>({i, j}); });
}

MorphismSpec projection_morphism(int n) {
    if (n < 3) throw Error("n must be at least 3");
    return index_map("pi" + std::to_string(n), n, n - 1, [n](int i, int j) {
        return i == n || j == n ? std::nullopt : std::optional<std::pair<int, int>>({i, j});
    });
}

MorphismSpec fiber_retraction(int n) {
    if (n < 2) throw Error("n must be at least 2");
    return index_map("p" + std::to_string(n), n + 1, n, [n](int i, int j) -> std::optional<std::pair<int, int>> {
        if (j == n + 1 && i < n) return std::pair{i, n};
        if (i == n + 1 && j < n) return std::pair{n, j};
        return std::nullopt;
    });
}

MorphismSpec permutation_morphism(int n, const std::vector<int>& perm) {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k)
        if (static_cast<int>(sorted.size()) != n || sorted[static_cast<std::size_t>(k)] != k + 1)
            throw Error("not a permutation of 1..n");
    std::string name = "sigma";
    for (int v : perm) name += std::to_string(v);
    return index_map(name, n, n, [&perm](int i, int j) {
        return std::optional<std::pair<int, int>>(
            {perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]});
    });
}

}  // namespace ncalg
