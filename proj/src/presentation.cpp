#include "ncalg/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ncalg/errors.hpp"
#include "ncalg/linalg.hpp"

namespace ncalg {

Presentation::Presentation(std::string name, MonomialOrder order, std::vector<NCPolynomial> relations,
                           std::string source)
    : name_(std::move(name)), order_(std::move(order)), relations_(std::move(relations)), source_(std::move(source)) {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        const auto& r = relations_[i];
        if (!(r.order().alphabet() == order_.alphabet())) throw AlphabetMismatch();
        if (r.is_zero()) throw RelationError("relation " + std::to_string(i + 1) + " is zero");
        if (!r.is_homogeneous()) throw RelationError("relation " + std::to_string(i + 1) + " is inhomogeneous");
        if (*r.degree() < 2) throw RelationError("relation " + std::to_string(i + 1) + " has degree < 2");
        if (!(r.order() == order_)) relations_[i] = r.with_order(order_);
    }
}

std::size_t Presentation::max_relation_degree() const {
    std::size_t d = 0;
    for (const auto& r : relations_) d = std::max(d, *r.degree());
    return d;
}

bool Presentation::is_quadratic() const {
    return std::all_of(relations_.begin(), relations_.end(), [](const auto& r) { return *r.degree() == 2; });
}

NCPolynomial Presentation::gen(std::string_view name) const {
    return NCPolynomial::generator(order_, alphabet().at(name));
}

std::string Presentation::to_text() const {
    std::ostringstream out;
    out << "algebra " << name_ << " over Q\n";
    out << "generators";
    for (const auto& n : alphabet().names()) out << ' ' << n;
    out << "\nrelations\n";
    for (const auto& r : relations_) out << r.to_string() << '\n';
    return out.str();
}

bool operator==(const Presentation& a, const Presentation& b) {
    return a.name_ == b.name_ && a.alphabet() == b.alphabet() && a.relations_ == b.relations_;
}

// ---------------------------------------------------------------------------
// DSL parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Recursive-descent parser for one relation line.
class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t line, std::size_t col0, const MonomialOrder& order)
        : text_(text), line_(line), col0_(col0), order_(order) {}

    NCPolynomial parse_all() {
        NCPolynomial e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col0_ + pos_ + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NCPolynomial expr() {
        bool neg = accept('-');
        if (!neg) accept('+');
        NCPolynomial acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                break;
            }
        }
        return acc;
    }

    NCPolynomial term() {
        skip_ws();
        NCPolynomial acc = NCPolynomial::constant(order_, Rational(1));
        bool need_factor = true;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                std::size_t dstart = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                if (dstart == pos_) fail("expected denominator");
            }
            Rational c;
            try {
                c = Rational::parse(text_.substr(start, pos_ - start));
            } catch (const std::invalid_argument& e) {
                pos_ = start;
                fail(e.what());
            }
            acc = c * acc;
            need_factor = accept('*');
        }
        if (need_factor) {
            acc = acc * factor();
            while (accept('*')) acc = acc * factor();
        }
        return acc;
    }

    NCPolynomial factor() {
        skip_ws();
        if (accept('[')) {
            NCPolynomial a = expr();
            expect(',');
            NCPolynomial b = expr();
            expect(']');
            return commutator(a, b);
        }
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected generator, number or '['");
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        auto letter = order_.alphabet().find(name);
        if (!letter) {
            pos_ = start;
            fail("unknown generator '" + std::string(name) + "'");
        }
        NCPolynomial g = NCPolynomial::generator(order_, *letter);
        if (accept('^')) {
            skip_ws();
            std::size_t estart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (estart == pos_) fail("expected exponent");
            int e = std::stoi(std::string(text_.substr(estart, pos_ - estart)));
            if (e < 1) fail("exponent must be positive");
            NCPolynomial p = g;
            for (int i = 1; i < e; ++i) p = p * g;
            return p;
        }
        return g;
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t col0_;
    const MonomialOrder& order_;
    std::size_t pos_ = 0;
};

struct Line {
    std::size_t number;
    std::size_t indent;
    std::string_view text;
};

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s.front())) return false;
    return std::all_of(s.begin(), s.end(), ident_char);
}

}  // namespace

NCPolynomial parse_expression(std::string_view text, const MonomialOrder& order) {
    return ExprParser(text, 1, 0, order).parse_all();
}

Presentation parse_presentation(std::string_view text, std::string source) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::size_t indent = 0;
        while (indent < raw.size() && std::isspace(static_cast<unsigned char>(raw[indent]))) ++indent;
        std::string_view body = raw.substr(indent);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
        if (!body.empty()) lines.push_back({number, indent, body});
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }

    std::string name = "unnamed";
    std::optional<std::vector<std::string>> generators;
    std::size_t i = 0;
    if (i < lines.size() && lines[i].text.substr(0, 8) == "algebra ") {
        auto words = split_words(lines[i].text);
        if (words.size() != 4 || words[2] != "over" || words[3] != "Q")
            throw ParseError("expected 'algebra <name> over Q'", lines[i].number, lines[i].indent + 1);
        name = words[1];
        ++i;
    }
    if (i < lines.size() && (lines[i].text == "generators" || lines[i].text.substr(0, 11) == "generators ")) {
        auto words = split_words(lines[i].text);
        words.erase(words.begin());
        for (const auto& w : words)
            if (!is_identifier(w)) throw ParseError("invalid generator name '" + w + "'", lines[i].number, lines[i].indent + 1);
        generators = std::move(words);
        ++i;
    }
    if (i >= lines.size() || lines[i].text != "relations") {
        std::size_t ln = i < lines.size() ? lines[i].number : number;
        std::size_t col = i < lines.size() ? lines[i].indent + 1 : 1;
        throw ParseError("expected 'relations'", ln, col);
    }
    ++i;

    if (!generators) {
        // Collect identifiers in order of first appearance.
        std::vector<std::string> seen;
        for (std::size_t k = i; k < lines.size(); ++k) {
            std::string_view t = lines[k].text;
            for (std::size_t p = 0; p < t.size();) {
                if (ident_start(t[p]) && (p == 0 || !ident_char(t[p - 1]))) {
                    std::size_t q = p;
                    while (q < t.size() && ident_char(t[q])) ++q;
                    std::string id(t.substr(p, q - p));
                    if (std::find(seen.begin(), seen.end(), id) == seen.end()) seen.push_back(id);
                    p = q;
                } else {
                    ++p;
                }
            }
        }
        generators = std::move(seen);
    }

    MonomialOrder order{std::make_shared<const Alphabet>([&] {
        try {
            return Alphabet(*generators);
        } catch (const Error& e) {
            throw ParseError(e.what(), 2, 1);
        }
    }())};

    std::vector<NCPolynomial> relations;
    for (; i < lines.size(); ++i) {
        NCPolynomial r = ExprParser(lines[i].text, lines[i].number, lines[i].indent, order).parse_all();
        if (r.is_zero()) throw RelationError("line " + std::to_string(lines[i].number) + ": zero relation");
        if (!r.is_homogeneous()) throw RelationError("line " + std::to_string(lines[i].number) + ": inhomogeneous relation");
        if (*r.degree() < 2) throw RelationError("line " + std::to_string(lines[i].number) + ": relation of degree < 2");
        relations.push_back(std::move(r));
    }
    return Presentation(name, order, std::move(relations), std::move(source));
}

// ---------------------------------------------------------------------------
// Built-in families

std::string generator_name(char prefix, int i, int j, int n) {
    std::string s(1, prefix);
    s += std::to_string(i);
    if (n >= 10) s += '_';
    s += std::to_string(j);
    return s;
}

namespace {

struct IndexedAlphabet {
    MonomialOrder order;
    std::vector<std::vector<Letter>> idx;  // idx[i][j], 1-based

    NCPolynomial g(int i, int j) const { return NCPolynomial::generator(order, idx[i][j]); }
};

IndexedAlphabet pair_alphabet(char prefix, int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::string> names;
    std::vector<std::vector<Letter>> idx(static_cast<std::size_t>(n) + 1, std::vector<Letter>(static_cast<std::size_t>(n) + 1, 0));
    for (auto [i, j] : pairs) {
        idx[i][j] = static_cast<Letter>(names.size());
        names.push_back(generator_name(prefix, i, j, n));
    }
    return IndexedAlphabet{MonomialOrder(make_alphabet(std::move(names))), std::move(idx)};
}

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) out.emplace_back(i, j);
    return out;
}

void add_exterior_relations(const MonomialOrder& order, std::vector<NCPolynomial>& rels) {
    const auto g = static_cast<Letter>(order.size());
    for (Letter a = 0; a < g; ++a) rels.push_back(NCPolynomial::monomial(order, Word{a, a}));
    for (Letter a = 0; a < g; ++a)
        for (Letter b = a + 1; b < g; ++b)
            rels.push_back(NCPolynomial(order, {Term{Word{a, b}, 1}, Term{Word{b, a}, 1}}));
}

}  // namespace

Presentation mccool_cohomology(int n) {
    if (n < 2) throw Error("mccool_cohomology requires n >= 2");
    auto al = pair_alphabet('a', n, all_pairs(n));
    std::vector<NCPolynomial> rels;
    add_exterior_relations(al.order, rels);
    for (auto [i, j] : all_pairs(n)) rels.push_back(al.g(i, j) * al.g(j, i));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (i == j || j == k || i == k) continue;
                rels.push_back(al.g(k, j) * al.g(j, i) - al.g(k, j) * al.g(k, i) + al.g(i, j) * al.g(k, i));
            }
    return Presentation("mccool" + std::to_string(n), al.order, std::move(rels), "builtin:mccool n=" + std::to_string(n));
}

Presentation u_g(int n) {
    if (n < 2) throw Error("u_g requires n >= 2");
    auto al = pair_alphabet('x', n, all_pairs(n));
    std::vector<NCPolynomial> rels;
    auto distinct = [](std::initializer_list<int> v) {
        for (auto a = v.begin(); a != v.end(); ++a)
            for (auto b = a + 1; b != v.end(); ++b)
                if (*a == *b) return false;
        return true;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                if (distinct({i, j, k})) rels.push_back(commutator(al.g(i, j), al.g(i, k) + al.g(j, k)));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                if (distinct({i, j, k})) rels.push_back(commutator(al.g(i, k), al.g(j, k)));
    auto pairs = all_pairs(n);
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            auto [i, j] = pairs[a];
            auto [k, l] = pairs[b];
            if (distinct({i, j, k, l})) rels.push_back(commutator(al.g(i, j), al.g(k, l)));
        }
    return Presentation("ug" + std::to_string(n), al.order, std::move(rels), "builtin:ug n=" + std::to_string(n));
}

namespace {

const std::vector<std::pair<int, int>>& quotient_pairs() {
    static const std::vector<std::pair<int, int>> pairs = {{1, 2}, {1, 3}, {1, 4}, {2, 1},
                                                          {2, 3}, {2, 4}, {3, 1}, {3, 2}};
    return pairs;
}

}  // namespace

Presentation u_g_mod_h() {
    auto al = pair_alphabet('x', 4, quotient_pairs());
    auto x = [&](int ij) { return al.g(ij / 10, ij % 10); };
    std::vector<NCPolynomial> rels = {
        commutator(x(21), x(31)),         commutator(x(12), x(32)),         commutator(x(13), x(23)),
        commutator(x(14), x(24)),         commutator(x(13), x(24)),         commutator(x(14), x(23)),
        commutator(x(14), x(32)),         commutator(x(24), x(31)),         commutator(x(31), x(12) + x(32)),
        commutator(x(32), x(21) + x(31)), commutator(x(13), x(12) + x(32)), commutator(x(23), x(21) + x(31)),
        commutator(x(21), x(13) + x(23)), commutator(x(12), x(13) + x(23)), commutator(x(21), x(14) + x(24)),
        commutator(x(12), x(14) + x(24)),
    };
    return Presentation("ugmodh", al.order, std::move(rels), "builtin:ugmodh");
}

Presentation u_g_mod_h_dual() {
    auto al = pair_alphabet('a', 4, quotient_pairs());
    auto a = [&](int ij) { return al.g(ij / 10, ij % 10); };
    std::vector<NCPolynomial> rels;
    add_exterior_relations(al.order, rels);
    std::vector<NCPolynomial> extra = {
        a(12) * a(21),
        a(13) * a(31),
        a(23) * a(32),
        a(23) * a(24),
        a(13) * a(14),
        a(24) * a(32),
        a(14) * a(31),
        a(12) * a(31) - a(21) * a(32) + a(31) * a(32),
        a(13) * a(21) + a(23) * a(31) + a(21) * a(23),
        a(14) * a(21) + a(21) * a(24),
        a(12) * a(13) - a(12) * a(23) + a(13) * a(32),
        a(12) * a(14) - a(12) * a(24),
    };
    rels.insert(rels.end(), extra.begin(), extra.end());
    return Presentation("ugmodh-dual", al.order, std::move(rels), "builtin:ugmodh-dual");
}

Presentation free_algebra(std::vector<std::string> names, std::string name) {
    return Presentation(std::move(name), MonomialOrder(make_alphabet(std::move(names))), {}, "builtin:free");
}

// ---------------------------------------------------------------------------
// Changes of variables

Presentation apply_substitution(const Presentation& p, const LinearSubstitution& s) {
    const std::size_t g = p.generator_count();
    if (!s.target || s.target->size() != g || s.images.size() != g)
        throw Error("substitution size does not match the presentation");
    RationalField Q;
    // Row k: target generator k in source coordinates.
    DenseMatrix<RationalField> m(g, g, Rational());
    for (std::size_t k = 0; k < g; ++k) {
        const auto& img = s.images[k];
        if (!(img.order().alphabet() == p.alphabet())) throw AlphabetMismatch();
        if (!img.is_zero() && img.degree() != std::size_t{1}) throw Error("substitution images must be homogeneous of degree 1");
        for (const auto& t : img.terms()) m(k, t.word[0]) = t.coeff;
    }
    auto inv = inverse(Q, m);
    if (!inv) throw SingularError("substitution matrix is singular");
    // source generator j = sum_k inv(j, k)... solve: new = M old  =>  old = M^{-1} new,
    // i.e. old_j = sum_k (M^{-1})_{j k} new_k.
    MonomialOrder target_order(s.target);
    std::vector<NCPolynomial> old_in_new;
    old_in_new.reserve(g);
    for (std::size_t j = 0; j < g; ++j) {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < g; ++k)
            if (!(*inv)(j, k).is_zero()) terms.push_back(Term{Word{static_cast<Letter>(k)}, (*inv)(j, k)});
        old_in_new.emplace_back(target_order, std::move(terms));
    }
    std::vector<NCPolynomial> rels;
    for (const auto& r : p.relations()) {
        NCPolynomial acc(target_order);
        for (const auto& t : r.terms()) {
            NCPolynomial prod = NCPolynomial::constant(target_order, t.coeff);
            for (Letter l : t.word) prod = prod * old_in_new[l];
            acc = acc + prod;
        }
        if (acc.is_zero()) throw SingularError("relation vanished under substitution");
        rels.push_back(std::move(acc));
    }
    return Presentation(p.name() + "-subst", target_order, std::move(rels), p.source() + " +substitution");
}

LinearSubstitution column_sum_substitution(const Presentation& ug, int n) {
    if (n < 3) throw Error("column_sum_substitution requires n >= 3");
    const auto& al = ug.alphabet();
    auto replaced = [n](int i, int j) { return (j < n && i == n) || (j == n && i == n - 1); };
    std::vector<std::string> names;
    std::vector<NCPolynomial> images;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j || replaced(i, j)) continue;
            names.push_back(generator_name('x', i, j, n));
            images.push_back(ug.gen(generator_name('x', i, j, n)));
        }
    for (int j = 1; j <= n; ++j) {
        names.push_back("X" + std::to_string(j));
        NCPolynomial sum(ug.order());
        for (int i = 1; i <= n; ++i)
            if (i != j) sum = sum + NCPolynomial::generator(ug.order(), al.at(generator_name('x', i, j, n)));
        images.push_back(std::move(sum));
    }
    return LinearSubstitution{make_alphabet(std::move(names)), std::move(images)};
}

}  // namespace ncalg
