#include "ncalg/word.hpp"

#include <algorithm>

#include "ncalg/errors.hpp"

namespace ncalg {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw Error("empty generator name");
        if (!index_.emplace(names_[i], static_cast<Letter>(i)).second)
            throw Error("duplicate generator name '" + names_[i] + "'");
    }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::at(std::string_view name) const {
    if (auto l = find(name)) return *l;
    throw Error("unknown generator '" + std::string(name) + "'");
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
    return std::make_shared<const Alphabet>(std::move(names));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

std::optional<std::size_t> Word::find(const Word& w, std::size_t from) const {
    if (w.degree() > degree()) return std::nullopt;
    for (std::size_t i = from; i + w.degree() <= degree(); ++i) {
        if (std::equal(w.letters_.begin(), w.letters_.end(), letters_.begin() + static_cast<std::ptrdiff_t>(i)))
            return i;
    }
    return std::nullopt;
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> out;
    out.reserve(a.degree() + b.degree());
    out.insert(out.end(), a.letters_.begin(), a.letters_.end());
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(out));
}

std::string Word::to_string(const Alphabet& alphabet) const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += '*';
        out += alphabet.name(letters_[i]);
    }
    return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w) {
        h ^= l + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h ^ w.degree();
}

MonomialOrder::MonomialOrder(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
    precedence_.resize(alphabet_->size());
    for (std::size_t i = 0; i < precedence_.size(); ++i) precedence_[i] = static_cast<Letter>(i);
    auto w = std::make_shared<std::vector<std::uint32_t>>(precedence_.size());
    for (std::size_t i = 0; i < precedence_.size(); ++i) (*w)[i] = static_cast<std::uint32_t>(precedence_.size() - 1 - i);
    weight_ = std::move(w);
}

MonomialOrder::MonomialOrder(AlphabetPtr alphabet, std::vector<Letter> precedence)
    : alphabet_(std::move(alphabet)), precedence_(std::move(precedence)) {
    const std::size_t g = alphabet_->size();
    if (precedence_.size() != g) throw Error("precedence must list every generator exactly once");
    auto w = std::make_shared<std::vector<std::uint32_t>>(g, UINT32_MAX);
    for (std::size_t pos = 0; pos < g; ++pos) {
        Letter l = precedence_[pos];
        if (l >= g || (*w)[l] != UINT32_MAX) throw Error("precedence must list every generator exactly once");
        (*w)[l] = static_cast<std::uint32_t>(g - 1 - pos);
    }
    weight_ = std::move(w);
}

MonomialOrder MonomialOrder::parse(AlphabetPtr alphabet, std::string_view spec) {
    constexpr std::string_view prefix = "deglex:";
    if (spec.substr(0, prefix.size()) != prefix) throw Error("order must start with 'deglex:'");
    spec.remove_prefix(prefix.size());
    if (spec == "default") return MonomialOrder(std::move(alphabet));
    std::vector<Letter> prec;
    std::size_t start = 0;
    while (true) {
        std::size_t gt = spec.find('>', start);
        std::string_view name = spec.substr(start, gt == std::string_view::npos ? std::string_view::npos : gt - start);
        prec.push_back(alphabet->at(name));
        if (gt == std::string_view::npos) break;
        start = gt + 1;
    }
    return MonomialOrder(std::move(alphabet), std::move(prec));
}

std::strong_ordering MonomialOrder::compare(const Word& u, const Word& v) const {
    const std::size_t g = alphabet_->size();
    for (Letter l : u)
        if (l >= g) throw AlphabetMismatch();
    for (Letter l : v)
        if (l >= g) throw AlphabetMismatch();
    if (u.degree() != v.degree()) return u.degree() <=> v.degree();
    const auto& w = *weight_;
    for (std::size_t i = 0; i < u.degree(); ++i) {
        if (u[i] != v[i]) return w[u[i]] <=> w[v[i]];
    }
    return std::strong_ordering::equal;
}

std::string MonomialOrder::to_string() const {
    std::string out = "deglex:";
    for (std::size_t i = 0; i < precedence_.size(); ++i) {
        if (i) out += '>';
        out += alphabet_->name(precedence_[i]);
    }
    return out;
}

bool MonomialOrder::is_default() const {
    for (std::size_t i = 0; i < precedence_.size(); ++i)
        if (precedence_[i] != i) return false;
    return true;
}

bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return (a.alphabet_ == b.alphabet_ || *a.alphabet_ == *b.alphabet_) && a.precedence_ == b.precedence_;
}

}  // namespace ncalg
