#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ncalg {

using Letter = std::uint32_t;

/// Ordered list of degree-1 generator names.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Letter i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Letter> find(std::string_view name) const;
    /// Throws Error for an unknown name.
    Letter at(std::string_view name) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Letter> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);

/// A monomial of the free algebra: a sequence of generator indices.  The empty
/// word is the unit.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::size_t degree() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    std::span<const Letter> letters() const { return letters_; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    Word subword(std::size_t pos, std::size_t len) const;
    Word prefix(std::size_t len) const { return subword(0, len); }
    Word suffix(std::size_t len) const { return subword(degree() - len, len); }
    /// Position of the first occurrence of `w` as a contiguous factor.
    std::optional<std::size_t> find(const Word& w, std::size_t from = 0) const;
    bool contains(const Word& w) const { return find(w).has_value(); }

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word& a, const Word& b) = default;
    /// Plain lexicographic order on indices; for containers only, not a monomial order.
    friend auto operator<=>(const Word& a, const Word& b) = default;

    std::string to_string(const Alphabet& alphabet) const;

private:
    std::vector<Letter> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Degree-lexicographic order on words over an alphabet, with ties between
/// letters broken by a precedence list (descending: first entry is largest).
class MonomialOrder {
public:
    /// Precedence = listed alphabet order.
    explicit MonomialOrder(AlphabetPtr alphabet);
    /// `precedence` lists every generator exactly once, largest first.
    MonomialOrder(AlphabetPtr alphabet, std::vector<Letter> precedence);

    /// Parses `deglex:default` or `deglex:a>b>c`.
    static MonomialOrder parse(AlphabetPtr alphabet, std::string_view spec);

    const Alphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
    std::size_t size() const { return alphabet_->size(); }
    const std::vector<Letter>& precedence() const { return precedence_; }
    /// Weight of a letter: larger weight means larger letter; weights are 0..g-1.
    std::uint32_t weight(Letter l) const { return (*weight_)[l]; }
    const std::vector<std::uint32_t>& weights() const { return *weight_; }

    /// Throws Error if either word uses a letter outside the alphabet.
    std::strong_ordering compare(const Word& u, const Word& v) const;
    bool less(const Word& u, const Word& v) const { return compare(u, v) < 0; }

    std::string to_string() const;
    bool is_default() const;

    /// Same alphabet (by names) and same precedence.
    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b);

private:
    AlphabetPtr alphabet_;
    std::vector<Letter> precedence_;
    std::shared_ptr<const std::vector<std::uint32_t>> weight_;
};

}  // namespace ncalg
