#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace ncalg::detail {

/// Aho-Corasick automaton over a fixed set of patterns on letters 0..g-1.
/// States are the prefixes of patterns; transitions are complete (failure
/// links folded in).
class Automaton {
public:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    Automaton(unsigned generators, const std::vector<std::vector<unsigned>>& patterns) : g_(generators) {
        go_.assign(g_, kNone);
        depth_.push_back(0);
        own_.push_back(-1);
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            if (patterns[p].empty()) throw std::invalid_argument("empty pattern");
            std::uint32_t s = 0;
            for (unsigned c : patterns[p]) {
                if (c >= g_) throw std::out_of_range("pattern letter out of range");
                std::uint32_t& t = go_[static_cast<std::size_t>(s) * g_ + c];
                if (t == kNone) {
                    t = static_cast<std::uint32_t>(depth_.size());
                    depth_.push_back(depth_[s] + 1);
                    own_.push_back(-1);
                    go_.resize(go_.size() + g_, kNone);
                }
                s = go_[static_cast<std::size_t>(s) * g_ + c];
            }
            own_[s] = static_cast<std::int32_t>(p);
        }
        const std::size_t n = depth_.size();
        fail_.assign(n, 0);
        match_.assign(n, -1);
        std::queue<std::uint32_t> bfs;
        for (unsigned c = 0; c < g_; ++c) {
            std::uint32_t& t = go_[c];
            if (t == kNone) {
                t = 0;
            } else {
                fail_[t] = 0;
                bfs.push(t);
            }
        }
        match_[0] = own_[0];
        while (!bfs.empty()) {
            const std::uint32_t s = bfs.front();
            bfs.pop();
            match_[s] = own_[s] >= 0 ? own_[s] : match_[fail_[s]];
            for (unsigned c = 0; c < g_; ++c) {
                std::uint32_t& t = go_[static_cast<std::size_t>(s) * g_ + c];
                const std::uint32_t via = go_[static_cast<std::size_t>(fail_[s]) * g_ + c];
                if (t == kNone) {
                    t = via;
                } else {
                    fail_[t] = via;
                    bfs.push(t);
                }
            }
        }
    }

    unsigned generators() const { return g_; }
    std::size_t states() const { return depth_.size(); }
    std::uint32_t next(std::uint32_t s, unsigned c) const { return go_[static_cast<std::size_t>(s) * g_ + c]; }
    /// Pattern that ends at this state (as a suffix of its string), or -1.
    std::int32_t match(std::uint32_t s) const { return match_[s]; }
    unsigned depth(std::uint32_t s) const { return depth_[s]; }

    struct Hit {
        std::size_t end;  // one past the last letter of the occurrence
        std::int32_t pattern;
    };
    /// Leftmost-ending occurrence of any pattern in `text`.
    std::optional<Hit> first_hit(std::span<const unsigned> text) const {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            s = next(s, text[i]);
            if (match_[s] >= 0) return Hit{i + 1, match_[s]};
        }
        return std::nullopt;
    }

private:
    unsigned g_;
    std::vector<std::uint32_t> go_;
    std::vector<std::uint32_t> fail_;
    std::vector<unsigned> depth_;
    std::vector<std::int32_t> own_;
    std::vector<std::int32_t> match_;
};

}  // namespace ncalg::detail
