#pragma once

// Degree-by-degree completion by sparse rewriting.  Memory is proportional to
// the basis, not to the algebra: normal forms are computed on demand by
// rewriting leftmost-ending obstruction occurrences.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <thread>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "ncalg/detail/automaton.hpp"
#include "ncalg/detail/engine.hpp"
#include "ncalg/detail/packed.hpp"

namespace ncalg::detail {

template <class F>
class Completion {
public:
    using E = typename F::Element;
    using Poly = std::vector<std::pair<Packed, E>>;  // one degree, descending words

    struct Relation {
        unsigned degree = 0;
        Poly terms;
    };

    /// Basis elements of one degree: lead - tail, tails over normal words.
    struct Degree {
        std::vector<Packed> obstructions;  // ascending
        absl::flat_hash_map<Packed, std::uint32_t> index;
        std::vector<Poly> tails;           // NF(lead), descending
    };

    struct Pivots {
        absl::flat_hash_map<Packed, std::uint32_t> index;
        std::vector<Packed> leads;
        std::vector<Poly> tails;
    };

    Completion(F field, unsigned generators, std::vector<Relation> relations, EngineOptions options = {})
        : field_(std::move(field)), pack_(generators), relations_(std::move(relations)), options_(std::move(options)) {
        degrees_.resize(2);
        DegreeStats s0, s1;
        s0.normal = 1;
        s1.degree = 1;
        s1.normal = generators;
        s1.candidates = generators;
        stats_ = {s0, s1};
        for (const auto& r : relations_)
            if (r.degree < 2) throw std::invalid_argument("relations must have degree >= 2");
    }

    const F& field() const { return field_; }
    const Packing& packing() const { return pack_; }
    unsigned degree() const { return static_cast<unsigned>(degrees_.size() - 1); }
    const Degree& level(unsigned d) const { return degrees_.at(d); }
    const std::vector<DegreeStats>& stats() const { return stats_; }

    void extend_to(unsigned target) {
        if (target > pack_.max_length())
            throw std::length_error("degree " + std::to_string(target) + " exceeds packed word capacity");
        while (degree() < target) complete_next_degree();
    }

    /// Overlap ambiguities of total degree d among obstructions of degree < d.
    std::vector<typename Engine<F>::Ambiguity> overlaps(unsigned d) const {
        std::vector<typename Engine<F>::Ambiguity> out;
        for (unsigned k1 = 2; k1 < d && k1 < degrees_.size(); ++k1) {
            const auto& o1 = degrees_[k1].obstructions;
            for (std::uint32_t i1 = 0; i1 < o1.size(); ++i1) {
                for (unsigned l = 1; l < k1; ++l) {
                    const unsigned k2 = d - k1 + l;
                    if (k2 <= l || k2 >= d || k2 >= degrees_.size()) continue;
                    const auto& o2 = degrees_[k2].obstructions;
                    const Packed s = pack_.suffix(o1[i1], l);
                    const unsigned shift = (k2 - l) * pack_.bits;
                    const Packed lo = shl(s, shift);
                    auto it = std::lower_bound(o2.begin(), o2.end(), lo);
                    for (; it != o2.end() && shr(*it, shift) == s; ++it)
                        out.push_back({k1, i1, k2, static_cast<std::uint32_t>(it - o2.begin()), l});
                }
            }
        }
        return out;
    }

    /// Workspace for one reducing thread.
    struct Workspace {
        absl::flat_hash_map<Packed, E> coeff;
        std::vector<Packed> heap;
    };

    /// Fully rewrites a degree-d polynomial by the basis of degree < d, plus
    /// `current` (degree-d elements) when given.  Result descending, not monic.
    Poly reduce(unsigned d, const Poly& input, Workspace& ws, const Pivots* current) const {
        ws.coeff.clear();
        ws.heap.clear();
        auto add = [&](Packed w, const E& c) {
            auto [it, fresh] = ws.coeff.try_emplace(w, c);
            if (fresh) {
                ws.heap.push_back(w);
                std::push_heap(ws.heap.begin(), ws.heap.end());
            } else {
                it->second = field_.add(it->second, c);
            }
        };
        for (const auto& [w, c] : input) add(w, c);
        Poly out;
        const Automaton* aut = automaton_.get();
        while (!ws.heap.empty()) {
            std::pop_heap(ws.heap.begin(), ws.heap.end());
            const Packed w = ws.heap.back();
            ws.heap.pop_back();
            auto it = ws.coeff.find(w);
            const E c = it->second;
            ws.coeff.erase(it);
            if (field_.is_zero(c)) continue;
            // leftmost-ending obstruction occurrence
            unsigned end = 0;
            std::int32_t pat = -1;
            if (aut) {
                std::uint32_t s = 0;
                for (unsigned i = 0; i < d; ++i) {
                    s = aut->next(s, pack_.letter(w, d, i));
                    if (aut->match(s) >= 0) {
                        end = i + 1;
                        pat = aut->match(s);
                        break;
                    }
                }
            }
            const Poly* tail = nullptr;
            unsigned k = 0;
            if (pat >= 0) {
                const auto [deg, id] = pattern_[static_cast<std::size_t>(pat)];
                k = deg;
                tail = &degrees_[deg].tails[id];
            } else if (current) {
                auto ci = current->index.find(w);
                if (ci != current->index.end()) {
                    k = d;
                    end = d;
                    tail = &current->tails[ci->second];
                }
            }
            if (!tail) {
                out.emplace_back(w, c);
                continue;
            }
            const unsigned vlen = d - end;
            const Packed u = shr(w, (vlen + k) * pack_.bits);
            const Packed v = pack_.suffix(w, vlen);
            for (const auto& [t, tc] : *tail) {
                const Packed nw = shl(shl(u, k * pack_.bits) | t, vlen * pack_.bits) | v;
                add(nw, field_.mul(c, tc));
            }
        }
        return out;
    }

    /// Normal form of a degree-d polynomial (d <= degree()).
    Poly normal_form(unsigned d, const Poly& input) const {
        Workspace ws;
        return reduce(d, input, ws, nullptr);
    }

    /// The S-polynomial p*NF(o2) - NF(o1)*q of an overlap o1 = p s, o2 = s q.
    Poly spoly(const typename Engine<F>::Ambiguity& a) const {
        const unsigned qlen = a.deg2 - a.overlap;
        const unsigned plen = a.deg1 - a.overlap;
        const Packed o1 = degrees_[a.deg1].obstructions[a.id1];
        const Packed o2 = degrees_[a.deg2].obstructions[a.id2];
        const Packed q = pack_.suffix(o2, qlen);
        const Packed p = pack_.prefix(o1, a.deg1, plen);
        Poly out;
        for (const auto& [t, c] : degrees_[a.deg2].tails[a.id2])
            out.emplace_back(pack_.concat(p, t, a.deg2), c);
        for (const auto& [t, c] : degrees_[a.deg1].tails[a.id1])
            out.emplace_back(pack_.concat(t, q, qlen), field_.neg(c));
        return out;
    }

    /// Normal word counts for degrees 0..D (saturating at UINT64_MAX).
    std::vector<std::uint64_t> count_normal_words(unsigned D) const {
        std::vector<std::uint64_t> out(D + 1, 0);
        out[0] = 1;
        if (!automaton_) {
            for (unsigned d = 1; d <= D; ++d) out[d] = sat_mul(out[d - 1], pack_.generators);
            return out;
        }
        const Automaton& a = *automaton_;
        std::vector<std::uint64_t> cur(a.states(), 0), nxt(a.states(), 0);
        cur[0] = 1;
        for (unsigned d = 1; d <= D; ++d) {
            std::fill(nxt.begin(), nxt.end(), 0);
            for (std::uint32_t s = 0; s < a.states(); ++s) {
                if (!cur[s]) continue;
                for (unsigned c = 0; c < pack_.generators; ++c) {
                    const std::uint32_t t = a.next(s, c);
                    if (a.match(t) < 0) nxt[t] = sat_add(nxt[t], cur[s]);
                }
            }
            std::swap(cur, nxt);
            for (auto v : cur) out[d] = sat_add(out[d], v);
        }
        return out;
    }

    const Automaton* automaton() const { return automaton_.get(); }
    /// Automaton pattern id -> (degree, obstruction id).
    const std::vector<std::pair<unsigned, std::uint32_t>>& patterns() const { return pattern_; }

private:
    static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }
    static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
        return b && a > UINT64_MAX / b ? UINT64_MAX : a * b;
    }

    void rebuild_automaton() {
        std::vector<std::vector<unsigned>> patterns;
        pattern_.clear();
        for (unsigned d = 2; d < degrees_.size(); ++d) {
            for (std::uint32_t i = 0; i < degrees_[d].obstructions.size(); ++i) {
                patterns.push_back(pack_.unpack(degrees_[d].obstructions[i], d));
                pattern_.emplace_back(d, i);
            }
        }
        automaton_ = patterns.empty() ? nullptr : std::make_unique<Automaton>(pack_.generators, patterns);
    }

    void make_monic(Poly& p) const {
        const E inv = field_.inv(p.front().second);
        if (field_.is_one(inv)) return;
        for (auto& t : p) t.second = field_.mul(t.second, inv);
    }

    void add_pivot(Poly&& p, Pivots& piv) const {
        make_monic(p);
        const Packed lead = p.front().first;
        piv.index.emplace(lead, static_cast<std::uint32_t>(piv.leads.size()));
        piv.leads.push_back(lead);
        Poly tail;
        tail.reserve(p.size() - 1);
        for (std::size_t i = 1; i < p.size(); ++i) tail.emplace_back(p[i].first, field_.neg(p[i].second));
        piv.tails.push_back(std::move(tail));
    }

    void complete_next_degree() {
        const auto t0 = std::chrono::steady_clock::now();
        const unsigned d = degree() + 1;
        Pivots piv;
        Workspace ws;
        std::size_t nonzero = 0;
        auto absorb = [&](const Poly& p) {
            if (p.empty()) return;
            Poly r = reduce(d, p, ws, &piv);
            if (r.empty()) return;
            ++nonzero;
            add_pivot(std::move(r), piv);
        };
        for (const auto& rel : relations_)
            if (rel.degree == d) absorb(rel.terms);

        auto amb = overlaps(d);
        if (options_.reverse_processing) std::reverse(amb.begin(), amb.end());
        const unsigned threads = std::max(1u, options_.threads);
        const std::size_t batch = std::max<std::size_t>(1, options_.batch);
        std::vector<Workspace> wss(threads);
        std::vector<Poly> results;
        for (std::size_t start = 0; start < amb.size(); start += batch) {
            const std::size_t end = std::min(amb.size(), start + batch);
            results.assign(end - start, Poly{});
            // Against the pivots frozen at the start of the batch.
            auto work = [&](unsigned t) {
                for (std::size_t i = start + t; i < end; i += threads)
                    results[i - start] = reduce(d, spoly(amb[i]), wss[t], &piv);
            };
            if (threads == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
                for (auto& th : pool) th.join();
            }
            for (const auto& r : results) absorb(r);
        }

        // Interreduce tails and sort by leading word.
        for (auto& tail : piv.tails) tail = reduce(d, tail, ws, &piv);
        std::vector<std::uint32_t> order(piv.leads.size());
        for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return piv.leads[a] < piv.leads[b]; });
        Degree lvl;
        for (std::uint32_t id : order) {
            lvl.index.emplace(piv.leads[id], static_cast<std::uint32_t>(lvl.obstructions.size()));
            lvl.obstructions.push_back(piv.leads[id]);
            lvl.tails.push_back(std::move(piv.tails[id]));
        }
        degrees_.push_back(std::move(lvl));
        rebuild_automaton();

        DegreeStats st;
        st.degree = d;
        st.obstructions = degrees_.back().obstructions.size();
        st.normal = count_normal_words(d).back();
        st.ambiguities = amb.size();
        st.nonzero_spolys = nonzero;
        for (const auto& t : degrees_.back().tails) st.table_nonzeros += t.size();
        st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        stats_.push_back(st);
        if (options_.on_degree) options_.on_degree(st);
    }

    F field_;
    Packing pack_;
    std::vector<Relation> relations_;
    EngineOptions options_;
    std::vector<Degree> degrees_;
    std::vector<DegreeStats> stats_;
    std::unique_ptr<Automaton> automaton_;
    std::vector<std::pair<unsigned, std::uint32_t>> pattern_;
};

}  // namespace ncalg::detail
