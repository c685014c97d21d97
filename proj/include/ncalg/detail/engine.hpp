#pragma once

// Degree-by-degree two-sided Groebner basis completion for homogeneous ideals
// of the free algebra, over any coefficient field F.
//
// For every degree d the engine keeps
//   B_d  normal words (sorted),
//   O_d  obstructions (leading words of basis elements of degree d),
//   red  NF(w) for w in O_d, over B_d (this is the basis element w - NF(w)),
//   M_d  NF(b x) for b in B_{d-1}, x a generator, over B_d.
// M_d is the right action of the generators on normal words; every normal form
// of a degree-d polynomial is a fold of M_1..M_d over its letters.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "ncalg/detail/packed.hpp"
#include "ncalg/detail/sparse.hpp"

namespace ncalg::detail {

struct DegreeStats {
    unsigned degree = 0;
    std::size_t candidates = 0;     // |T_d|: words whose proper factors are all normal
    std::size_t obstructions = 0;   // |O_d|
    std::size_t normal = 0;         // |B_d|
    std::size_t ambiguities = 0;
    std::size_t nonzero_spolys = 0;
    std::size_t table_nonzeros = 0;
    double seconds = 0;
};

struct EngineOptions {
    unsigned threads = 1;
    std::size_t batch = 4096;
    /// Reverse the processing order of S-polynomials within each degree
    /// (the final reduced basis does not depend on it).
    bool reverse_processing = false;
    std::function<void(const DegreeStats&)> on_degree;
};

template <class F>
class Engine {
public:
    using E = typename F::Element;
    static constexpr std::uint32_t kNone = UINT32_MAX;

    struct Relation {
        unsigned degree = 0;
        std::vector<std::pair<Packed, E>> terms;
    };

    struct Ambiguity {
        unsigned deg1 = 0;       // degree of the left element (its word is a prefix)
        std::uint32_t id1 = 0;   // obstruction index within its degree
        unsigned deg2 = 0;       // degree of the right element (its word is a suffix)
        std::uint32_t id2 = 0;
        unsigned overlap = 0;    // length of the shared factor
    };

    struct Level {
        std::vector<Packed> normal;
        absl::flat_hash_map<Packed, std::uint32_t> normal_index;
        std::vector<Packed> obstructions;
        absl::flat_hash_map<Packed, std::uint32_t> obstruction_index;
        Csr<E> reductions;
        std::vector<std::uint32_t> direct;    // per (b, x): B_d index if b x is normal
        std::vector<std::uint32_t> mult_row;  // per (b, x): row of `mult` otherwise
        Csr<E> mult;
        DegreeStats stats;

        std::optional<std::uint32_t> index_of(Packed w) const {
            auto it = normal_index.find(w);
            if (it == normal_index.end()) return std::nullopt;
            return it->second;
        }
        std::optional<std::uint32_t> obstruction_of(Packed w) const {
            auto it = obstruction_index.find(w);
            if (it == obstruction_index.end()) return std::nullopt;
            return it->second;
        }
    };

    Engine(F field, unsigned generators, std::vector<Relation> relations, EngineOptions options = {})
        : field_(std::move(field)), pack_(generators), relations_(std::move(relations)), options_(std::move(options)) {
        if (generators == 0) throw std::invalid_argument("no generators");
        Level l0;
        l0.normal = {0};
        l0.normal_index.emplace(0, 0);
        l0.stats.normal = 1;
        levels_.push_back(std::move(l0));
        Level l1;
        for (unsigned x = 0; x < generators; ++x) {
            l1.normal.push_back(x);
            l1.normal_index.emplace(x, x);
            l1.direct.push_back(x);
            l1.mult_row.push_back(kNone);
        }
        l1.stats.degree = 1;
        l1.stats.normal = generators;
        l1.stats.candidates = generators;
        levels_.push_back(std::move(l1));
        for (const auto& r : relations_)
            if (r.degree < 2) throw std::invalid_argument("relations must have degree >= 2");
    }

    const F& field() const { return field_; }
    const Packing& packing() const { return pack_; }
    unsigned generators() const { return pack_.generators; }
    /// Highest degree completed so far.
    unsigned degree() const { return static_cast<unsigned>(levels_.size() - 1); }
    const Level& level(unsigned d) const { return levels_.at(d); }

    /// Completes the basis through degree `target`.
    void extend_to(unsigned target) {
        if (target > pack_.max_length())
            throw std::length_error("degree " + std::to_string(target) + " exceeds packed word capacity " +
                                    std::to_string(pack_.max_length()));
        while (degree() < target) complete_next_degree();
    }

    // ---- normal forms -----------------------------------------------------

    /// Normal form of vector `v` over B_k multiplied on the right by `letter`,
    /// scaled and accumulated into `acc` (over B_{k+1}).
    void right_multiply_into(unsigned k, std::span<const std::uint32_t> idx, std::span<const E> val, unsigned letter,
                             const E& scale, Accumulator<F>& acc) const {
        const Level& next = levels_[k + 1];
        const std::size_t g = pack_.generators;
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const std::size_t r = static_cast<std::size_t>(idx[t]) * g + letter;
            E c = field_.is_one(scale) ? val[t] : field_.mul(val[t], scale);
            const std::uint32_t dir = next.direct[r];
            if (dir != kNone) {
                acc.add(field_, dir, c);
            } else {
                const std::uint32_t row = next.mult_row[r];
                acc.add_scaled(field_, next.mult.indices(row), next.mult.values(row), c);
            }
        }
    }

    /// NF(u * w) where u = B_k[u_index] and w is a packed word of length len.
    /// The result (over B_{k+len}) is scaled and accumulated into `out`.
    void fold_into(unsigned k, std::uint32_t u_index, Packed w, unsigned len, const E& scale, Accumulator<F>& out,
                   std::vector<Accumulator<F>>& scratch) const {
        if (len == 0) {
            out.add(field_, u_index, scale);
            return;
        }
        SparseVec<E> cur;
        cur.push(u_index, field_.one());
        for (unsigned i = 0; i + 1 < len; ++i) {
            Accumulator<F>& acc = scratch_for(scratch, k + i + 1);
            right_multiply_into(k + i, cur.idx, cur.val, pack_.letter(w, len, i), field_.one(), acc);
            cur = acc.take(field_);
            if (cur.empty()) return;
        }
        right_multiply_into(k + len - 1, cur.idx, cur.val, pack_.letter(w, len, len - 1), scale, out);
    }

    /// Normal form of a single word of length len (len <= degree()).
    SparseVec<E> normal_form_word(Packed w, unsigned len) const {
        if (len == 0) return SparseVec<E>{{0}, {field_.one()}};
        std::vector<Accumulator<F>> scratch;
        Accumulator<F> result(level_size(len), field_);
        fold_into(0, 0, w, len, field_.one(), result, scratch);
        return result.take(field_);
    }

    /// Size of the index space at level d (for the level being built, an upper bound).
    std::size_t level_size(unsigned d) const {
        if (d < levels_.size()) return levels_[d].normal.size();
        return levels_[d - 1].normal.size() * pack_.generators;
    }

    // ---- ambiguities --------------------------------------------------------

    /// All overlap ambiguities of total degree d between obstructions of degree < d,
    /// grouped by left element and overlap length.
    std::vector<Ambiguity> overlaps(unsigned d) const {
        std::vector<Ambiguity> out;
        for (unsigned k1 = 2; k1 < d && k1 < levels_.size(); ++k1) {
            const auto& o1 = levels_[k1].obstructions;
            for (std::uint32_t i1 = 0; i1 < o1.size(); ++i1) {
                for (unsigned l = 1; l < k1; ++l) {
                    unsigned k2 = d - k1 + l;
                    if (k2 <= l || k2 >= d || k2 >= levels_.size()) continue;
                    const auto& o2 = levels_[k2].obstructions;
                    Packed s = pack_.suffix(o1[i1], l);
                    const unsigned shift = (k2 - l) * pack_.bits;
                    auto first = std::lower_bound(o2.begin(), o2.end(), shl(s, shift));
                    for (auto it = first; it != o2.end() && shr(*it, shift) == s; ++it)
                        out.push_back(Ambiguity{k1, i1, k2, static_cast<std::uint32_t>(it - o2.begin()), l});
                }
            }
        }
        return out;
    }

    /// Packed overlap word of an ambiguity.
    Packed overlap_word(const Ambiguity& a) const {
        Packed w1 = levels_[a.deg1].obstructions[a.id1];
        Packed w2 = levels_[a.deg2].obstructions[a.id2];
        return pack_.concat(w1, pack_.suffix(w2, a.deg2 - a.overlap), a.deg2 - a.overlap);
    }

    /// The two reductions of an ambiguity's overlap word, accumulated with
    /// opposite signs into `out` (over level d = deg of the overlap word).
    void spoly_into(const Ambiguity& a, Accumulator<F>& out, std::vector<Accumulator<F>>& scratch) const {
        const Level& l1 = levels_[a.deg1];
        const Level& l2 = levels_[a.deg2];
        const unsigned qlen = a.deg2 - a.overlap;
        const unsigned plen = a.deg1 - a.overlap;
        const Packed q = pack_.suffix(l2.obstructions[a.id2], qlen);
        const Packed p = pack_.prefix(l1.obstructions[a.id1], a.deg1, plen);
        // (p s) q  ->  NF(p s) q
        auto ti = l1.reductions.indices(a.id1);
        auto tv = l1.reductions.values(a.id1);
        for (std::size_t t = 0; t < ti.size(); ++t) {
            fold_into(a.deg1, ti[t], q, qlen, tv[t], out, scratch);
        }
        // p (s q)  ->  p NF(s q)
        const std::uint32_t pidx = *levels_[plen].index_of(p);
        auto ui = l2.reductions.indices(a.id2);
        auto uv = l2.reductions.values(a.id2);
        for (std::size_t t = 0; t < ui.size(); ++t) {
            Packed tail = l2.normal[ui[t]];
            fold_into(plen, pidx, tail, a.deg2, field_.neg(uv[t]), out, scratch);
        }
    }

private:
    Accumulator<F>& scratch_for(std::vector<Accumulator<F>>& scratch, unsigned level) const {
        if (scratch.size() <= level) scratch.resize(level + 1);
        std::size_t n = level_size(level);
        if (scratch[level].capacity() < n) scratch[level].resize(n, field_);
        return scratch[level];
    }

    struct Echelon {
        std::vector<std::int32_t> pivot_of;  // per T index
        std::vector<SparseVec<E>> rows;      // monic, leading entry = last (largest index)
    };

    /// Reduces `acc`'s contents against the current pivots; returns the
    /// surviving entries in ascending order.
    SparseVec<E> reduce(Accumulator<F>& acc, const Echelon& ech, std::vector<std::uint32_t>& heap) const {
        heap.assign(acc.touched_list().begin(), acc.touched_list().end());
        std::make_heap(heap.begin(), heap.end());
        SparseVec<E> survivors;
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end());
            const std::uint32_t i = heap.back();
            heap.pop_back();
            if (field_.is_zero(acc.at(i))) continue;
            const std::int32_t piv = ech.pivot_of[i];
            if (piv < 0) {
                survivors.push(i, acc.at(i));
                continue;
            }
            E f = field_.neg(acc.at(i));
            acc.ref(i) = field_.zero();
            const auto& row = ech.rows[static_cast<std::size_t>(piv)];
            for (std::size_t t = 0; t + 1 < row.size(); ++t) {
                const std::uint32_t j = row.idx[t];
                if (!acc.touched(j)) {
                    acc.add(field_, j, field_.mul(f, row.val[t]));
                    heap.push_back(j);
                    std::push_heap(heap.begin(), heap.end());
                } else {
                    acc.ref(j) = field_.add(acc.at(j), field_.mul(f, row.val[t]));
                }
            }
        }
        acc.reset(field_);
        std::reverse(survivors.idx.begin(), survivors.idx.end());
        std::reverse(survivors.val.begin(), survivors.val.end());
        return survivors;
    }

    void add_pivot(SparseVec<E> v, Echelon& ech) const {
        E inv = field_.inv(v.val.back());
        if (!field_.is_one(inv))
            for (auto& c : v.val) c = field_.mul(c, inv);
        ech.pivot_of[v.idx.back()] = static_cast<std::int32_t>(ech.rows.size());
        ech.rows.push_back(std::move(v));
    }

    void complete_next_degree() {
        const auto t0 = std::chrono::steady_clock::now();
        const unsigned d = degree() + 1;
        const std::size_t g = pack_.generators;
        const std::size_t rows = levels_[d - 1].normal.size() * g;

        levels_.emplace_back();
        Level& cur = levels_.back();
        const Level& prev = levels_[d - 1];
        cur.direct.assign(rows, kNone);
        cur.mult_row.assign(rows, kNone);

        // Tentative table: NF(b x) modulo the basis of degree < d, over T_d.
        std::vector<Packed> tentative;
        std::vector<Accumulator<F>> scratch;
        Accumulator<F> row_acc(rows, field_);
        for (std::size_t r = 0; r < rows; ++r) {
            const Packed w = pack_.append(prev.normal[r / g], static_cast<unsigned>(r % g));
            const Packed suffix = pack_.suffix(w, d - 1);
            if (prev.normal_index.contains(suffix)) {
                cur.direct[r] = static_cast<std::uint32_t>(tentative.size());
                tentative.push_back(w);
                continue;
            }
            // Some obstruction is a suffix of w (the prefix is normal).
            unsigned k = 2;
            std::optional<std::uint32_t> ob;
            for (; k < d; ++k) {
                ob = levels_[k].obstruction_of(pack_.suffix(w, k));
                if (ob) break;
            }
            if (!ob) throw std::logic_error("reducible word without obstruction suffix");
            const unsigned ulen = d - k;
            const std::uint32_t uidx = *levels_[ulen].index_of(pack_.prefix(w, d, ulen));
            const Level& lk = levels_[k];
            auto ti = lk.reductions.indices(*ob);
            auto tv = lk.reductions.values(*ob);
            for (std::size_t t = 0; t < ti.size(); ++t)
                fold_into(ulen, uidx, lk.normal[ti[t]], k, tv[t], row_acc, scratch);
            cur.mult_row[r] = static_cast<std::uint32_t>(cur.mult.rows());
            cur.mult.push_row(row_acc.take(field_));
        }
        const std::size_t tsize = tentative.size();

        // Spanning set of the new ideal elements, reduced into span(T_d).
        Echelon ech;
        ech.pivot_of.assign(tsize, -1);
        std::vector<std::uint32_t> heap;
        Accumulator<F> red_acc(tsize, field_);
        std::size_t nonzero = 0;
        auto absorb = [&](SparseVec<E>&& v) {
            if (v.empty()) return;
            for (std::size_t t = 0; t < v.size(); ++t) red_acc.add(field_, v.idx[t], v.val[t]);
            SparseVec<E> s = reduce(red_acc, ech, heap);
            if (!s.empty()) {
                ++nonzero;
                add_pivot(std::move(s), ech);
            }
        };

        for (const auto& rel : relations_) {
            if (rel.degree != d) continue;
            Accumulator<F> acc(tsize, field_);
            for (const auto& [w, c] : rel.terms) fold_into(0, 0, w, d, c, acc, scratch);
            absorb(acc.take(field_));
        }

        std::vector<Ambiguity> amb = overlaps(d);
        if (options_.reverse_processing) std::reverse(amb.begin(), amb.end());
        cur.stats.ambiguities = amb.size();
        process_ambiguities(amb, tsize, absorb);

        // Full interreduction: ascending pivots, reduce tails by smaller pivots.
        std::vector<std::uint32_t> order(ech.rows.size());
        for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return ech.rows[a].idx.back() < ech.rows[b].idx.back(); });
        for (std::uint32_t id : order) {
            SparseVec<E>& row = ech.rows[id];
            const std::uint32_t lead = row.idx.back();
            for (std::size_t t = 0; t + 1 < row.size(); ++t) red_acc.add(field_, row.idx[t], row.val[t]);
            SparseVec<E> tail = reduce(red_acc, ech, heap);
            tail.push(lead, field_.one());
            row = std::move(tail);
        }

        // Split T_d into obstructions and normal words.
        std::vector<std::uint32_t> remap(tsize, kNone);
        std::vector<std::uint32_t> ob_id(tsize, kNone);
        for (std::uint32_t i = 0; i < tsize; ++i) {
            if (ech.pivot_of[i] >= 0) {
                ob_id[i] = static_cast<std::uint32_t>(cur.obstructions.size());
                cur.obstructions.push_back(tentative[i]);
            } else {
                remap[i] = static_cast<std::uint32_t>(cur.normal.size());
                cur.normal.push_back(tentative[i]);
            }
        }
        tentative.clear();
        tentative.shrink_to_fit();
        cur.normal_index.reserve(cur.normal.size());
        for (std::uint32_t i = 0; i < cur.normal.size(); ++i) cur.normal_index.emplace(cur.normal[i], i);
        cur.obstruction_index.reserve(cur.obstructions.size());
        for (std::uint32_t i = 0; i < cur.obstructions.size(); ++i) cur.obstruction_index.emplace(cur.obstructions[i], i);

        // NF(LW) = -(tail), over B_d.
        for (std::uint32_t i = 0; i < tsize; ++i) {
            if (ech.pivot_of[i] < 0) continue;
            const SparseVec<E>& row = ech.rows[static_cast<std::size_t>(ech.pivot_of[i])];
            SparseVec<E> nf;
            for (std::size_t t = 0; t + 1 < row.size(); ++t) nf.push(remap[row.idx[t]], field_.neg(row.val[t]));
            cur.reductions.push_row(nf);
        }
        ech.rows.clear();
        ech.rows.shrink_to_fit();

        // Final table: substitute obstruction words by their normal forms.
        Csr<E> tentative_mult = std::move(cur.mult);
        cur.mult.clear();
        Accumulator<F> out_acc(cur.normal.size(), field_);
        for (std::size_t r = 0; r < rows; ++r) {
            std::uint32_t dir = cur.direct[r];
            if (dir != kNone) {
                if (remap[dir] != kNone) {
                    cur.direct[r] = remap[dir];
                } else {
                    cur.direct[r] = kNone;
                    const std::uint32_t o = ob_id[dir];
                    cur.mult_row[r] = static_cast<std::uint32_t>(cur.mult.rows());
                    SparseVec<E> nf;
                    auto ri = cur.reductions.indices(o);
                    auto rv = cur.reductions.values(o);
                    nf.idx.assign(ri.begin(), ri.end());
                    nf.val.assign(rv.begin(), rv.end());
                    cur.mult.push_row(nf);
                }
                continue;
            }
            const std::uint32_t tr = cur.mult_row[r];
            auto ii = tentative_mult.indices(tr);
            auto vv = tentative_mult.values(tr);
            for (std::size_t t = 0; t < ii.size(); ++t) {
                const std::uint32_t j = ii[t];
                if (remap[j] != kNone) {
                    out_acc.add(field_, remap[j], vv[t]);
                } else {
                    const std::uint32_t o = ob_id[j];
                    out_acc.add_scaled(field_, cur.reductions.indices(o), cur.reductions.values(o), vv[t]);
                }
            }
            cur.mult_row[r] = static_cast<std::uint32_t>(cur.mult.rows());
            cur.mult.push_row(out_acc.take(field_));
        }
        cur.mult.shrink();

        cur.stats.degree = d;
        cur.stats.candidates = tsize;
        cur.stats.obstructions = cur.obstructions.size();
        cur.stats.normal = cur.normal.size();
        cur.stats.nonzero_spolys = nonzero;
        cur.stats.table_nonzeros = cur.mult.nonzeros();
        cur.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (options_.on_degree) options_.on_degree(cur.stats);
    }

    template <class Absorb>
    void process_ambiguities(const std::vector<Ambiguity>& amb, std::size_t tsize, Absorb& absorb) {
        const unsigned threads = std::max(1u, options_.threads);
        const std::size_t batch = std::max<std::size_t>(1, options_.batch);
        std::vector<std::vector<Accumulator<F>>> scratch(threads);
        std::vector<Accumulator<F>> outs(threads);
        for (auto& o : outs) o.resize(tsize, field_);
        std::vector<SparseVec<E>> results;
        for (std::size_t start = 0; start < amb.size(); start += batch) {
            const std::size_t end = std::min(amb.size(), start + batch);
            results.assign(end - start, SparseVec<E>{});
            auto work = [&](unsigned t) {
                for (std::size_t i = start + t; i < end; i += threads) {
                    spoly_into(amb[i], outs[t], scratch[t]);
                    results[i - start] = outs[t].take(field_);
                }
            };
            if (threads == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
                for (auto& th : pool) th.join();
            }
            for (auto& r : results) absorb(std::move(r));
        }
    }

    F field_;
    Packing pack_;
    std::vector<Relation> relations_;
    EngineOptions options_;
    std::vector<Level> levels_;
};

}  // namespace ncalg::detail
