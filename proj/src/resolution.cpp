#include "ncalg/resolution.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include <absl/container/flat_hash_map.h>

#include "ncalg/errors.hpp"
#include "ncalg/linalg.hpp"

namespace ncalg {

using detail::Packed;

std::int64_t Multigrading::key(const Word& w) const {
    std::int64_t k = 0;
    for (Letter l : w) k += letter_key.at(l);
    return k;
}

Multigrading multigrading(const Presentation& p, std::size_t max_degree) {
    const std::size_t g = p.generator_count();
    RationalField Q;
    // Every term of a relation must have the multidegree of its first term.
    DenseMatrix<RationalField> c(0, g, Rational());
    for (const auto& r : p.relations()) {
        std::vector<std::int64_t> first(g, 0);
        for (Letter l : r.terms().front().word) ++first[l];
        for (std::size_t t = 1; t < r.terms().size(); ++t) {
            std::vector<std::int64_t> diff = first;
            for (Letter l : r.terms()[t].word) --diff[l];
            if (std::all_of(diff.begin(), diff.end(), [](auto v) { return v == 0; })) continue;
            std::vector<Rational> row;
            for (auto v : diff) row.emplace_back(v);
            c.append_row(row);
        }
    }
    Multigrading mg;
    for (auto& v : nullspace(Q, c)) {
        mpz_class lcm = 1;
        std::vector<mpq_class> q(g);
        for (std::size_t i = 0; i < g; ++i) {
            v[i].to_mpq(q[i].get_mpq_t());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q[i].get_den_mpz_t());
        }
        std::vector<std::int64_t> comp(g);
        for (std::size_t i = 0; i < g; ++i) {
            mpz_class n = q[i].get_num() * (lcm / q[i].get_den());
            if (!n.fits_slong_p()) throw SizeGuardError("grading coefficient too large");
            comp[i] = n.get_si();
        }
        mg.components.push_back(std::move(comp));
    }
    mg.rank = mg.components.size();

    // Balanced mixed radix: component k of a word of degree <= D lies strictly
    // inside (-radix_k / 2, radix_k / 2).
    const std::int64_t D = static_cast<std::int64_t>(std::max<std::size_t>(max_degree, 1));
    mg.letter_key.assign(g, 0);
    std::int64_t place = 1;
    mg.used = 0;
    for (const auto& comp : mg.components) {
        std::int64_t bound = 0;
        for (auto v : comp) bound = std::max(bound, v < 0 ? -v : v);
        const std::int64_t radix = 2 * D * bound + 1;
        if (mg.used > 0 && place > (std::numeric_limits<std::int64_t>::max() / 4) / radix) break;
        for (std::size_t l = 0; l < g; ++l) mg.letter_key[l] += comp[l] * place;
        place *= radix;
        ++mg.used;
    }
    return mg;
}

std::uint64_t BettiTable::at(std::size_t i, std::size_t j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
}

std::string BettiTable::strategy_tag() const {
    if (strategy == BettiStrategy::Exact) return "exact-rational";
    std::string s = "modular(";
    for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
    return s + ")";
}

std::vector<std::uint32_t> modular_primes(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist((1u << 30) + 1, (1u << 31) - 1);
    std::vector<std::uint32_t> out;
    while (out.size() < count) {
        std::uint32_t p = dist(rng) | 1u;
        if (p >= (1u << 31) || !PrimeField::is_prime(p)) continue;
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

namespace {

/// Sparse column elimination with pivots keyed by their largest row.  Pivots
/// come in two kinds: untracked ones are original columns inserted without
/// reduction; tracked ones carry their combination of tracked inputs.
template <class F>
class Eliminator {
public:
    using E = typename F::Element;
    using Vec = std::vector<std::pair<Packed, E>>;  // descending

    explicit Eliminator(F f) : f_(std::move(f)) {}

    bool is_pivot_row(Packed row) const { return index_.contains(row); }
    std::size_t rank() const { return pivots_.size(); }

    void add_untracked(const Vec& v, Packed id) {
        Pivot p;
        p.scale = f_.inv(v.front().second);
        p.vec = scaled(v, p.scale);
        p.id = id;
        index_.emplace(v.front().first, static_cast<std::uint32_t>(pivots_.size()));
        pivots_.push_back(std::move(p));
    }

    /// Top-reduces v, updating `history` by the tracked pivots used.  Returns
    /// the residual (empty when v reduces to zero).
    Vec reduce(const Vec& v, Vec* history) {
        coeff_.clear();
        heap_.clear();
        hist_.clear();
        if (history)
            for (const auto& [id, c] : *history) hist_[id] = c;
        for (const auto& [r, c] : v) add(r, c);
        while (!heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end());
            const Packed r = heap_.back();
            auto it = coeff_.find(r);
            const E c = it->second;
            if (f_.is_zero(c)) {
                heap_.pop_back();
                coeff_.erase(it);
                continue;
            }
            auto pi = index_.find(r);
            if (pi == index_.end()) break;  // r stays on the heap as the lead
            heap_.pop_back();
            coeff_.erase(it);
            const Pivot& p = pivots_[pi->second];
            for (std::size_t k = 1; k < p.vec.size(); ++k) add(p.vec[k].first, f_.neg(f_.mul(c, p.vec[k].second)));
            if (history && p.tracked)
                for (const auto& [id, hc] : p.history) {
                    auto [hit, fresh] = hist_.try_emplace(id, f_.neg(f_.mul(c, hc)));
                    if (!fresh) hit->second = f_.sub(hit->second, f_.mul(c, hc));
                }
        }
        Vec out;
        for (const auto& [r, c] : coeff_)
            if (!f_.is_zero(c)) out.emplace_back(r, c);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        if (history) {
            history->clear();
            for (const auto& [id, c] : hist_)
                if (!f_.is_zero(c)) history->emplace_back(id, c);
            std::sort(history->begin(), history->end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        }
        return out;
    }

    void add_tracked(const Vec& residual, const Vec& history) {
        Pivot p;
        p.scale = f_.inv(residual.front().second);
        p.vec = scaled(residual, p.scale);
        p.history = scaled(history, p.scale);
        p.tracked = true;
        index_.emplace(residual.front().first, static_cast<std::uint32_t>(pivots_.size()));
        pivots_.push_back(std::move(p));
    }

    /// Writes v as a combination sum_i c_i * column(id_i) of untracked pivots.
    Vec express(const Vec& v) {
        coeff_.clear();
        heap_.clear();
        for (const auto& [r, c] : v) add(r, c);
        Vec out;
        while (!heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end());
            const Packed r = heap_.back();
            heap_.pop_back();
            auto it = coeff_.find(r);
            const E c = it->second;
            coeff_.erase(it);
            if (f_.is_zero(c)) continue;
            auto pi = index_.find(r);
            if (pi == index_.end() || pivots_[pi->second].tracked)
                throw std::logic_error("kernel reconstruction left a nonzero remainder");
            const Pivot& p = pivots_[pi->second];
            out.emplace_back(p.id, f_.mul(c, p.scale));
            for (std::size_t k = 1; k < p.vec.size(); ++k) add(p.vec[k].first, f_.neg(f_.mul(c, p.vec[k].second)));
        }
        return out;
    }

private:
    struct Pivot {
        Vec vec;  // monic
        Vec history;
        bool tracked = false;
        Packed id = 0;
        E scale{};
    };

    void add(Packed r, const E& c) {
        auto [it, fresh] = coeff_.try_emplace(r, c);
        if (fresh) {
            heap_.push_back(r);
            std::push_heap(heap_.begin(), heap_.end());
        } else {
            it->second = f_.add(it->second, c);
        }
    }

    Vec scaled(const Vec& v, const E& s) const {
        Vec out = v;
        for (auto& t : out) t.second = f_.mul(t.second, s);
        return out;
    }

    F f_;
    std::vector<Pivot> pivots_;
    absl::flat_hash_map<Packed, std::uint32_t> index_;
    absl::flat_hash_map<Packed, E> coeff_;
    absl::flat_hash_map<Packed, E> hist_;
    std::vector<Packed> heap_;
};

/// Normal words up to a degree, grouped by multidegree key.
struct WordTable {
    std::vector<std::map<std::int64_t, std::vector<Packed>>> lists;  // degrees <= list_degree
    std::vector<std::map<std::int64_t, std::uint64_t>> counts;

    std::uint64_t count(std::size_t d, std::int64_t key) const {
        auto it = counts[d].find(key);
        return it == counts[d].end() ? 0 : it->second;
    }
    const std::vector<Packed>& list(std::size_t d, std::int64_t key) const {
        static const std::vector<Packed> empty;
        auto it = lists[d].find(key);
        return it == lists[d].end() ? empty : it->second;
    }
};

WordTable enumerate_words(const detail::Automaton* aut, const detail::Packing& pk,
                          const std::vector<std::int64_t>& code_key, std::size_t max_degree,
                          std::size_t list_degree) {
    WordTable t;
    t.lists.resize(list_degree + 1);
    t.counts.resize(max_degree + 1);
    const unsigned g = pk.generators;
    struct Frame {
        std::uint32_t state;
        Packed word;
        std::int64_t key;
    };
    std::vector<Frame> stack{{0, 0, 0}};
    std::vector<std::size_t> depth{0};
    // Explicit-stack depth-first walk.
    while (!stack.empty()) {
        const Frame f = stack.back();
        const std::size_t d = depth.back();
        stack.pop_back();
        depth.pop_back();
        ++t.counts[d][f.key];
        if (d <= list_degree) t.lists[d][f.key].push_back(f.word);
        if (d == max_degree) continue;
        for (unsigned c = 0; c < g; ++c) {
            std::uint32_t s = 0;
            if (aut) {
                s = aut->next(f.state, c);
                if (aut->match(s) >= 0) continue;
            }
            stack.push_back({s, pk.append(f.word, c), f.key + code_key[c]});
            depth.push_back(d + 1);
        }
    }
    for (auto& level : t.lists)
        for (auto& [k, v] : level) std::sort(v.begin(), v.end());
    return t;
}

struct Outcome {
    std::vector<std::uint64_t> tor3;  // by internal degree
    std::vector<BlockStats> blocks;
};

template <class F>
class Resolver {
public:
    using E = typename F::Element;
    using Vec = std::vector<std::pair<Packed, E>>;
    using Engine = detail::Completion<F>;

    Resolver(const GroebnerBasis& gb, const Engine& engine, const Multigrading& mg, const BettiOptions& options)
        : gb_(gb), eng_(engine), f_(engine.field()), pk_(engine.packing()), options_(options) {
        const unsigned g = pk_.generators;
        code_key_.resize(g);
        for (unsigned c = 0; c < g; ++c) code_key_[c] = mg.letter_key[gb.letter(c)];
        const auto& lvl = eng_.level(2);
        for (std::size_t i = 0; i < lvl.obstructions.size(); ++i) {
            Relation r;
            r.lead = lvl.obstructions[i];
            r.key = key_of(r.lead, 2);
            r.terms.push_back({pk_.letter(r.lead, 2, 0), pk_.letter(r.lead, 2, 1), f_.one()});
            for (const auto& [w, c] : lvl.tails[i]) r.terms.push_back({pk_.letter(w, 2, 0), pk_.letter(w, 2, 1), f_.neg(c)});
            relations_.push_back(std::move(r));
        }
    }

    std::size_t relation_count() const { return relations_.size(); }

    Outcome run(std::size_t max_j) {
        Outcome out;
        out.tor3.assign(max_j + 1, 0);
        if (max_j < 3) return out;
        const WordTable words = enumerate_words(eng_.automaton(), pk_, code_key_, max_j, max_j - 2);
        std::map<std::int64_t, std::vector<Vec>> previous;  // kernel bases of degree j-1
        for (std::size_t j = 3; j <= max_j; ++j) {
            std::map<std::int64_t, std::vector<Vec>> current;
            std::map<std::int64_t, std::size_t> predicted;
            std::set<std::int64_t> keys;
            for (const auto& r : relations_)
                for (const auto& [k, n] : words.counts[j - 2]) keys.insert(k + r.key);
            for (auto alpha : keys) {
                // Exactness of F_2 -> F_1 -> F_0 -> k in this block.
                std::int64_t dim = static_cast<std::int64_t>(words.count(j, alpha));
                for (const auto& r : relations_) dim += static_cast<std::int64_t>(words.count(j - 2, alpha - r.key));
                for (unsigned c = 0; c < pk_.generators; ++c)
                    dim -= static_cast<std::int64_t>(words.count(j - 1, alpha - code_key_[c]));
                if (dim < 0) throw std::logic_error("negative kernel dimension");
                predicted[alpha] = static_cast<std::size_t>(dim);
            }
            for (auto alpha : keys) {
                if (predicted[alpha] == 0 && j > options_.full_elimination_degree) continue;
                BlockStats st;
                st.internal_degree = j;
                st.key = alpha;
                auto kernel = block_kernel(j, alpha, words, st);
                if (kernel.size() != predicted[alpha])
                    throw ModularDisagreement("kernel dimension " + std::to_string(kernel.size()) +
                                              " differs from the Hilbert-series prediction " +
                                              std::to_string(predicted[alpha]) + " in degree " + std::to_string(j));
                st.kernel = kernel.size();
                if (!kernel.empty()) current[alpha] = std::move(kernel);
                out.blocks.push_back(st);
            }
            // Left multiples of the lower kernel, grouped by target block.
            std::map<std::int64_t, std::vector<Vec>> products;
            for (const auto& [beta, basis] : previous)
                for (unsigned x = 0; x < pk_.generators; ++x)
                    for (const auto& k : basis) {
                        Vec v = left_multiply(x, k, j - 1);
                        if (v.empty()) continue;
                        const std::int64_t alpha = beta + code_key_[x];
                        if (!current.count(alpha)) throw std::logic_error("left multiple outside the kernel");
                        products[alpha].push_back(std::move(v));
                    }
            std::uint64_t tor = 0;
            for (const auto& [alpha, basis] : current) {
                Eliminator<F> el(f_);
                std::size_t n = 0;
                for (const auto& v : products[alpha]) {
                    ++n;
                    auto res = el.reduce(v, nullptr);
                    if (!res.empty()) el.add_tracked(res, {});
                }
                for (auto& st : out.blocks)
                    if (st.internal_degree == j && st.key == alpha) {
                        st.products = n;
                        st.product_rank = el.rank();
                    }
                tor += basis.size() - el.rank();
            }
            out.tor3[j] = tor;
            if (options_.progress)
                options_.progress("degree " + std::to_string(j) + ": Tor_3 = " + std::to_string(tor));
            previous = std::move(current);
        }
        return out;
    }

private:
    struct Relation {
        Packed lead = 0;
        std::int64_t key = 0;
        struct Term {
            unsigned x, y;
            E c;
        };
        std::vector<Term> terms;
    };

    std::int64_t key_of(Packed w, unsigned len) const {
        std::int64_t k = 0;
        for (unsigned i = 0; i < len; ++i) k += code_key_[pk_.letter(w, len, i)];
        return k;
    }

    /// Normal forms of the given degree-d words, computed in parallel.
    absl::flat_hash_map<Packed, Vec> normal_forms(std::vector<Packed> ws, unsigned d) const {
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        std::vector<Vec> nf(ws.size());
        const unsigned threads = std::max(1u, options_.threads);
        auto work = [&](unsigned t) {
            typename Engine::Workspace w;
            for (std::size_t i = t; i < ws.size(); i += threads)
                nf[i] = eng_.reduce(d, Vec{{ws[i], f_.one()}}, w, nullptr);
        };
        if (threads == 1 || ws.size() < 64) {
            for (unsigned t = 0; t < threads; ++t) work(t);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        absl::flat_hash_map<Packed, Vec> out;
        for (std::size_t i = 0; i < ws.size(); ++i) out.emplace(ws[i], std::move(nf[i]));
        return out;
    }

    /// Basis of the kernel of d_2 in the block, as combinations of columns
    /// (b, r) identified by the word b * lead(r).
    std::vector<Vec> block_kernel(std::size_t j, std::int64_t alpha, const WordTable& words, BlockStats& st) {
        const unsigned jd = static_cast<unsigned>(j);
        struct Column {
            Packed id;
            Packed b;
            std::uint32_t r;
        };
        std::vector<Column> cols;
        std::vector<Packed> needed;
        for (std::uint32_t ri = 0; ri < relations_.size(); ++ri) {
            const auto& r = relations_[ri];
            for (Packed b : words.list(j - 2, alpha - r.key)) {
                cols.push_back({pk_.concat(b, r.lead, 2), b, ri});
                for (const auto& t : r.terms) needed.push_back(pk_.append(b, t.x));
            }
        }
        std::sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) { return a.id < b.id; });
        st.columns = cols.size();
        const auto nf = normal_forms(std::move(needed), jd - 1);

        std::vector<Vec> vecs(cols.size());
        absl::flat_hash_map<Packed, E> acc;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            acc.clear();
            for (const auto& t : relations_[cols[i].r].terms)
                for (const auto& [w, c] : nf.at(pk_.append(cols[i].b, t.x))) {
                    auto [it, fresh] = acc.try_emplace(pk_.append(w, t.y), f_.mul(t.c, c));
                    if (!fresh) it->second = f_.add(it->second, f_.mul(t.c, c));
                }
            for (const auto& [w, c] : acc)
                if (!f_.is_zero(c)) vecs[i].emplace_back(w, c);
            std::sort(vecs[i].begin(), vecs[i].end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            st.max_column_nonzeros = std::max(st.max_column_nonzeros, vecs[i].size());
        }
        st.rows = 0;
        for (unsigned y = 0; y < pk_.generators; ++y) st.rows += words.count(j - 1, alpha - code_key_[y]);

        // Columns with a free leading row enter unreduced; the rest are
        // reduced with their combinations tracked.
        Eliminator<F> el(f_);
        std::vector<std::size_t> deferred;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (vecs[i].empty()) {
                deferred.push_back(i);
                continue;
            }
            if (el.is_pivot_row(vecs[i].front().first)) {
                deferred.push_back(i);
                continue;
            }
            el.add_untracked(vecs[i], cols[i].id);
        }
        std::vector<Vec> kernel;
        for (std::size_t k = 0; k < deferred.size(); ++k) {
            Vec hist{{static_cast<Packed>(k), f_.one()}};
            Vec res = el.reduce(vecs[deferred[k]], &hist);
            if (!res.empty()) {
                el.add_tracked(res, hist);
                continue;
            }
            // hist combines deferred columns into the span of the untracked ones.
            absl::flat_hash_map<Packed, E> sum;
            Vec out;
            for (const auto& [dk, c] : hist) {
                out.emplace_back(cols[deferred[dk]].id, c);
                for (const auto& [w, wc] : vecs[deferred[dk]]) {
                    auto [it, fresh] = sum.try_emplace(w, f_.mul(c, wc));
                    if (!fresh) it->second = f_.add(it->second, f_.mul(c, wc));
                }
            }
            Vec y;
            for (const auto& [w, c] : sum)
                if (!f_.is_zero(c)) y.emplace_back(w, c);
            std::sort(y.begin(), y.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            for (const auto& [id, c] : el.express(y)) out.emplace_back(id, f_.neg(c));
            std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            kernel.push_back(std::move(out));
        }
        return kernel;
    }

    /// x * v for v in degree d of F_2 (columns b * lead(r) with |b| = d - 2).
    Vec left_multiply(unsigned x, const Vec& v, std::size_t d) const {
        const unsigned bl = static_cast<unsigned>(d - 2);
        absl::flat_hash_map<Packed, E> acc;
        typename Engine::Workspace ws;
        for (const auto& [id, c] : v) {
            const Packed b = pk_.prefix(id, static_cast<unsigned>(d), bl);
            const Packed lead = pk_.suffix(id, 2);
            const Packed xb = pk_.concat(x, b, bl);
            for (const auto& [w, wc] : eng_.reduce(bl + 1, Vec{{xb, f_.one()}}, ws, nullptr)) {
                auto [it, fresh] = acc.try_emplace(pk_.concat(w, lead, 2), f_.mul(c, wc));
                if (!fresh) it->second = f_.add(it->second, f_.mul(c, wc));
            }
        }
        Vec out;
        for (const auto& [w, c] : acc)
            if (!f_.is_zero(c)) out.emplace_back(w, c);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        return out;
    }

    const GroebnerBasis& gb_;
    const Engine& eng_;
    F f_;
    detail::Packing pk_;
    const BettiOptions& options_;
    std::vector<std::int64_t> code_key_;
    std::vector<Relation> relations_;
};

/// The completion over F_p of the same relations, or nothing when p divides a
/// denominator or the obstructions differ from the rational ones.
std::unique_ptr<detail::Completion<PrimeField>> modular_engine(const GroebnerBasis& gb, std::uint32_t p,
                                                               unsigned degree, unsigned threads) {
    PrimeField F(p);
    const auto& pk = gb.engine().packing();
    std::vector<detail::Completion<PrimeField>::Relation> rels;
    try {
        for (const auto& r : gb.presentation().relations()) {
            detail::Completion<PrimeField>::Relation er;
            er.degree = static_cast<unsigned>(*r.degree());
            for (const auto& t : r.terms()) er.terms.emplace_back(gb.pack(t.word), F.from_rational(t.coeff));
            std::sort(er.terms.begin(), er.terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            std::erase_if(er.terms, [](const auto& t) { return t.second == 0; });
            rels.push_back(std::move(er));
        }
    } catch (const std::domain_error&) {
        return nullptr;
    }
    detail::EngineOptions eo;
    eo.threads = threads;
    auto eng = std::make_unique<detail::Completion<PrimeField>>(F, pk.generators, std::move(rels), eo);
    eng->extend_to(degree);
    const unsigned shared = std::min<unsigned>(degree, static_cast<unsigned>(gb.truncation_degree()));
    for (unsigned d = 2; d <= shared; ++d)
        if (eng->level(d).obstructions != gb.engine().level(d).obstructions) return nullptr;
    return eng;
}

}  // namespace

BettiTable betti_numbers(const GroebnerBasis& gb, std::size_t max_i, std::size_t max_j, const BettiOptions& options) {
    if (max_i > 3) throw Error("homological degree is capped at 3");
    // Matrices in degree j only involve normal forms of degree < j, so the
    // modular strategy can go one degree past the basis, taking the top-degree
    // dimensions from its own bases.
    const bool beyond = max_j == gb.truncation_degree() + 1 && options.strategy == BettiStrategy::Modular &&
                        max_i >= 3 && max_j >= 3;
    if (max_j > gb.truncation_degree() && !beyond)
        throw TruncationError("internal degree " + std::to_string(max_j) + " exceeds truncation " +
                              std::to_string(gb.truncation_degree()));
    if (!gb.presentation().relations().empty() && !gb.presentation().is_quadratic())
        throw RelationError("Betti numbers need a quadratic presentation");

    BettiTable t;
    t.algebra = gb.presentation().name();
    t.max_i = max_i;
    t.max_j = max_j;
    const Multigrading mg = multigrading(gb.presentation(), max_j);
    const unsigned nf_degree = static_cast<unsigned>(std::max<std::size_t>(max_j, 3) - 1);
    const bool need_tor3 = max_i >= 3 && max_j >= 3;

    auto exact = [&](std::size_t through) {
        Resolver<RationalField> res(gb, gb.engine(), mg, options);
        return res.run(through);
    };

    Outcome outcome;
    t.strategy = options.strategy;
    if (options.strategy == BettiStrategy::Modular) t.primes = modular_primes(2, options.seed);
    if (need_tor3 && options.strategy == BettiStrategy::Modular) {
        std::vector<Outcome> runs;
        std::vector<std::vector<detail::Packed>> tops;
        bool ok = true;
        std::string why;
        for (auto p : t.primes) {
            auto eng = modular_engine(gb, p, std::max<unsigned>(static_cast<unsigned>(max_j), nf_degree), options.threads);
            if (!eng) {
                ok = false;
                why = "prime " + std::to_string(p) + " is unlucky for this presentation";
                break;
            }
            if (beyond) {
                tops.push_back(eng->level(static_cast<unsigned>(max_j)).obstructions);
                t.top_dimension = eng->count_normal_words(static_cast<unsigned>(max_j)).back();
            }
            try {
                Resolver<PrimeField> res(gb, *eng, mg, options);
                runs.push_back(res.run(max_j));
            } catch (const ModularDisagreement& e) {
                ok = false;
                why = e.what();
                break;
            }
        }
        if (ok && (runs[0].tor3 != runs[1].tor3 || (beyond && tops[0] != tops[1]))) {
            ok = false;
            why = "the two primes disagree";
        }
        if (ok && options.exact_recheck_degree >= 3) {
            const std::size_t through = std::min(options.exact_recheck_degree, max_j);
            auto ex = exact(through);
            for (std::size_t j = 3; j <= through; ++j)
                if (ex.tor3[j] != runs[0].tor3[j]) {
                    ok = false;
                    why = "exact recheck disagrees in degree " + std::to_string(j);
                }
            if (ok) t.exact_recheck_degree = through;
        }
        if (ok) {
            outcome = std::move(runs[0]);
        } else if (options.exact_fallback && !beyond) {
            t.strategy = BettiStrategy::Exact;
            t.primes.clear();
            t.fell_back_to_exact = true;
            outcome = exact(max_j);
        } else {
            throw ModularDisagreement(why);
        }
    } else if (need_tor3) {
        outcome = exact(max_j);
    }
    if (t.strategy == BettiStrategy::Exact) t.exact_recheck_degree = need_tor3 ? max_j : 0;
    t.blocks = std::move(outcome.blocks);

    const std::size_t g = gb.presentation().generator_count();
    const std::size_t r2 = gb.size(std::min<std::size_t>(2, gb.truncation_degree()));
    for (std::size_t i = 0; i <= max_i; ++i)
        for (std::size_t j = i; j <= max_j; ++j) {
            std::uint64_t v = 0;
            if (i == 0) v = j == 0;
            if (i == 1) v = j == 1 ? g : 0;
            if (i == 2) v = j == 2 ? r2 : 0;
            if (i == 3) v = outcome.tor3.empty() ? 0 : outcome.tor3[j];
            t.entries[{i, j}] = v;
        }
    return t;
}

std::vector<BigInt> euler_check(const HilbertSeries& h, const BettiTable& b, std::size_t max_degree) {
    if (h.algebra != b.algebra) throw Error("series and Betti table describe different algebras");
    if (max_degree > h.max_degree()) throw TruncationError("series shorter than the requested degree");
    std::vector<BigInt> poly(max_degree + 1, 0);
    for (const auto& [ij, v] : b.entries) {
        const auto [i, j] = ij;
        if (j > max_degree) continue;
        if (i % 2) poly[j] -= static_cast<unsigned long>(v);
        else poly[j] += static_cast<unsigned long>(v);
    }
    std::vector<BigInt> out(max_degree + 1, 0);
    for (std::size_t d = 0; d <= max_degree; ++d)
        for (std::size_t k = 0; k <= d; ++k) out[d] += h[d - k] * poly[k];
    out[0] -= 1;
    return out;
}

}  // namespace ncalg
