#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ncalg::detail {

/// Sparse vector with strictly increasing indices.
template <class E>
struct SparseVec {
    std::vector<std::uint32_t> idx;
    std::vector<E> val;

    std::size_t size() const { return idx.size(); }
    bool empty() const { return idx.empty(); }
    void clear() {
        idx.clear();
        val.clear();
    }
    void push(std::uint32_t i, E v) {
        idx.push_back(i);
        val.push_back(std::move(v));
    }
};

/// Compressed rows of sparse vectors, appended in order.
template <class E>
class Csr {
public:
    std::size_t rows() const { return offsets_.size() - 1; }
    std::size_t nonzeros() const { return idx_.size(); }

    std::span<const std::uint32_t> indices(std::size_t r) const {
        return {idx_.data() + offsets_[r], static_cast<std::size_t>(offsets_[r + 1] - offsets_[r])};
    }
    std::span<const E> values(std::size_t r) const {
        return {val_.data() + offsets_[r], static_cast<std::size_t>(offsets_[r + 1] - offsets_[r])};
    }

    void push_row(const SparseVec<E>& v) {
        idx_.insert(idx_.end(), v.idx.begin(), v.idx.end());
        val_.insert(val_.end(), v.val.begin(), v.val.end());
        offsets_.push_back(idx_.size());
    }
    void push_empty() { offsets_.push_back(idx_.size()); }
    void push_single(std::uint32_t i, const E& v) {
        idx_.push_back(i);
        val_.push_back(v);
        offsets_.push_back(idx_.size());
    }
    void reserve_rows(std::size_t n) { offsets_.reserve(n + 1); }
    void shrink() {
        offsets_.shrink_to_fit();
        idx_.shrink_to_fit();
        val_.shrink_to_fit();
    }
    void clear() {
        offsets_.assign(1, 0);
        idx_.clear();
        val_.clear();
    }
    std::size_t memory_bytes() const {
        return offsets_.capacity() * sizeof(std::uint64_t) + idx_.capacity() * sizeof(std::uint32_t) +
               val_.capacity() * sizeof(E);
    }

private:
    std::vector<std::uint64_t> offsets_{0};
    std::vector<std::uint32_t> idx_;
    std::vector<E> val_;
};

/// Dense scratch accumulator with a touched list, for building sparse vectors.
template <class F>
class Accumulator {
public:
    using E = typename F::Element;

    Accumulator() = default;
    explicit Accumulator(std::size_t n, const F& field) { resize(n, field); }

    void resize(std::size_t n, const F& field) {
        dense_.assign(n, field.zero());
        mark_.assign(n, 0);
        touched_.clear();
    }
    std::size_t capacity() const { return dense_.size(); }

    void add(const F& field, std::uint32_t i, const E& v) {
        if (!mark_[i]) {
            mark_[i] = 1;
            touched_.push_back(i);
            dense_[i] = v;
        } else {
            dense_[i] = field.add(dense_[i], v);
        }
    }
    void add_scaled(const F& field, std::span<const std::uint32_t> idx, std::span<const E> val, const E& scale) {
        if (field.is_one(scale)) {
            for (std::size_t k = 0; k < idx.size(); ++k) add(field, idx[k], val[k]);
        } else {
            for (std::size_t k = 0; k < idx.size(); ++k) add(field, idx[k], field.mul(val[k], scale));
        }
    }

    bool touched(std::uint32_t i) const { return mark_[i] != 0; }
    const E& at(std::uint32_t i) const { return dense_[i]; }
    E& ref(std::uint32_t i) { return dense_[i]; }

    /// Moves the nonzero entries out, sorted by index, and resets.
    SparseVec<E> take(const F& field) {
        std::sort(touched_.begin(), touched_.end());
        SparseVec<E> out;
        out.idx.reserve(touched_.size());
        out.val.reserve(touched_.size());
        for (std::uint32_t i : touched_) {
            if (!field.is_zero(dense_[i])) out.push(i, std::move(dense_[i]));
            dense_[i] = field.zero();
            mark_[i] = 0;
        }
        touched_.clear();
        return out;
    }

    void reset(const F& field) {
        for (std::uint32_t i : touched_) {
            dense_[i] = field.zero();
            mark_[i] = 0;
        }
        touched_.clear();
    }

    std::vector<std::uint32_t>& touched_list() { return touched_; }

private:
    std::vector<E> dense_;
    std::vector<std::uint8_t> mark_;
    std::vector<std::uint32_t> touched_;
};

}  // namespace ncalg::detail
