#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ncalg/field.hpp"

namespace ncalg {

/// Row-major dense matrix over a field.
template <class F>
class DenseMatrix {
public:
    using Element = typename F::Element;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, const Element& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Element>& row) {
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }
    std::vector<Element> row(std::size_t r) const {
        return std::vector<Element>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                    data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }
    void truncate_rows(std::size_t n) {
        rows_ = n;
        data_.resize(n * cols_);
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Element> data_;
};

/// Reduced row echelon form in place; zero rows are dropped.  Returns the pivot
/// column of each remaining row.
template <class F>
std::vector<std::size_t> rref(const F& field, DenseMatrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && field.is_zero(m(sel, c))) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(r, sel);
        auto inv = field.inv(m(r, c));
        for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = field.mul(m(r, k), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || field.is_zero(m(i, c))) continue;
            auto f = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k) {
                if (!field.is_zero(m(r, k))) m(i, k) = field.sub(m(i, k), field.mul(f, m(r, k)));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    m.truncate_rows(r);
    return pivots;
}

template <class F>
std::size_t rank(const F& field, DenseMatrix<F> m) {
    return rref(field, m).size();
}

/// Basis of { v : m v = 0 }, one vector per free column.
template <class F>
std::vector<std::vector<typename F::Element>> nullspace(const F& field, DenseMatrix<F> m) {
    auto pivots = rref(field, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<typename F::Element>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::Element> v(m.cols(), field.zero());
        v[free] = field.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = field.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class F>
std::optional<DenseMatrix<F>> inverse(const F& field, const DenseMatrix<F>& m) {
    const std::size_t n = m.rows();
    DenseMatrix<F> aug(n, 2 * n, field.zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = field.one();
    }
    auto pivots = rref(field, aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    DenseMatrix<F> out(n, n, field.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

}  // namespace ncalg
