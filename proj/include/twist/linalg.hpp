#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tw {

template <class E>
class Mat {
public:
    Mat() = default;
    Mat(size_t r, size_t c, const E& z) : r_(r), c_(c), d_(r * c, z) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    E& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
    const E& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }
    E* row(size_t i) { return d_.data() + i * c_; }
    const E* row(size_t i) const { return d_.data() + i * c_; }
    std::vector<E> row_vec(size_t i) const { return {row(i), row(i) + c_}; }
    std::vector<E> col_vec(size_t j) const {
        std::vector<E> v;
        v.reserve(r_);
        for (size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < c_; ++k) std::swap(d_[i * c_ + k], d_[j * c_ + k]);
    }
    void append_row(const std::vector<E>& v) {
        if (r_ == 0 && c_ == 0) c_ = v.size();
        if (v.size() != c_) throw std::invalid_argument("row length mismatch");
        d_.insert(d_.end(), v.begin(), v.end());
        ++r_;
    }
    void truncate_rows(size_t n) {
        if (n < r_) {
            r_ = n;
            d_.resize(r_ * c_);
        }
    }
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    const std::vector<E>& data() const { return d_; }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<E> d_;
};

template <class E>
Mat<E> identity(size_t n, const E& zero, const E& one) {
    Mat<E> m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
}

template <class E>
Mat<E> operator*(const Mat<E>& a, const Mat<E>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    E zero = a.rows() && a.cols() ? a(0, 0) - a(0, 0) : (b.rows() && b.cols() ? b(0, 0) - b(0, 0) : E());
    Mat<E> r(a.rows(), b.cols(), zero);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const E& x = a(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                const E& y = b(k, j);
                if (!y.is_zero()) r(i, j) += x * y;
            }
        }
    return r;
}

template <class E>
std::vector<E> mat_vec(const Mat<E>& a, const std::vector<E>& v, const E& zero) {
    std::vector<E> r(a.rows(), zero);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const E& x = a(i, k);
            if (!x.is_zero() && !v[k].is_zero()) r[i] += x * v[k];
        }
    return r;
}

template <class E>
Mat<E> transpose(const Mat<E>& a, const E& zero) {
    Mat<E> r(a.cols(), a.rows(), zero);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

template <class E>
Mat<E> mat_sub(const Mat<E>& a, const Mat<E>& b) {
    Mat<E> r(a);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

template <class E>
Mat<E> mat_scale(const Mat<E>& a, const E& s) {
    Mat<E> r(a);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * s;
    return r;
}

template <class E>
bool is_zero_mat(const Mat<E>& a) {
    for (const auto& x : a.data())
        if (!x.is_zero()) return false;
    return true;
}

// Full reduction in place; pivot columns returned in order. Among candidate
// pivots the cheapest element is preferred (relevant for rational functions).
template <class E>
size_t rref(Mat<E>& m, std::vector<size_t>* pivots = nullptr, size_t col_limit = size_t(-1)) {
    const size_t R = m.rows(), C = std::min(m.cols(), col_limit);
    size_t rank = 0;
    if (pivots) pivots->clear();
    for (size_t col = 0; col < C && rank < R; ++col) {
        size_t best = R;
        size_t best_cost = size_t(-1);
        for (size_t r = rank; r < R; ++r) {
            const E& x = m(r, col);
            if (x.is_zero()) continue;
            size_t cst = cost(x);
            if (cst < best_cost) {
                best = r;
                best_cost = cst;
                if (cst <= 1) break;
            }
        }
        if (best == R) continue;
        m.swap_rows(rank, best);
        E* pr = m.row(rank);
        if (!pr[col].is_one()) {
            E inv = pr[col].inv();
            for (size_t k = col; k < m.cols(); ++k)
                if (!pr[k].is_zero()) pr[k] = pr[k] * inv;
        }
        std::vector<size_t> nz;
        for (size_t k = col; k < m.cols(); ++k)
            if (!pr[k].is_zero()) nz.push_back(k);
        for (size_t r = 0; r < R; ++r) {
            if (r == rank) continue;
            E* rr = m.row(r);
            if (rr[col].is_zero()) continue;
            E f = rr[col];
            for (size_t k : nz) rr[k] = rr[k] - f * pr[k];
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

template <class E>
size_t rank_of(Mat<E> m) {
    return rref(m);
}

// Basis of {x : m x = 0}.
template <class E>
std::vector<std::vector<E>> nullspace(Mat<E> m, const E& zero, const E& one) {
    std::vector<size_t> piv;
    size_t rk = rref(m, &piv);
    std::vector<char> is_piv(m.cols(), 0);
    for (auto p : piv) is_piv[p] = 1;
    std::vector<std::vector<E>> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<E> v(m.cols(), zero);
        v[f] = one;
        for (size_t r = 0; r < rk; ++r) v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Row space in reduced echelon form, used for membership and equality tests.
template <class E>
struct RowSpace {
    Mat<E> basis;
    std::vector<size_t> piv;

    RowSpace() = default;
    RowSpace(Mat<E> m) : basis(std::move(m)) {
        size_t rk = rref(basis, &piv);
        basis.truncate_rows(rk);
    }
    size_t dim() const { return piv.size(); }
    // reduces v modulo the row space
    std::vector<E> reduce(std::vector<E> v) const {
        for (size_t r = 0; r < piv.size(); ++r) {
            const E f = v[piv[r]];
            if (f.is_zero()) continue;
            const E* br = basis.row(r);
            for (size_t k = 0; k < v.size(); ++k)
                if (!br[k].is_zero()) v[k] = v[k] - f * br[k];
        }
        return v;
    }
    bool contains(const std::vector<E>& v) const {
        for (const auto& x : reduce(v))
            if (!x.is_zero()) return false;
        return true;
    }
    bool operator==(const RowSpace& o) const { return piv == o.piv && basis == o.basis; }
};

template <class E>
E determinant(Mat<E> m, const E& zero, const E& one) {
    const size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    E det = one;
    for (size_t col = 0; col < n; ++col) {
        size_t best = n;
        size_t best_cost = size_t(-1);
        for (size_t r = col; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            size_t cst = cost(m(r, col));
            if (cst < best_cost) {
                best = r;
                best_cost = cst;
            }
        }
        if (best == n) return zero;
        if (best != col) {
            m.swap_rows(best, col);
            det = -det;
        }
        const E piv = m(col, col);
        det = det * piv;
        const E inv = piv.inv();
        for (size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            E f = m(r, col) * inv;
            for (size_t k = col; k < n; ++k)
                if (!m(col, k).is_zero()) m(r, k) = m(r, k) - f * m(col, k);
        }
    }
    return det;
}

template <class E>
bool invert(const Mat<E>& m, Mat<E>& out, const E& zero, const E& one) {
    const size_t n = m.rows();
    Mat<E> aug(n, 2 * n, zero);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = one;
    }
    std::vector<size_t> piv;
    size_t rk = rref(aug, &piv, n);
    if (rk < n) return false;
    out = Mat<E>(n, n, zero);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return true;
}

} // namespace tw
