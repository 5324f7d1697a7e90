#pragma once

#include "cfx/rational.hpp"

#include <stdexcept>
#include <vector>

namespace cfx {

template <class T> struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, T(0)) {}

    T &operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const T &operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    Mat transpose() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (auto &x : a)
            if (!(x == T(0))) return false;
        return true;
    }

    friend Mat operator*(const Mat &x, const Mat &y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
        Mat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x(i, k) == T(0)) continue;
                for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend Mat operator+(Mat x, const Mat &y) {
        if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix shape mismatch");
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
        return x;
    }
    friend Mat operator-(Mat x, const Mat &y) {
        if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix shape mismatch");
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
        return x;
    }
    friend Mat operator*(const T &s, Mat x) {
        for (auto &v : x.a) v *= s;
        return x;
    }
    friend bool operator==(const Mat &x, const Mat &y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

using QMat = Mat<mpq_class>;
using CMat = Mat<Cq>;

namespace detail {
inline bool is0(const mpq_class &x) { return sgn(x) == 0; }
inline bool is0(const Cq &x) { return x.is_zero(); }
} // namespace detail

// row echelon form in place; returns rank; pivots (column per pivot row) optional
template <class T> int row_reduce(Mat<T> &m, std::vector<int> *pivots = nullptr, bool reduced = false) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!detail::is0(m(i, c))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (int i = reduced ? 0 : r + 1; i < m.rows; ++i) {
            if (i == r || detail::is0(m(i, c))) continue;
            T f = m(i, c);
            for (int j = c; j < m.cols; ++j)
                if (!detail::is0(m(r, j))) m(i, j) -= f * m(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

template <class T> int rank(Mat<T> m) { return row_reduce(m); }

template <class T> T det(Mat<T> m) {
    if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
    T d(1);
    for (int c = 0; c < m.cols; ++c) {
        int p = -1;
        for (int i = c; i < m.rows; ++i)
            if (!detail::is0(m(i, c))) {
                p = i;
                break;
            }
        if (p < 0) return T(0);
        if (p != c) {
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        T inv = T(1) / m(c, c);
        for (int i = c + 1; i < m.rows; ++i) {
            if (detail::is0(m(i, c))) continue;
            T f = m(i, c) * inv;
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

// basis of {x : m x = 0}, as columns
template <class T> std::vector<std::vector<T>> nullspace(Mat<T> m) {
    std::vector<int> piv;
    row_reduce(m, &piv, true);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<T> v(m.cols, T(0));
        v[f] = T(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(int(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// solve m x = b exactly; returns false if inconsistent (x = one solution otherwise)
template <class T> bool solve(const Mat<T> &m, const std::vector<T> &b, std::vector<T> &x) {
    Mat<T> aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    std::vector<int> piv;
    row_reduce(aug, &piv, true);
    x.assign(m.cols, T(0));
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == m.cols) return false;
        x[piv[r]] = aug(int(r), m.cols);
    }
    return true;
}

} // namespace cfx
