#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gibbslab/quadreal.hpp"

// Dense row-major matrices sized for alphabets, not for PDE grids.
// Everything is templated on the scalar so the same spectral code runs
// in double and in quad precision.

namespace gibbslab {

template <class T>
struct matrix {
    int rows = 0, cols = 0;
    std::vector<T> a;

    matrix() = default;
    matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

    static matrix identity(int n) {
        matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }
};

template <class T>
matrix<T> transpose(const matrix<T>& m) {
    matrix<T> t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

template <class T>
matrix<T> operator*(const matrix<T>& x, const matrix<T>& y) {
    assert(x.cols == y.rows);
    matrix<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            T v = x(i, k);
            if (v == T(0)) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

template <class T>
std::vector<T> mul(const matrix<T>& m, const std::vector<T>& x) {
    assert(m.cols == static_cast<int>(x.size()));
    std::vector<T> r(m.rows, T(0));
    for (int i = 0; i < m.rows; ++i) {
        T s(0);
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

template <class T>
std::vector<T> mul_left(const std::vector<T>& x, const matrix<T>& m) {
    assert(m.rows == static_cast<int>(x.size()));
    std::vector<T> r(m.cols, T(0));
    for (int i = 0; i < m.rows; ++i) {
        if (x[i] == T(0)) continue;
        for (int j = 0; j < m.cols; ++j) r[j] += x[i] * m(i, j);
    }
    return r;
}

template <class T>
matrix<T> submatrix(const matrix<T>& m, const std::vector<int>& ridx, const std::vector<int>& cidx) {
    matrix<T> r(static_cast<int>(ridx.size()), static_cast<int>(cidx.size()));
    for (size_t i = 0; i < ridx.size(); ++i)
        for (size_t j = 0; j < cidx.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = m(ridx[i], cidx[j]);
    return r;
}

template <class T>
matrix<T> principal_submatrix(const matrix<T>& m, const std::vector<int>& idx) {
    return submatrix(m, idx, idx);
}

template <class T>
T abs_of(T x) {
    using std::fabs;
    return fabs(x);
}

// LU with partial pivoting; returns false on (near-)singularity.
template <class T>
bool lu_factor(matrix<T>& m, std::vector<int>& perm, int& sign) {
    assert(m.square());
    int n = m.rows;
    perm.resize(n);
    sign = 1;
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        T best = abs_of(m(k, k));
        for (int i = k + 1; i < n; ++i)
            if (abs_of(m(i, k)) > best) { best = abs_of(m(i, k)); p = i; }
        if (!(best > T(0))) return false;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m.a[static_cast<size_t>(p) * n + j], m.a[static_cast<size_t>(k) * n + j]);
            std::swap(perm[p], perm[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            T f = m(i, k) / m(k, k);
            m(i, k) = f;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

template <class T>
std::vector<T> lu_solve_factored(const matrix<T>& lu, const std::vector<int>& perm, const std::vector<T>& b) {
    int n = lu.rows;
    std::vector<T> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
        x[i] /= lu(i, i);
    }
    return x;
}

// solve A x = b; throws on singular input
template <class T>
std::vector<T> solve(matrix<T> m, const std::vector<T>& b) {
    std::vector<int> perm;
    int sign;
    if (!lu_factor(m, perm, sign)) throw std::runtime_error("solve: singular matrix");
    return lu_solve_factored(m, perm, b);
}

template <class T>
bool try_solve(matrix<T> m, const std::vector<T>& b, std::vector<T>& out) {
    std::vector<int> perm;
    int sign;
    if (!lu_factor(m, perm, sign)) return false;
    out = lu_solve_factored(m, perm, b);
    return true;
}

template <class T>
T determinant(matrix<T> m) {
    if (m.rows == 0) return T(1);
    std::vector<int> perm;
    int sign;
    if (!lu_factor(m, perm, sign)) return T(0);
    T d = T(sign);
    for (int i = 0; i < m.rows; ++i) d *= m(i, i);
    return d;
}

template <class T>
T max_abs(const std::vector<T>& v) {
    T m(0);
    for (const T& x : v)
        if (abs_of(x) > m) m = abs_of(x);
    return m;
}

template <class T>
T sum_of(const std::vector<T>& v) {
    T s(0);
    for (const T& x : v) s += x;
    return s;
}

} // namespace gibbslab
