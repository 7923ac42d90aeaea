#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opergr/rational.hpp"

namespace opergr {

/// Dense row-major matrix over an exact field.
template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
Mat<F> zero_matrix(std::size_t rows, std::size_t cols)
{
    return Mat<F>(rows, std::vector<F>(cols, F(0)));
}

/// In-place reduced row echelon form; returns the pivot column of each nonzero row.
template <class F>
std::vector<std::size_t> rref(Mat<F> &m)
{
    std::vector<std::size_t> pivots;
    if (m.empty()) {
        return pivots;
    }
    std::size_t rows = m.size();
    std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[r], m[p]);
        F inv = F(1) / m[r][c];
        for (std::size_t k = c; k < cols; ++k) {
            m[r][k] = m[r][k] * inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) {
                continue;
            }
            F f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) {
                if (!m[r][k].is_zero()) {
                    m[i][k] = m[i][k] - f * m[r][k];
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

template <class F>
std::size_t rank(Mat<F> m)
{
    return rref(m).size();
}

/// Basis of {x : m x = 0}, one vector per free column, in echelon-compatible order.
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> m, std::size_t cols)
{
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<F> v(cols, F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
F determinant(Mat<F> m)
{
    std::size_t n = m.size();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) {
            ++p;
        }
        if (p == n) {
            return F(0);
        }
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        F inv = F(1) / m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) {
                continue;
            }
            F f = m[i][c] * inv;
            for (std::size_t k = c; k < n; ++k) {
                m[i][k] = m[i][k] - f * m[c][k];
            }
        }
    }
    return det;
}

template <class F>
Mat<F> transpose(const Mat<F> &m)
{
    if (m.empty()) {
        return {};
    }
    Mat<F> t = zero_matrix<F>(m[0].size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            t[j][i] = m[i][j];
        }
    }
    return t;
}

template <class F>
Mat<F> matmul(const Mat<F> &a, const Mat<F> &b)
{
    std::size_t n = a.size();
    std::size_t k = b.size();
    std::size_t m = k == 0 ? 0 : b[0].size();
    Mat<F> out = zero_matrix<F>(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (!b[l][j].is_zero()) {
                    out[i][j] = out[i][j] + a[i][l] * b[l][j];
                }
            }
        }
    }
    return out;
}

/// Row space of the given vectors in reduced echelon form (a canonical basis).
template <class F>
Mat<F> row_space(Mat<F> rows)
{
    rref(rows);
    return rows;
}

} // namespace opergr
