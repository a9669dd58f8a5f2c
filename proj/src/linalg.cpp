#include "qbr/linalg.hpp"

namespace qbr {

Matrix identity_matrix(const Field& F, size_t n) {
    Matrix m(n, Vec(n, FieldElem::zero(F)));
    for (size_t i = 0; i < n; ++i) m[i][i] = FieldElem::one(F);
    return m;
}

Matrix transpose(const Matrix& m) {
    if (m.empty()) return m;
    Matrix t(m[0].size(), Vec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

bool is_symmetric(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j)
            if (!(m[i][j] == m[j][i])) return false;
    return true;
}

FieldElem determinant(const Matrix& m0, const Field& F) {
    size_t n = m0.size();
    if (n == 0) return FieldElem::one(F);
    Matrix m = m0;
    FieldElem prev = FieldElem::one(F);
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return FieldElem::zero(F);
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            m[i][k] = FieldElem::zero(F);
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

size_t rank(const Matrix& m0) {
    Matrix m = m0;
    size_t rows = m.size(), r = 0;
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        FieldElem inv = m[r][c].inverse();
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            FieldElem f = m[i][c] * inv;
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

static bool is_unit_sign(const FieldElem& x) { return x.is_one() || (-x).is_one(); }

std::optional<Matrix> inverse(const Matrix& m0, const Field& F) {
    size_t n = m0.size();
    Matrix a = m0, inv = identity_matrix(F, n);
    std::vector<bool> used(n, false);
    std::vector<size_t> pivot_row(n);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t i = 0; i < n; ++i) {
            if (used[i] || a[i][c].is_zero()) continue;
            if (p == n) p = i;
            if (is_unit_sign(a[i][c])) {
                p = i;
                break;
            }
        }
        if (p == n) return std::nullopt;
        used[p] = true;
        pivot_row[c] = p;
        if (!a[p][c].is_one()) {
            FieldElem s = a[p][c].inverse();
            for (size_t j = 0; j < n; ++j) {
                if (!a[p][j].is_zero()) a[p][j] *= s;
                if (!inv[p][j].is_zero()) inv[p][j] *= s;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == p || a[i][c].is_zero()) continue;
            FieldElem f = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                if (!a[p][j].is_zero()) a[i][j] -= f * a[p][j];
                if (!inv[p][j].is_zero()) inv[i][j] -= f * inv[p][j];
            }
        }
    }
    // Row pivot_row[c] of inv now holds row c of the inverse.
    Matrix out(n);
    for (size_t c = 0; c < n; ++c) out[c] = inv[pivot_row[c]];
    return out;
}

Vec row_times(const Vec& v, const Matrix& m, const Field& F) {
    size_t cols = m.empty() ? 0 : m[0].size();
    Vec out(cols, FieldElem::zero(F));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (size_t j = 0; j < cols; ++j)
            if (!m[i][j].is_zero()) out[j] += v[i] * m[i][j];
    }
    return out;
}

}  // namespace qbr
