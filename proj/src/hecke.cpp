#include "qbr/hecke.hpp"

#include "qbr/errors.hpp"

namespace qbr {

Hecke::Hecke(int n, int k, FieldElem Q) : n_(n), k_(k), F_(Q.field()), Q_(std::move(Q)) {
    perms_ = window_perms(n, k);
    for (size_t i = 0; i < perms_.size(); ++i) index_.emplace(perms_[i], i);
    int gens = std::max(0, n - 1 - 2 * k);
    right_.assign(perms_.size(), std::vector<size_t>(gens));
    up_.assign(perms_.size(), std::vector<bool>(gens));
    for (size_t i = 0; i < perms_.size(); ++i) {
        for (int j = first_gen(); j < n; ++j) {
            right_[i][j - first_gen()] = index_.at(perms_[i].times_s(j));
            up_[i][j - first_gen()] = !perms_[i].right_descent(j);
        }
        inv_.push_back(index_.at(perms_[i].inverse()));
        words_.push_back(perms_[i].reduced_word());
    }
    parts_ = partitions_of(n - 2 * k);
    for (const auto& lam : parts_) tabs_.push_back(std_tableaux(lam, 2 * k));
}

size_t Hecke::index(const Perm& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw Error("permutation outside the Hecke window: " + w.str());
    return it->second;
}

Vec Hecke::basis(size_t i) const {
    Vec v = zero();
    v[i] = FieldElem::one(F_);
    return v;
}

Vec Hecke::mul_gen(const Vec& a, int j) const {
    Vec out = zero();
    FieldElem qm1 = Q_ - FieldElem::one(F_);
    for (size_t w = 0; w < a.size(); ++w) {
        if (a[w].is_zero()) continue;
        size_t ws = times_s(w, j);
        if (longer(w, j)) {
            out[ws] += a[w];
        } else {
            out[w] += qm1 * a[w];
            out[ws] += Q_ * a[w];
        }
    }
    return out;
}

Vec Hecke::mul_gen_inv(const Vec& a, int j) const {
    FieldElem qi = Q_.inverse();
    Vec ag = mul_gen(a, j);
    FieldElem c = qi - FieldElem::one(F_);
    Vec out = zero();
    for (size_t w = 0; w < a.size(); ++w) out[w] = qi * ag[w] + c * a[w];
    return out;
}

Vec Hecke::star(const Vec& a) const {
    Vec out = zero();
    for (size_t w = 0; w < a.size(); ++w) out[inv_[w]] = a[w];
    return out;
}

Vec Hecke::gen_mul(int j, const Vec& a) const { return star(mul_gen(star(a), j)); }

Vec Hecke::mul(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (size_t w = 0; w < b.size(); ++w) {
        if (b[w].is_zero()) continue;
        Vec t = a;
        for (int j : words_[w]) t = mul_gen(t, j);
        for (size_t x = 0; x < t.size(); ++x)
            if (!t[x].is_zero()) out[x] += b[w] * t[x];
    }
    return out;
}

Vec Hecke::gen_inverse(int j) const { return mul_gen_inv(one(), j); }

Vec Hecke::c_lambda(size_t lam_idx) const {
    Vec v = zero();
    for (const auto& w : young_subgroup(parts_[lam_idx], 2 * k_, n_)) v[index(w)] += FieldElem::one(F_);
    return v;
}

Vec Hecke::murphy(size_t lam_idx, size_t s, size_t t) const {
    const auto& T = tabs_[lam_idx];
    Vec a = c_lambda(lam_idx);
    for (int j : d_of(T[s], n_).reduced_word()) a = mul_gen(a, j);
    a = star(a);  // g*_{d(s)} c_lambda
    for (int j : d_of(T[t], n_).reduced_word()) a = mul_gen(a, j);
    return a;
}

const std::vector<Hecke::MurphyIndex>& Hecke::murphy_indices() const {
    if (murphy_idx_.empty()) {
        for (size_t l = 0; l < parts_.size(); ++l)
            for (size_t s = 0; s < tabs_[l].size(); ++s)
                for (size_t t = 0; t < tabs_[l].size(); ++t) murphy_idx_.push_back({parts_[l], l, s, t});
    }
    return murphy_idx_;
}

size_t Hecke::murphy_position(size_t lam_idx, size_t s, size_t t) const {
    size_t pos = 0;
    for (size_t l = 0; l < lam_idx; ++l) pos += tabs_[l].size() * tabs_[l].size();
    return pos + s * tabs_[lam_idx].size() + t;
}

const Matrix& Hecke::murphy_matrix() const {
    if (!murphy_mat_) {
        Matrix m;
        for (const auto& idx : murphy_indices()) m.push_back(murphy(idx.lam_idx, idx.s, idx.t));
        murphy_mat_ = std::move(m);
    }
    return *murphy_mat_;
}

const std::optional<Matrix>& Hecke::murphy_inverse() const {
    if (!murphy_inv_) murphy_inv_ = inverse(murphy_matrix(), F_);
    return *murphy_inv_;
}

Vec Hecke::to_murphy(const Vec& a) const {
    const auto& inv = murphy_inverse();
    if (!inv) throw InternalInconsistency("Murphy transition matrix is singular");
    return row_times(a, *inv, F_);
}

Vec Hecke::from_murphy(const Vec& x) const { return row_times(x, murphy_matrix(), F_); }

Matrix Hecke::specht_gram(size_t lam_idx) const {
    const auto& T = tabs_[lam_idx];
    size_t d = T.size();
    size_t target = murphy_position(lam_idx, 0, 0);
    CellLabel here{0, parts_[lam_idx]};
    Matrix g(d, Vec(d, FieldElem::zero(F_)));
    for (size_t s = 0; s < d; ++s)
        for (size_t t = 0; t < d; ++t) {
            Vec x = to_murphy(mul(murphy(lam_idx, 0, s), murphy(lam_idx, t, 0)));
            const auto& idx = murphy_indices();
            for (size_t i = 0; i < x.size(); ++i) {
                if (x[i].is_zero() || i == target) continue;
                if (!strictly_dominates(CellLabel{0, idx[i].lam}, here))
                    throw InternalInconsistency("Specht product leaves the cell of " + partition_str(parts_[lam_idx]));
            }
            g[s][t] = x[target];
        }
    return g;
}

bool hecke_semisimple(int m, std::optional<int> e) { return !e || *e > m; }

bool is_restricted(const Partition& lam, std::optional<int> e) {
    if (!e) return true;
    for (size_t i = 0; i < lam.size(); ++i) {
        int next = i + 1 < lam.size() ? lam[i + 1] : 0;
        if (lam[i] - next >= *e) return false;
    }
    return true;
}

}  // namespace qbr
