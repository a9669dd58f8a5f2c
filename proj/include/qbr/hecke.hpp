/**
 * @file hecke.hpp
 * @brief The Hecke algebra H_{2k+1,n}(Q) on the g_w basis, its involution,
 * the Murphy basis and Specht-module Gram matrices.
 *
 * Q is the quadratic parameter: g_i^2 = (Q-1) g_i + Q. The two-parameter
 * q-Brauer algebra uses Q = q^2.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "qbr/coefficients.hpp"
#include "qbr/linalg.hpp"
#include "qbr/symgrp.hpp"

namespace qbr {

class Hecke {
public:
    // Window S_{2k+1,n}: permutations of {1..n} fixing 1..2k.
    Hecke(int n, int k, FieldElem Q);

    int n() const { return n_; }
    int k() const { return k_; }
    const Field& field() const { return F_; }
    const FieldElem& Q() const { return Q_; }
    size_t size() const { return perms_.size(); }
    const Perm& perm(size_t i) const { return perms_[i]; }
    size_t index(const Perm& w) const;
    // Generator indices available in the window.
    int first_gen() const { return 2 * k_ + 1; }

    Vec zero() const { return Vec(size(), FieldElem::zero(F_)); }
    Vec one() const { return basis(0); }
    Vec basis(size_t i) const;
    Vec g(const Perm& w) const { return basis(index(w)); }

    Vec mul_gen(const Vec& a, int j) const;      // a g_j
    Vec mul_gen_inv(const Vec& a, int j) const;  // a g_j^{-1}
    Vec gen_mul(int j, const Vec& a) const;      // g_j a
    Vec mul(const Vec& a, const Vec& b) const;
    Vec star(const Vec& a) const;
    Vec gen_inverse(int j) const;

    // Index of w s_j and whether it is longer than w, as a lookup table.
    size_t times_s(size_t w, int j) const { return right_[w][j - first_gen()]; }
    bool longer(size_t w, int j) const { return up_[w][j - first_gen()]; }

    // Murphy basis c_{st}, ordered by partition (dominance descending), then s, then t.
    struct MurphyIndex {
        Partition lam;
        size_t lam_idx;
        size_t s, t;  // positions in std_tableaux(lam, 2k)
    };
    const std::vector<Partition>& partitions() const { return parts_; }
    const std::vector<Tableau>& tableaux(size_t lam_idx) const { return tabs_[lam_idx]; }
    const std::vector<MurphyIndex>& murphy_indices() const;
    Vec c_lambda(size_t lam_idx) const;
    Vec murphy(size_t lam_idx, size_t s, size_t t) const;
    // Rows: Murphy elements in g_w coordinates.
    const Matrix& murphy_matrix() const;
    // Inverse of murphy_matrix; nullopt if the Murphy elements are dependent.
    const std::optional<Matrix>& murphy_inverse() const;
    size_t murphy_position(size_t lam_idx, size_t s, size_t t) const;
    Vec to_murphy(const Vec& a) const;
    Vec from_murphy(const Vec& x) const;

    // Gram matrix of the Specht module S^lambda.
    Matrix specht_gram(size_t lam_idx) const;

private:
    int n_, k_;
    Field F_;
    FieldElem Q_;
    std::vector<Perm> perms_;
    std::map<Perm, size_t> index_;
    std::vector<std::vector<size_t>> right_;
    std::vector<std::vector<bool>> up_;
    std::vector<size_t> inv_;
    std::vector<std::vector<int>> words_;
    std::vector<Partition> parts_;
    std::vector<std::vector<Tableau>> tabs_;

    mutable std::vector<MurphyIndex> murphy_idx_;
    mutable std::optional<Matrix> murphy_mat_;
    mutable std::optional<std::optional<Matrix>> murphy_inv_;
};

bool hecke_semisimple(int m, std::optional<int> e);
bool is_restricted(const Partition& lam, std::optional<int> e);

}  // namespace qbr
