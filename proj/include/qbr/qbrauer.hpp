/**
 * @file qbrauer.hpp
 * @brief The q-Brauer algebra on the normal basis g*_u e_(k) g_pi g_v.
 *
 * Elements are sparse coordinate vectors over the normal basis. Right
 * multiplication by a generator is computed on basis vectors: g_i by a case
 * split on the bottom row of the diagram e_(k) v, and e through the
 * reduction of e_(k) g_v e to smaller instances. certify() checks that the
 * resulting operators satisfy every defining relation and that the canonical
 * generator word of each basis element reproduces it, which identifies the
 * coordinate space with the right regular representation.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qbr/coefficients.hpp"
#include "qbr/hecke.hpp"
#include "qbr/symgrp.hpp"

namespace qbr {

enum class Version { TwoParam, OneParam, NVersion };

// Parameters of the algebra. All relations are expressed through four
// scalars: g_i^2 = (Q-1) g_i + Q, e^2 = x e, e g_2 e = y e, e g_2^{-1} e = z e.
struct AlgebraSpec {
    int n = 2;
    Version version = Version::TwoParam;
    long N = 0;
    Field field;
    FieldElem q, r;  // r is unused by the N-version
    FieldElem Q, x, y, z;

    // Throw ConfigError when an invertibility requirement fails.
    static AlgebraSpec two_param(int n, const FieldElem& q, const FieldElem& r);
    static AlgebraSpec one_param(int n, const FieldElem& q, const FieldElem& r);
    static AlgebraSpec n_version(int n, long N, const FieldElem& q);
    // Generic parameters over Q(q, r).
    static AlgebraSpec generic(int n, Version v = Version::TwoParam, long N = 0);

    std::string version_tag() const;  // "two-param", "oneparam", "N=3"
    // Canonical one-line description used for cache headers and hashes.
    std::string describe() const;
};

// Generators of the algebra as letters of a word.
struct Gen {
    enum Kind { G, GInv, E } kind;
    int i = 0;  // generator index for G and GInv
    static Gen g(int i) { return {G, i}; }
    static Gen ginv(int i) { return {GInv, i}; }
    static Gen e() { return {E, 0}; }
    std::string str() const;
};
using Word = std::vector<Gen>;
std::string word_str(const Word& w);

struct NormalIndex {
    int k;
    size_t u, pi, v;  // u, v index B_{k,n}; pi indexes the Hecke window S_{2k+1,n}
};

class QBrElem {
public:
    QBrElem() = default;
    const std::map<size_t, FieldElem>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }
    FieldElem coeff(size_t b, const Field& F) const;
    void add(size_t b, const FieldElem& c);
    void add(const QBrElem& o, const FieldElem& s);
    QBrElem scaled(const FieldElem& s) const;
    QBrElem& operator+=(const QBrElem& o);
    QBrElem& operator-=(const QBrElem& o);
    friend QBrElem operator+(QBrElem a, const QBrElem& b) { return a += b; }
    friend QBrElem operator-(QBrElem a, const QBrElem& b) { return a -= b; }
    bool operator==(const QBrElem& o) const { return c_ == o.c_; }

private:
    std::map<size_t, FieldElem> c_;
};

struct CellularIndex {
    CellLabel label;
    size_t lam_idx;  // position of label.lam in the Hecke window's partitions()
    size_t s, t;     // positions in std_tableaux(lam, 2k)
    size_t u, v;     // positions in B_{k,n}
};

class QBrAlgebra {
public:
    // The engine supports n <= 5; larger n raises ConfigError.
    static constexpr int kMaxN = 5;

    explicit QBrAlgebra(AlgebraSpec spec);

    const AlgebraSpec& spec() const { return spec_; }
    const Field& field() const { return spec_.field; }
    int n() const { return spec_.n; }
    int max_k() const { return spec_.n / 2; }
    size_t dim() const { return idx_.size(); }

    const std::vector<Perm>& B(int k) const { return enumerate_Bkn(spec_.n, k); }
    const Hecke& hecke(int k) const { return *hecke_[k]; }
    const NormalIndex& index(size_t b) const { return idx_[b]; }
    size_t position(int k, size_t u, size_t pi, size_t v) const;
    size_t level_offset(int k) const { return offset_[k]; }
    size_t level_size(int k) const { return offset_[k + 1] - offset_[k]; }
    std::string index_str(size_t b) const;
    std::string elem_str(const QBrElem& x) const;

    QBrElem zero() const { return {}; }
    QBrElem one() const { return basis(0); }
    QBrElem basis(size_t b) const;
    QBrElem scalar(const FieldElem& c) const { return one().scaled(c); }
    QBrElem gen(const Gen& g) const { return mul_gen(one(), g); }
    QBrElem e_k(int k) const;  // RangeError outside 0..n/2

    // Right multiplication by one generator, and by a word.
    QBrElem mul_gen(const QBrElem& x, const Gen& g) const;
    QBrElem apply(const QBrElem& x, const Word& w) const;
    QBrElem from_word(const Word& w) const { return apply(one(), w); }
    QBrElem mul(const QBrElem& x, const QBrElem& y) const;
    QBrElem star(const QBrElem& x) const;

    // g*_u, then the e_(k) recursion word, then reduced words of pi and v.
    Word canonical_word(size_t b) const;
    static Word e_k_word(int k);

    struct Certificate {
        bool ok = true;
        size_t checks = 0;
        std::vector<std::string> failures;
    };
    // Defining relations on every basis vector plus reproduction of the
    // basis from canonical words.
    Certificate certify() const;

    // Cellular basis x_{(s,u)(t,v)} = g*_u e_(k) c_{st} g_v, most dominant label first.
    const std::vector<CellularIndex>& cellular_basis() const;
    size_t cellular_position(const CellLabel& label, size_t s, size_t u, size_t t, size_t v) const;
    std::vector<FieldElem> to_cellular(const QBrElem& x) const;
    QBrElem from_cellular(const std::vector<FieldElem>& coords) const;
    QBrElem cellular_element(size_t c) const;

    // Step budget per top-level call; QBR_MAX_REWRITE_STEPS overrides the default.
    long budget() const { return budget_; }
    void set_budget(long b) { budget_ = b; }

private:
    struct GCase {
        enum Type { Through, Pair, Up, Down } type;
        int p = 0;          // Through: window generator index
        size_t target = 0;  // Up/Down: new B_{k,n} position
    };

    AlgebraSpec spec_;
    std::vector<std::unique_ptr<Hecke>> hecke_;
    std::unique_ptr<Hecke> full_;  // H_n, for expanding words in the g's
    std::vector<NormalIndex> idx_;
    std::vector<size_t> offset_;
    std::vector<std::map<Perm, size_t>> bpos_;
    std::vector<std::vector<std::vector<GCase>>> gcase_;  // [k][v][i]
    long budget_;

    mutable std::vector<std::optional<QBrElem>> e_image_;
    mutable std::map<std::pair<int, size_t>, QBrElem> f_cache_;
    mutable long steps_ = 0;
    mutable int depth_ = 0;
    mutable std::vector<CellularIndex> cell_idx_;
    mutable std::map<std::pair<int, size_t>, size_t> cell_label_offset_;

    void tick(long amount = 1) const;
    size_t bpos(int k, const Perm& v) const;
    void add_g(QBrElem& out, size_t b, const FieldElem& c, int i) const;
    QBrElem mul_g(const QBrElem& x, int i) const;
    QBrElem mul_g_word(QBrElem x, const std::vector<int>& word) const;
    QBrElem left_g_word(const std::vector<int>& word, const QBrElem& x) const;
    const QBrElem& e_image(size_t b) const;
    const QBrElem& F(int k, size_t v) const;
    QBrElem compute_F(int k, size_t v) const;
    QBrElem E(int k, const Perm& w) const;
    QBrElem E(int k, const Vec& h) const;  // e_(k) h e for h in H_n
    Vec hecke_word(const Word& w) const;

    friend class StepScope;
};

// Structure constants basis(a) * basis(b), optionally cached on disk.
class StructureTable {
public:
    explicit StructureTable(const QBrAlgebra& A);
    // Load from dir if a matching file exists, else compute and store.
    // Returns true on a cache hit. An empty dir disables the cache.
    bool load_or_build(const std::string& dir);
    void build();
    const QBrElem& at(size_t a, size_t b) const { return table_[a * dim_ + b]; }
    QBrElem mul(const QBrElem& x, const QBrElem& y) const;
    std::string cache_file(const std::string& dir) const;
    std::string serialize() const;
    // Throws CacheVersionMismatch when the header does not match the algebra.
    void deserialize(const std::string& text);

private:
    const QBrAlgebra& A_;
    size_t dim_;
    std::vector<QBrElem> table_;
};

std::string spec_hash(const AlgebraSpec& s);

}  // namespace qbr
