/**
 * @file symgrp.hpp
 * @brief Symmetric group window S_{2k+1,n}: permutations under the right
 * action, partitions with dominance, standard tableaux with offset labels,
 * Young subgroups and the distinguished transversals B_{k,n}.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qbr {

// A permutation of {1..n} acting on the right: images[i] = (i+1)w.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images);
    static Perm identity(int n);
    static Perm s(int n, int i);
    // Product s_{w[0]} s_{w[1]} ... (left to right).
    static Perm from_word(int n, const std::vector<int>& word);

    int n() const { return (int)img_.size(); }
    int operator()(int x) const { return img_[x - 1]; }
    const std::vector<int>& images() const { return img_; }
    int length() const;
    // Reduced word obtained by repeatedly stripping the smallest right descent.
    std::vector<int> reduced_word() const;
    bool is_identity() const;
    bool right_descent(int i) const;  // l(w s_i) < l(w)
    bool left_descent(int i) const;   // l(s_i w) < l(w)
    Perm inverse() const;
    Perm times_s(int i) const;  // w s_i
    Perm s_times(int i) const;  // s_i w

    // Right action: x(ab) = (xa)b.
    friend Perm operator*(const Perm& a, const Perm& b);
    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    std::string str() const;       // one-line notation
    std::string word_str() const;  // "s2s1s3", "1" for identity

private:
    std::vector<int> img_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const;
};

using Partition = std::vector<int>;

int size_of(const Partition& lam);
std::string partition_str(const Partition& lam);
// Parses "2,1"; the empty string is the empty partition.
Partition parse_partition(const std::string& s);

// All partitions of m in reverse-lex order; [empty] for m = 0.
std::vector<Partition> partitions_of(int m);

struct CellLabel {
    int k = 0;
    Partition lam;
    bool operator==(const CellLabel&) const = default;
    std::string str() const;
};

// All labels of Lambda_n, most dominant first (largest k, then reverse-lex).
std::vector<CellLabel> cell_labels(int n);

// a dominates b (reflexive).
bool dominates(const CellLabel& a, const CellLabel& b);
bool strictly_dominates(const CellLabel& a, const CellLabel& b);
bool partition_dominates(const Partition& a, const Partition& b);

struct Tableau {
    Partition lam;
    int offset = 0;  // entries are offset+1 .. offset+|lam|
    std::vector<std::vector<int>> rows;

    std::vector<int> reading_word() const;
    bool operator==(const Tableau&) const = default;
    std::string str() const;  // "34/5"
    // Entry-wise right action by a permutation of {1..n}.
    Tableau act(const Perm& w) const;
};

Tableau superstandard(const Partition& lam, int offset);
// Standard tableaux, ordered by row-reading word; the first is superstandard.
std::vector<Tableau> std_tableaux(const Partition& lam, int offset);
// d(t) in S_n with t = t^lam d(t).
Perm d_of(const Tableau& t, int n);
// Row stabilizer of t^lam in S_n, identity first, then by length and word.
std::vector<Perm> young_subgroup(const Partition& lam, int offset, int n);
// Hook length count of standard tableaux (independent oracle).
long hook_length_count(const Partition& lam);

// B_{k,n} ordered by length, then reduced word. B_{0,n} = {1}.
const std::vector<Perm>& enumerate_Bkn(int n, int k);
// All permutations of S_n fixing 1..2k, ordered by length then reduced word.
const std::vector<Perm>& window_perms(int n, int k);

long factorial(int m);
long double_factorial_odd(int n);  // (2n-1)!!
long bkn_count(int n, int k);      // n! / (2^k k! (n-2k)!)

}  // namespace qbr
