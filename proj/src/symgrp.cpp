#include "qbr/symgrp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "qbr/brauerdiag.hpp"
#include "qbr/errors.hpp"

namespace qbr {

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size() + 1, false);
    for (int v : img_) {
        if (v < 1 || v > (int)img_.size() || seen[v]) throw Error("not a permutation");
        seen[v] = true;
    }
}

Perm Perm::identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    Perm p;
    p.img_ = std::move(img);
    return p;
}

Perm Perm::s(int n, int i) { return identity(n).times_s(i); }

Perm Perm::from_word(int n, const std::vector<int>& word) {
    Perm p = identity(n);
    for (int i : word) p = p.times_s(i);
    return p;
}

int Perm::length() const {
    int inv = 0;
    for (size_t a = 0; a < img_.size(); ++a)
        for (size_t b = a + 1; b < img_.size(); ++b)
            if (img_[a] > img_[b]) ++inv;
    return inv;
}

bool Perm::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != (int)i + 1) return false;
    return true;
}

bool Perm::right_descent(int i) const {
    int pi = 0, pj = 0;
    for (size_t x = 0; x < img_.size(); ++x) {
        if (img_[x] == i) pi = (int)x;
        if (img_[x] == i + 1) pj = (int)x;
    }
    return pj < pi;
}

bool Perm::left_descent(int i) const { return img_[i - 1] > img_[i]; }

Perm Perm::times_s(int i) const {
    if (i < 1 || i >= n()) throw Error("generator index out of range");
    Perm p = *this;
    for (auto& v : p.img_) {
        if (v == i)
            v = i + 1;
        else if (v == i + 1)
            v = i;
    }
    return p;
}

Perm Perm::s_times(int i) const {
    if (i < 1 || i >= n()) throw Error("generator index out of range");
    Perm p = *this;
    std::swap(p.img_[i - 1], p.img_[i]);
    return p;
}

std::vector<int> Perm::reduced_word() const {
    std::vector<int> word;
    Perm w = *this;
    while (!w.is_identity()) {
        for (int i = 1; i < n(); ++i) {
            if (w.right_descent(i)) {
                word.push_back(i);
                w = w.times_s(i);
                break;
            }
        }
    }
    std::reverse(word.begin(), word.end());
    return word;
}

Perm Perm::inverse() const {
    std::vector<int> inv(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) inv[img_[x] - 1] = (int)x + 1;
    Perm p;
    p.img_ = std::move(inv);
    return p;
}

Perm operator*(const Perm& a, const Perm& b) {
    Perm p;
    p.img_.resize(a.img_.size());
    for (size_t x = 0; x < a.img_.size(); ++x) p.img_[x] = b.img_[a.img_[x] - 1];
    return p;
}

std::string Perm::str() const {
    std::string s = "[";
    for (size_t i = 0; i < img_.size(); ++i) s += (i ? "," : "") + std::to_string(img_[i]);
    return s + "]";
}

std::string Perm::word_str() const {
    auto w = reduced_word();
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "*s" : "s") + std::to_string(w[i]);
    return s;
}

std::size_t PermHash::operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.images()) h = (h ^ (std::size_t)v) * 1099511628211ull;
    return h;
}

// ---------------------------------------------------------------------------
// Partitions and labels

int size_of(const Partition& lam) { return std::accumulate(lam.begin(), lam.end(), 0); }

std::string partition_str(const Partition& lam) {
    std::string s = "(";
    for (size_t i = 0; i < lam.size(); ++i) s += (i ? "," : "") + std::to_string(lam[i]);
    return s + ")";
}

Partition parse_partition(const std::string& text) {
    Partition lam;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        try {
            lam.push_back(std::stoi(cur));
        } catch (const std::logic_error&) {
            throw ConfigError("bad partition: '" + text + "'");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else if (c != ' ' && c != '(' && c != ')')
            cur += c;
    }
    flush();
    for (size_t i = 0; i < lam.size(); ++i)
        if (lam[i] <= 0 || (i && lam[i] > lam[i - 1])) throw ConfigError("bad partition: '" + text + "'");
    return lam;
}

static void partitions_rec(int m, int maxpart, Partition& cur, std::vector<Partition>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(m, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(m - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int m) {
    std::vector<Partition> out;
    Partition cur;
    partitions_rec(m, m, cur, out);
    return out;
}

std::string CellLabel::str() const { return "(" + std::to_string(k) + "," + partition_str(lam) + ")"; }

std::vector<CellLabel> cell_labels(int n) {
    std::vector<CellLabel> out;
    for (int k = n / 2; k >= 0; --k)
        for (auto& lam : partitions_of(n - 2 * k)) out.push_back({k, lam});
    return out;
}

bool partition_dominates(const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    size_t len = std::max(a.size(), b.size());
    for (size_t i = 0; i < len; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return true;
}

bool dominates(const CellLabel& a, const CellLabel& b) {
    int na = size_of(a.lam), nb = size_of(b.lam);
    if (na != nb) return nb > na;
    return partition_dominates(a.lam, b.lam);
}

bool strictly_dominates(const CellLabel& a, const CellLabel& b) { return !(a == b) && dominates(a, b); }

// ---------------------------------------------------------------------------
// Tableaux

std::vector<int> Tableau::reading_word() const {
    std::vector<int> w;
    for (const auto& row : rows) w.insert(w.end(), row.begin(), row.end());
    return w;
}

std::string Tableau::str() const {
    std::string s;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) s += "/";
        for (size_t j = 0; j < rows[i].size(); ++j) s += (j ? "," : "") + std::to_string(rows[i][j]);
    }
    return s;
}

Tableau Tableau::act(const Perm& w) const {
    Tableau t = *this;
    for (auto& row : t.rows)
        for (auto& x : row) x = w(x);
    return t;
}

Tableau superstandard(const Partition& lam, int offset) {
    Tableau t{lam, offset, {}};
    int next = offset + 1;
    for (int len : lam) {
        std::vector<int> row;
        for (int j = 0; j < len; ++j) row.push_back(next++);
        t.rows.push_back(row);
    }
    return t;
}

static void tableaux_rec(const Partition& lam, Tableau& cur, int next, int last, std::vector<Tableau>& out) {
    if (next > last) {
        out.push_back(cur);
        return;
    }
    for (size_t i = 0; i < lam.size(); ++i) {
        size_t len = cur.rows[i].size();
        if ((int)len == lam[i]) continue;
        if (i > 0 && cur.rows[i - 1].size() <= len) continue;
        cur.rows[i].push_back(next);
        tableaux_rec(lam, cur, next + 1, last, out);
        cur.rows[i].pop_back();
    }
}

std::vector<Tableau> std_tableaux(const Partition& lam, int offset) {
    Tableau cur{lam, offset, std::vector<std::vector<int>>(lam.size())};
    std::vector<Tableau> out;
    tableaux_rec(lam, cur, offset + 1, offset + size_of(lam), out);
    std::sort(out.begin(), out.end(),
              [](const Tableau& a, const Tableau& b) { return a.reading_word() < b.reading_word(); });
    return out;
}

Perm d_of(const Tableau& t, int n) {
    Tableau ts = superstandard(t.lam, t.offset);
    Perm w = Perm::identity(n);
    std::vector<int> img = w.images();
    for (size_t i = 0; i < ts.rows.size(); ++i)
        for (size_t j = 0; j < ts.rows[i].size(); ++j) img[ts.rows[i][j] - 1] = t.rows[i][j];
    return Perm(img);
}

static bool by_length_then_word(const Perm& a, const Perm& b) {
    int la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a.reduced_word() < b.reduced_word();
}

static std::vector<Perm> closure(int n, const std::vector<int>& gens) {
    std::set<Perm> seen{Perm::identity(n)};
    std::deque<Perm> todo{Perm::identity(n)};
    while (!todo.empty()) {
        Perm w = todo.front();
        todo.pop_front();
        for (int i : gens) {
            Perm x = w.times_s(i);
            if (seen.insert(x).second) todo.push_back(x);
        }
    }
    std::vector<Perm> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), by_length_then_word);
    return out;
}

std::vector<Perm> young_subgroup(const Partition& lam, int offset, int n) {
    std::vector<int> gens;
    int start = offset + 1;
    for (int len : lam) {
        for (int j = start; j < start + len - 1; ++j) gens.push_back(j);
        start += len;
    }
    return closure(n, gens);
}

long factorial(int m) {
    long f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

long hook_length_count(const Partition& lam) {
    int m = size_of(lam);
    long num = factorial(m), den = 1;
    for (size_t i = 0; i < lam.size(); ++i)
        for (int j = 0; j < lam[i]; ++j) {
            int arm = lam[i] - j - 1, leg = 0;
            for (size_t l = i + 1; l < lam.size() && lam[l] > j; ++l) ++leg;
            den *= arm + leg + 1;
        }
    return num / den;
}

long double_factorial_odd(int n) {
    long f = 1;
    for (int i = 2 * n - 1; i > 1; i -= 2) f *= i;
    return f;
}

long bkn_count(int n, int k) { return factorial(n) / ((1L << k) * factorial(k) * factorial(n - 2 * k)); }

// ---------------------------------------------------------------------------
// Window permutations and B_{k,n}

const std::vector<Perm>& window_perms(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Perm>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, k);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<int> gens;
    for (int j = 2 * k + 1; j < n; ++j) gens.push_back(j);
    return cache.emplace(key, closure(n, gens)).first->second;
}

static bool through_strands_noncrossing(const BrauerDiagram& d, int k) {
    int n = d.n(), last = -1;
    for (int t = 2 * k; t < n; ++t) {
        int b = d.partner(t);
        if (b < n || b <= last) return false;
        last = b;
    }
    return true;
}

static std::vector<Perm> compute_Bkn(int n, int k) {
    if (k == 0) return {Perm::identity(n)};
    // Factor positions t_2 t_4 ... t_{2k} t_{2k+1} ... t_{n-1}; t_j = s_j s_{j-1} ... s_i or 1.
    std::vector<int> js;
    for (int j = 2; j <= 2 * k && j < n; j += 2) js.push_back(j);
    for (int j = 2 * k + 1; j < n; ++j) js.push_back(j);

    BrauerDiagram ek = BrauerDiagram::e_k(n, k);
    std::map<BrauerDiagram, Perm> best;
    std::vector<int> choice(js.size(), 0);  // number of letters in t_j
    for (;;) {
        std::vector<int> word;
        for (size_t a = 0; a < js.size(); ++a)
            for (int l = 0; l < choice[a]; ++l) word.push_back(js[a] - l);
        Perm w = Perm::from_word(n, word);
        BrauerDiagram d = compose(ek, BrauerDiagram::from_perm(w)).first;
        if (through_strands_noncrossing(d, k)) {
            auto it = best.find(d);
            if (it == best.end()) {
                best.emplace(d, w);
            } else if (!(it->second == w)) {
                int lw = w.length(), lo = it->second.length();
                if (lw == lo) throw InternalInconsistency("two minimal B_{k,n} candidates share a diagram");
                if (lw < lo) it->second = w;
            }
        }
        size_t a = 0;
        while (a < js.size() && ++choice[a] > js[a]) choice[a++] = 0;
        if (a == js.size()) break;
    }
    auto dkn = enumerate_Dkn(n, k);
    if (best.size() != dkn.size()) throw InternalInconsistency("B_{k,n} does not cover D_{k,n}");
    std::vector<Perm> out;
    for (auto& [d, w] : best) out.push_back(w);
    std::sort(out.begin(), out.end(), by_length_then_word);
    return out;
}

const std::vector<Perm>& enumerate_Bkn(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Perm>> cache;
    if (k < 0 || 2 * k > n) throw Error("k out of range");
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, k);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    return cache.emplace(key, compute_Bkn(n, k)).first->second;
}

}  // namespace qbr
