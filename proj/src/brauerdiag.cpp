#include "qbr/brauerdiag.hpp"

#include <algorithm>
#include <mutex>

#include "qbr/errors.hpp"

namespace qbr {

BrauerDiagram::BrauerDiagram(std::vector<int> partner) : partner_(std::move(partner)) {
    for (size_t v = 0; v < partner_.size(); ++v) {
        int p = partner_[v];
        if (p < 0 || p >= (int)partner_.size() || p == (int)v || partner_[p] != (int)v)
            throw Error("not a perfect matching");
    }
}

BrauerDiagram BrauerDiagram::identity(int n) { return e_k(n, 0); }

BrauerDiagram BrauerDiagram::from_perm(const Perm& w) {
    int n = w.n();
    std::vector<int> p(2 * n);
    for (int i = 0; i < n; ++i) {
        p[i] = n + w(i + 1) - 1;
        p[n + w(i + 1) - 1] = i;
    }
    BrauerDiagram d;
    d.partner_ = std::move(p);
    return d;
}

BrauerDiagram BrauerDiagram::e_k(int n, int k) {
    if (k < 0 || 2 * k > n) throw Error("k out of range");
    std::vector<int> p(2 * n);
    for (int i = 0; i < k; ++i) {
        p[2 * i] = 2 * i + 1;
        p[2 * i + 1] = 2 * i;
        p[n + 2 * i] = n + 2 * i + 1;
        p[n + 2 * i + 1] = n + 2 * i;
    }
    for (int j = 2 * k; j < n; ++j) {
        p[j] = n + j;
        p[n + j] = j;
    }
    BrauerDiagram d;
    d.partner_ = std::move(p);
    return d;
}

BrauerDiagram e_k_diagram(int n, int k) { return BrauerDiagram::e_k(n, k); }

int BrauerDiagram::horizontal_pairs() const {
    int c = 0;
    for (int v = 0; v < n(); ++v)
        if (partner_[v] < n()) ++c;
    return c / 2;
}

std::string BrauerDiagram::str() const {
    auto name = [&](int v) { return (v < n() ? "t" : "b") + std::to_string(v < n() ? v + 1 : v - n() + 1); };
    std::string s = "{";
    bool first = true;
    for (int v = 0; v < 2 * n(); ++v) {
        if (partner_[v] < v) continue;
        s += (first ? "" : ", ") + name(v) + "-" + name(partner_[v]);
        first = false;
    }
    return s + "}";
}

std::pair<BrauerDiagram, int> compose(const BrauerDiagram& d1, const BrauerDiagram& d2) {
    if (d1.n() != d2.n()) throw Error("diagram size mismatch");
    int n = d1.n();
    // Vertices of the result: top of d1 (0..n-1) and bottom of d2 (n..2n-1).
    std::vector<int> result(2 * n, -1);
    std::vector<bool> middle_seen(n, false);
    // Walk from an outer vertex until reaching another outer vertex.
    auto walk = [&](int v, bool in_d1) {
        for (;;) {
            if (in_d1) {
                int p = d1.partner(v);
                if (p < n) return p;
                int m = p - n;
                middle_seen[m] = true;
                v = m;
                in_d1 = false;
            } else {
                int p = d2.partner(v);
                if (p >= n) return p;
                middle_seen[p] = true;
                v = n + p;
                in_d1 = true;
            }
        }
    };
    for (int v = 0; v < 2 * n; ++v) {
        if (result[v] >= 0) continue;
        int end = v < n ? walk(v, true) : walk(v, false);
        result[v] = end;
        result[end] = v;
    }
    int loops = 0;
    for (int m = 0; m < n; ++m) {
        if (middle_seen[m]) continue;
        ++loops;
        int cur = m;
        do {
            middle_seen[cur] = true;
            int a = d1.partner(n + cur) - n;  // bottom-bottom edge of d1
            middle_seen[a] = true;
            cur = d2.partner(a);  // top-top edge of d2
        } while (cur != m);
    }
    return {BrauerDiagram(result), loops};
}

int diagram_length(const BrauerDiagram& d) {
    static std::mutex mu;
    static std::map<BrauerDiagram, int> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = memo.find(d); it != memo.end()) return it->second;
    }
    int n = d.n(), k = d.horizontal_pairs();
    const auto& perms = window_perms(n, 0);
    std::vector<BrauerDiagram> pd;
    std::vector<int> len;
    for (const auto& w : perms) {
        pd.push_back(BrauerDiagram::from_perm(w));
        len.push_back(w.length());
    }
    BrauerDiagram ek = BrauerDiagram::e_k(n, k);
    int best = -1;
    for (size_t a = 0; a < perms.size(); ++a) {
        if (best >= 0 && len[a] >= best) continue;
        BrauerDiagram left = compose(pd[a], ek).first;
        for (size_t b = 0; b < perms.size(); ++b) {
            int l = len[a] + len[b];
            if (best >= 0 && l >= best) continue;
            if (compose(left, pd[b]).first == d) best = l;
        }
    }
    if (best < 0) throw InternalInconsistency("diagram has no factorization w1 e_(k) w2");
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(d, best);
    return best;
}

static void matchings_rec(int n, int k, std::vector<int>& bottom, int v, int pairs, std::vector<std::vector<int>>& out) {
    if (v == n) {
        if (pairs == k) out.push_back(bottom);
        return;
    }
    if (bottom[v] != -2) {
        matchings_rec(n, k, bottom, v + 1, pairs, out);
        return;
    }
    bottom[v] = -1;  // through strand
    matchings_rec(n, k, bottom, v + 1, pairs, out);
    if (pairs < k) {
        for (int w = v + 1; w < n; ++w) {
            if (bottom[w] != -2) continue;
            bottom[v] = w;
            bottom[w] = v;
            matchings_rec(n, k, bottom, v + 1, pairs + 1, out);
            bottom[w] = -2;
        }
    }
    bottom[v] = -2;
}

std::vector<BrauerDiagram> enumerate_Dkn(int n, int k) {
    std::vector<std::vector<int>> bottoms;
    std::vector<int> bottom(n, -2);
    matchings_rec(n, k, bottom, 0, 0, bottoms);
    std::vector<BrauerDiagram> out;
    for (const auto& b : bottoms) {
        std::vector<int> p(2 * n);
        for (int i = 0; i < k; ++i) {
            p[2 * i] = 2 * i + 1;
            p[2 * i + 1] = 2 * i;
        }
        int top = 2 * k;
        for (int v = 0; v < n; ++v) {
            if (b[v] >= 0) {
                p[n + v] = n + b[v];
            } else {
                p[n + v] = top;
                p[top] = n + v;
                ++top;
            }
        }
        out.emplace_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

static void all_rec(std::vector<int>& p, std::vector<BrauerDiagram>& out) {
    auto it = std::find(p.begin(), p.end(), -1);
    if (it == p.end()) {
        out.emplace_back(p);
        return;
    }
    int v = (int)(it - p.begin());
    for (int w = v + 1; w < (int)p.size(); ++w) {
        if (p[w] != -1) continue;
        p[v] = w;
        p[w] = v;
        all_rec(p, out);
        p[w] = -1;
    }
    p[v] = -1;
}

std::vector<BrauerDiagram> all_diagrams(int n) {
    std::vector<int> p(2 * n, -1);
    std::vector<BrauerDiagram> out;
    all_rec(p, out);
    std::sort(out.begin(), out.end());
    return out;
}

DiagElement diag_product(const DiagElement& a, const DiagElement& b, const FieldElem& x) {
    DiagElement out;
    for (const auto& [da, ca] : a)
        for (const auto& [db, cb] : b) {
            auto [d, loops] = compose(da, db);
            FieldElem c = ca * cb * x.pow(loops);
            auto [it, ins] = out.emplace(d, c);
            if (!ins) it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    return out;
}

}  // namespace qbr
