#include "qbr/qbrauer.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qbr/brauerdiag.hpp"
#include "qbr/errors.hpp"

namespace qbr {

// ---------------------------------------------------------------- parameters

namespace {

FieldElem derived_z(const FieldElem& Q, const FieldElem& x, const FieldElem& y) {
    FieldElem qi = Q.inverse();
    return qi * y + (qi - FieldElem::one(Q.field())) * x;
}

void require(bool ok, const std::string& why) {
    if (!ok) throw ConfigError("excluded parameters: " + why);
}

}  // namespace

AlgebraSpec AlgebraSpec::two_param(int n, const FieldElem& q, const FieldElem& r) {
    AlgebraSpec s;
    s.n = n;
    s.version = Version::TwoParam;
    s.field = q.field();
    if (!(r.field() == s.field)) throw FieldMismatch();
    s.q = q;
    s.r = r;
    require(!q.is_zero(), "q = 0");
    require(!r.is_zero(), "r = 0");
    FieldElem d = q - q.inverse();
    require(!d.is_zero(), "q^2 = 1");
    s.x = (r - r.inverse()) / d;
    require(!s.x.is_zero(), "r^2 = 1");
    s.Q = q * q;
    s.y = r * q;
    s.z = derived_z(s.Q, s.x, s.y);
    return s;
}

AlgebraSpec AlgebraSpec::one_param(int n, const FieldElem& q, const FieldElem& r) {
    AlgebraSpec s;
    s.n = n;
    s.version = Version::OneParam;
    s.field = q.field();
    if (!(r.field() == s.field)) throw FieldMismatch();
    s.q = q;
    s.r = r;
    FieldElem one = FieldElem::one(s.field);
    require(!q.is_zero(), "q = 0");
    require(!r.is_zero(), "r = 0");
    require(!(q - one).is_zero(), "q = 1");
    s.x = (r - one) / (q - one);
    require(!s.x.is_zero(), "r = 1");
    s.Q = q;
    s.y = r;
    s.z = derived_z(s.Q, s.x, s.y);
    return s;
}

AlgebraSpec AlgebraSpec::n_version(int n, long N, const FieldElem& q) {
    AlgebraSpec s;
    s.n = n;
    s.version = Version::NVersion;
    s.N = N;
    s.field = q.field();
    require(N != 0, "N = 0");
    require(!q.is_zero(), "q = 0");
    s.q = q;
    s.r = q.pow(N);
    s.Q = q * q;
    s.x = quantum_int(s.Q, N);
    require(!s.x.is_zero(), "[N] = 0");
    s.y = q.pow(N + 1);
    s.z = derived_z(s.Q, s.x, s.y);
    return s;
}

AlgebraSpec AlgebraSpec::generic(int n, Version v, long N) {
    FieldElem q(RatFunc::q()), r(RatFunc::r());
    switch (v) {
        case Version::TwoParam: return two_param(n, q, r);
        case Version::OneParam: return one_param(n, q, r);
        case Version::NVersion: return n_version(n, N, q);
    }
    throw ConfigError("unknown version");
}

std::string AlgebraSpec::version_tag() const {
    switch (version) {
        case Version::TwoParam: return "two-param";
        case Version::OneParam: return "oneparam";
        case Version::NVersion: return "N=" + std::to_string(N);
    }
    return "?";
}

std::string AlgebraSpec::describe() const {
    std::ostringstream os;
    os << "n=" << n << " version=" << version_tag() << " field=" << field.str() << " q=" << q.str();
    if (version != Version::NVersion) os << " r=" << r.str();
    os << " Q=" << Q.str() << " x=" << x.str() << " y=" << y.str() << " z=" << z.str();
    return os.str();
}

std::string spec_hash(const AlgebraSpec& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s.describe()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

// ---------------------------------------------------------------- words

std::string Gen::str() const {
    switch (kind) {
        case G: return "g" + std::to_string(i);
        case GInv: return "g" + std::to_string(i) + "^-1";
        case E: return "e";
    }
    return "?";
}

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t j = 0; j < w.size(); ++j) s += (j ? "*" : "") + w[j].str();
    return s;
}

// ---------------------------------------------------------------- elements

FieldElem QBrElem::coeff(size_t b, const Field& F) const {
    auto it = c_.find(b);
    return it == c_.end() ? FieldElem::zero(F) : it->second;
}

void QBrElem::add(size_t b, const FieldElem& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = c_.emplace(b, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
}

void QBrElem::add(const QBrElem& o, const FieldElem& s) {
    if (s.is_zero()) return;
    bool unit = s.is_one();
    for (const auto& [b, c] : o.c_) add(b, unit ? c : c * s);
}

QBrElem QBrElem::scaled(const FieldElem& s) const {
    QBrElem out;
    out.add(*this, s);
    return out;
}

QBrElem& QBrElem::operator+=(const QBrElem& o) {
    for (const auto& [b, c] : o.c_) add(b, c);
    return *this;
}

QBrElem& QBrElem::operator-=(const QBrElem& o) {
    for (const auto& [b, c] : o.c_) add(b, -c);
    return *this;
}

// ---------------------------------------------------------------- the algebra

// Resets the step counter on entry to a top-level operation.
class StepScope {
public:
    explicit StepScope(const QBrAlgebra& A) : A_(A) {
        if (A_.depth_++ == 0) A_.steps_ = 0;
    }
    ~StepScope() { --A_.depth_; }

private:
    const QBrAlgebra& A_;
};

namespace {

long default_budget() {
    if (const char* s = std::getenv("QBR_MAX_REWRITE_STEPS")) {
        try {
            long v = std::stol(s);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("QBR_MAX_REWRITE_STEPS is not a positive integer: ") + s);
    }
    return 1000000;
}

std::vector<int> reversed(std::vector<int> w) {
    std::reverse(w.begin(), w.end());
    return w;
}

}  // namespace

QBrAlgebra::QBrAlgebra(AlgebraSpec spec) : spec_(std::move(spec)), budget_(default_budget()) {
    int n = spec_.n;
    if (n < 2 || n > kMaxN)
        throw ConfigError("n = " + std::to_string(n) + " is outside the supported range 2.." + std::to_string(kMaxN));
    full_ = std::make_unique<Hecke>(n, 0, spec_.Q);
    offset_.push_back(0);
    bpos_.resize(max_k() + 1);
    gcase_.resize(max_k() + 1);
    for (int k = 0; k <= max_k(); ++k) {
        hecke_.push_back(std::make_unique<Hecke>(n, k, spec_.Q));
        const auto& Bk = B(k);
        size_t W = hecke_[k]->size();
        for (size_t u = 0; u < Bk.size(); ++u)
            for (size_t pi = 0; pi < W; ++pi)
                for (size_t v = 0; v < Bk.size(); ++v) idx_.push_back({k, u, pi, v});
        offset_.push_back(idx_.size());

        BrauerDiagram ek = e_k_diagram(n, k);
        std::map<BrauerDiagram, size_t> by_diagram;
        for (size_t v = 0; v < Bk.size(); ++v) {
            bpos_[k].emplace(Bk[v], v);
            by_diagram.emplace(compose(ek, BrauerDiagram::from_perm(Bk[v])).first, v);
        }
        gcase_[k].assign(Bk.size(), std::vector<GCase>(n - 1));
        for (size_t v = 0; v < Bk.size(); ++v) {
            const Perm& V = Bk[v];
            Perm Vi = V.inverse();
            for (int i = 1; i < n; ++i) {
                GCase& gc = gcase_[k][v][i - 1];
                int p = Vi(i), p2 = Vi(i + 1);
                auto fail = [&](const char* what) {
                    throw InternalInconsistency(std::string("g-action table: ") + what + " at v = " + V.word_str() +
                                                ", i = " + std::to_string(i));
                };
                if (p > 2 * k && p2 > 2 * k) {
                    if (p2 != p + 1) fail("through strands out of order");
                    gc.type = GCase::Through;
                    gc.p = p;
                } else if (p <= 2 * k && p2 <= 2 * k && (p + 1) / 2 == (p2 + 1) / 2) {
                    if (p2 != p + 1) fail("pair not minimal");
                    gc.type = GCase::Pair;
                } else {
                    Perm W2 = V.times_s(i);
                    auto it = by_diagram.find(compose(ek, BrauerDiagram::from_perm(W2)).first);
                    if (it == by_diagram.end()) fail("diagram outside D_{k,n}");
                    gc.target = it->second;
                    // Compare minimal lengths of the two diagrams; the e_(k) slide identities
                    // identify e_(k) g_w for different words of one diagram.
                    int lt = Bk[gc.target].length(), lv = V.length();
                    if (lt == lv + 1)
                        gc.type = GCase::Up;
                    else if (lt + 1 == lv)
                        gc.type = GCase::Down;
                    else
                        fail("no length-compatible representative");
                }
            }
        }
    }
    e_image_.resize(idx_.size());
}

size_t QBrAlgebra::position(int k, size_t u, size_t pi, size_t v) const {
    size_t nb = B(k).size();
    return offset_[k] + (u * hecke_[k]->size() + pi) * nb + v;
}

size_t QBrAlgebra::bpos(int k, const Perm& v) const {
    auto it = bpos_[k].find(v);
    if (it == bpos_[k].end()) throw InternalInconsistency(v.word_str() + " is not in B_{k,n}");
    return it->second;
}

std::string QBrAlgebra::index_str(size_t b) const {
    const NormalIndex& ix = idx_[b];
    std::vector<std::string> parts;
    const Perm& u = B(ix.k)[ix.u];
    if (!u.is_identity()) parts.push_back("(" + u.word_str() + ")*");
    if (ix.k == 1) parts.push_back("e");
    if (ix.k > 1) parts.push_back("e" + std::to_string(ix.k));
    const Perm& pi = hecke_[ix.k]->perm(ix.pi);
    if (!pi.is_identity()) parts.push_back("g(" + pi.word_str() + ")");
    const Perm& v = B(ix.k)[ix.v];
    if (!v.is_identity()) parts.push_back("g(" + v.word_str() + ")");
    if (parts.empty()) return "1";
    std::string s;
    for (size_t j = 0; j < parts.size(); ++j) s += (j ? " " : "") + parts[j];
    return s;
}

std::string QBrAlgebra::elem_str(const QBrElem& x) const {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [b, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*[" + index_str(b) + "]";
    }
    return s;
}

QBrElem QBrAlgebra::basis(size_t b) const {
    QBrElem x;
    x.add(b, FieldElem::one(field()));
    return x;
}

QBrElem QBrAlgebra::e_k(int k) const {
    if (k < 0 || k > max_k()) throw RangeError("e_(k) needs 0 <= k <= n/2, got k = " + std::to_string(k));
    return basis(position(k, 0, 0, 0));
}

void QBrAlgebra::tick(long amount) const {
    steps_ += amount;
    if (steps_ > budget_) throw RewriteBudgetExceeded("step budget of " + std::to_string(budget_) + " exhausted");
}

void QBrAlgebra::add_g(QBrElem& out, size_t b, const FieldElem& c, int i) const {
    const NormalIndex& ix = idx_[b];
    const GCase& gc = gcase_[ix.k][ix.v][i - 1];
    const FieldElem& Q = spec_.Q;
    tick();
    switch (gc.type) {
        case GCase::Through: {
            const Hecke& H = *hecke_[ix.k];
            size_t to = position(ix.k, ix.u, H.times_s(ix.pi, gc.p), ix.v);
            if (H.longer(ix.pi, gc.p)) {
                out.add(to, c);
            } else {
                out.add(b, c * (Q - FieldElem::one(field())));
                out.add(to, c * Q);
            }
            break;
        }
        case GCase::Pair: out.add(b, c * Q); break;
        case GCase::Up: out.add(position(ix.k, ix.u, ix.pi, gc.target), c); break;
        case GCase::Down:
            out.add(b, c * (Q - FieldElem::one(field())));
            out.add(position(ix.k, ix.u, ix.pi, gc.target), c * Q);
            break;
    }
}

QBrElem QBrAlgebra::mul_g(const QBrElem& x, int i) const {
    QBrElem out;
    for (const auto& [b, c] : x.terms()) add_g(out, b, c, i);
    return out;
}

QBrElem QBrAlgebra::mul_g_word(QBrElem x, const std::vector<int>& word) const {
    for (int j : word) x = mul_g(x, j);
    return x;
}

// g_w x, via (g_w x)* = x* g_w*.
QBrElem QBrAlgebra::left_g_word(const std::vector<int>& word, const QBrElem& x) const {
    return star(mul_g_word(star(x), reversed(word)));
}

QBrElem QBrAlgebra::mul_gen(const QBrElem& x, const Gen& g) const {
    StepScope scope(*this);
    if (g.kind != Gen::E && (g.i < 1 || g.i >= n()))
        throw RangeError("generator index " + std::to_string(g.i) + " outside 1.." + std::to_string(n() - 1));
    switch (g.kind) {
        case Gen::G: return mul_g(x, g.i);
        case Gen::GInv: {
            FieldElem qi = spec_.Q.inverse();
            QBrElem out = mul_g(x, g.i).scaled(qi);
            out.add(x, qi - FieldElem::one(field()));
            return out;
        }
        case Gen::E: {
            QBrElem out;
            for (const auto& [b, c] : x.terms()) {
                const QBrElem& img = e_image(b);
                tick((long)img.size());
                out.add(img, c);
            }
            return out;
        }
    }
    return {};
}

QBrElem QBrAlgebra::apply(const QBrElem& x, const Word& w) const {
    StepScope scope(*this);
    QBrElem y = x;
    for (const Gen& g : w) y = mul_gen(y, g);
    return y;
}

QBrElem QBrAlgebra::mul(const QBrElem& x, const QBrElem& y) const {
    StepScope scope(*this);
    QBrElem out;
    for (const auto& [b, c] : y.terms()) out.add(apply(x, canonical_word(b)), c);
    return out;
}

QBrElem QBrAlgebra::star(const QBrElem& x) const {
    QBrElem out;
    for (const auto& [b, c] : x.terms()) {
        const NormalIndex& ix = idx_[b];
        const Hecke& H = *hecke_[ix.k];
        out.add(position(ix.k, ix.v, H.index(H.perm(ix.pi).inverse()), ix.u), c);
    }
    return out;
}

Word QBrAlgebra::e_k_word(int k) {
    if (k <= 0) return {};
    Word w{Gen::e()};
    for (int j = 1; j < k; ++j) {
        // e_(j+1) = e g+_{2,2j+1} g-_{1,2j} e_(j)
        Word next{Gen::e()};
        for (int i = 2; i <= 2 * j + 1; ++i) next.push_back(Gen::g(i));
        for (int i = 1; i <= 2 * j; ++i) next.push_back(Gen::ginv(i));
        next.insert(next.end(), w.begin(), w.end());
        w = std::move(next);
    }
    return w;
}

Word QBrAlgebra::canonical_word(size_t b) const {
    const NormalIndex& ix = idx_[b];
    Word w;
    for (int j : reversed(B(ix.k)[ix.u].reduced_word())) w.push_back(Gen::g(j));
    Word ek = e_k_word(ix.k);
    w.insert(w.end(), ek.begin(), ek.end());
    for (int j : hecke_[ix.k]->perm(ix.pi).reduced_word()) w.push_back(Gen::g(j));
    for (int j : B(ix.k)[ix.v].reduced_word()) w.push_back(Gen::g(j));
    return w;
}

// ---------------------------------------------------------------- the e action

// g*_u e_(k) g_pi g_v e = g*_u g_pi (e_(k) g_v e), since e_(k) commutes with g_pi.
const QBrElem& QBrAlgebra::e_image(size_t b) const {
    if (!e_image_[b]) {
        const NormalIndex& ix = idx_[b];
        std::vector<int> word = reversed(B(ix.k)[ix.u].reduced_word());
        std::vector<int> pw = hecke_[ix.k]->perm(ix.pi).reduced_word();
        word.insert(word.end(), pw.begin(), pw.end());
        e_image_[b] = left_g_word(word, F(ix.k, ix.v));
    }
    return *e_image_[b];
}

const QBrElem& QBrAlgebra::F(int k, size_t v) const {
    auto key = std::make_pair(k, v);
    auto it = f_cache_.find(key);
    if (it != f_cache_.end()) return it->second;
    QBrElem val = compute_F(k, v);
    return f_cache_.emplace(key, std::move(val)).first->second;
}

// e_(k) g_w e for any w in S_n: expand e_(k) g_w in the normal basis, where
// every term has the form g_pi e_(k) g_v', and reduce each e_(k) g_v' e.
QBrElem QBrAlgebra::E(int k, const Perm& w) const {
    QBrElem a = mul_g_word(basis(position(k, 0, 0, 0)), w.reduced_word());
    QBrElem out;
    for (const auto& [b, c] : a.terms()) {
        const NormalIndex& ix = idx_[b];
        out.add(left_g_word(hecke_[k]->perm(ix.pi).reduced_word(), F(k, ix.v)), c);
    }
    return out;
}

QBrElem QBrAlgebra::E(int k, const Vec& h) const {
    QBrElem out;
    for (size_t z = 0; z < h.size(); ++z)
        if (!h[z].is_zero()) out.add(E(k, full_->perm(z)), h[z]);
    return out;
}

Vec QBrAlgebra::hecke_word(const Word& w) const {
    Vec h = full_->one();
    for (const Gen& g : w) h = g.kind == Gen::G ? full_->mul_gen(h, g.i) : full_->mul_gen_inv(h, g.i);
    return h;
}

// e_(k) g_v e for v in B_{k,n}. Right descents other than s_2 commute past
// (or are absorbed by) e, left descents above 2k commute past e_(k); the
// remaining shapes are handled by the identities
//   e_(k) e = x e_(k),  e_(k) g_2 e = y e_(k),
//   e_(k) g-_{2k,1} g+_{2k+1,2} e = e_(k+1),
// and, at k = 2, e_(2) = e X e with X = g_2 g_3 g_1^-1 g_2^-1 together with
// e_(2) g_2 g_1 = e_(2) g_2 g_3.
QBrElem QBrAlgebra::compute_F(int k, size_t v) const {
    int n = this->n();
    const Perm& V = B(k)[v];
    const FieldElem& Q = spec_.Q;
    if (V.is_identity()) {
        if (k == 0) return basis(position(1, 0, 0, 0));
        return basis(position(k, 0, 0, 0)).scaled(spec_.x);
    }
    for (int i = 1; i < n; ++i) {
        if (i == 2 || !V.right_descent(i)) continue;
        QBrElem y = E(k, V.times_s(i));
        return i == 1 ? y.scaled(Q) : mul_g(y, i);
    }
    for (int i = 2 * k + 1; i < n; ++i)
        if (V.left_descent(i)) return left_g_word({i}, E(k, V.s_times(i)));
    if (k >= 1) {
        if (V == Perm::s(n, 2)) return basis(position(k, 0, 0, 0)).scaled(spec_.y);
        std::vector<int> vb;
        for (int j = 2 * k; j >= 1; --j) vb.push_back(j);
        for (int j = 2 * k + 1; j >= 2; --j) vb.push_back(j);
        if (k < max_k() && V == Perm::from_word(n, vb)) {
            Word w;
            for (int j = 2 * k; j >= 1; --j) w.push_back(Gen::ginv(j));
            for (int j = 2 * k + 1; j >= 2; --j) w.push_back(Gen::g(j));
            Vec h = hecke_word(w);
            size_t top = full_->index(V);
            QBrElem acc = basis(position(k + 1, 0, 0, 0));
            for (size_t z = 0; z < h.size(); ++z)
                if (z != top && !h[z].is_zero()) acc.add(E(k, full_->perm(z)), -h[z]);
            return acc.scaled(h[top].inverse());
        }
    }
    if (k == 2) {
        Perm d1 = Perm::from_word(n, {4, 3, 2});
        if (V == d1) {
            // e_(2) g4 g3 g2 e = e X g4 g3 (e g2 e) = y e X g4 g3 e
            Vec h = hecke_word({Gen::g(2), Gen::g(3), Gen::ginv(1), Gen::ginv(2), Gen::g(4), Gen::g(3)});
            return E(1, h).scaled(spec_.y);
        }
        if (V == Perm::from_word(n, {4, 2, 3, 1, 2})) {
            // e_(2) g2 g1 g4 g3 g2 = e_(2) g2 g3 g4 g3 g2 = e_(2) g4 g3 g2 g3 g4
            return mul_g(mul_g(F(2, bpos(2, d1)), 3), 4);
        }
    }
    throw RewriteBudgetExceeded("no reduction rule for e_(" + std::to_string(k) + ") g_v e with v = " + V.word_str());
}

// ---------------------------------------------------------------- certification

QBrAlgebra::Certificate QBrAlgebra::certify() const {
    Certificate cert;
    auto check = [&](bool ok, const std::string& what) {
        ++cert.checks;
        if (!ok) {
            cert.ok = false;
            if (cert.failures.size() < 20) cert.failures.push_back(what);
        }
    };
    for (size_t b = 0; b < dim(); ++b) {
        StepScope scope(*this);
        check(from_word(canonical_word(b)) == basis(b), "canonical word of [" + index_str(b) + "]");
    }

    struct Rel {
        std::string name;
        Word lhs;
        std::vector<std::pair<FieldElem, Word>> rhs;
    };
    const Field& F = field();
    FieldElem one = FieldElem::one(F);
    const FieldElem& Q = spec_.Q;
    std::vector<Rel> rels;
    int n = this->n();
    auto g = Gen::g;
    auto gi = Gen::ginv;
    Gen e = Gen::e();
    for (int i = 1; i < n; ++i) {
        std::string s = std::to_string(i);
        rels.push_back({"g" + s + "^2", {g(i), g(i)}, {{Q - one, {g(i)}}, {Q, {}}}});
        rels.push_back({"g" + s + " g" + s + "^-1", {g(i), gi(i)}, {{one, {}}}});
        if (i + 1 < n)
            rels.push_back({"braid " + s, {g(i), g(i + 1), g(i)}, {{one, {g(i + 1), g(i), g(i + 1)}}}});
        for (int j = i + 2; j < n; ++j)
            rels.push_back({"commute " + s + "," + std::to_string(j), {g(i), g(j)}, {{one, {g(j), g(i)}}}});
    }
    rels.push_back({"E1", {e, e}, {{spec_.x, {e}}}});
    for (int i = 3; i < n; ++i) rels.push_back({"E2 e g" + std::to_string(i), {e, g(i)}, {{one, {g(i), e}}}});
    rels.push_back({"E2 e g1", {e, g(1)}, {{Q, {e}}}});
    rels.push_back({"E2 g1 e", {g(1), e}, {{Q, {e}}}});
    if (n >= 3) {
        rels.push_back({"E2 e g2 e", {e, g(2), e}, {{spec_.y, {e}}}});
        rels.push_back({"E2 e g2^-1 e", {e, gi(2), e}, {{spec_.z, {e}}}});
    }
    if (n >= 4) {
        Word X{g(2), g(3), gi(1), gi(2)}, e2 = e_k_word(2), l = X, r = e2;
        l.insert(l.end(), e2.begin(), e2.end());
        r.insert(r.end(), X.begin(), X.end());
        rels.push_back({"E3", l, {{one, r}}});
    }
    for (size_t b = 0; b < dim(); ++b) {
        QBrElem x = basis(b);
        for (const Rel& rel : rels) {
            StepScope scope(*this);
            QBrElem rhs;
            for (const auto& [c, w] : rel.rhs) rhs.add(apply(x, w), c);
            check(apply(x, rel.lhs) == rhs, rel.name + " on [" + index_str(b) + "]");
        }
    }
    return cert;
}

// ---------------------------------------------------------------- cellular basis

const std::vector<CellularIndex>& QBrAlgebra::cellular_basis() const {
    if (cell_idx_.empty()) {
        for (const CellLabel& lab : cell_labels(n())) {
            const Hecke& H = *hecke_[lab.k];
            const auto& parts = H.partitions();
            size_t li = std::find(parts.begin(), parts.end(), lab.lam) - parts.begin();
            if (li == parts.size()) throw InternalInconsistency("label " + lab.str() + " missing from its window");
            cell_label_offset_[{lab.k, li}] = cell_idx_.size();
            size_t nt = H.tableaux(li).size(), nb = B(lab.k).size();
            for (size_t s = 0; s < nt; ++s)
                for (size_t u = 0; u < nb; ++u)
                    for (size_t t = 0; t < nt; ++t)
                        for (size_t v = 0; v < nb; ++v) cell_idx_.push_back({lab, li, s, t, u, v});
        }
    }
    return cell_idx_;
}

size_t QBrAlgebra::cellular_position(const CellLabel& label, size_t s, size_t u, size_t t, size_t v) const {
    cellular_basis();
    const Hecke& H = *hecke_[label.k];
    const auto& parts = H.partitions();
    size_t li = std::find(parts.begin(), parts.end(), label.lam) - parts.begin();
    size_t nt = H.tableaux(li).size(), nb = B(label.k).size();
    return cell_label_offset_.at({label.k, li}) + ((s * nb + u) * nt + t) * nb + v;
}

std::vector<FieldElem> QBrAlgebra::to_cellular(const QBrElem& x) const {
    const auto& cb = cellular_basis();
    std::vector<FieldElem> out(cb.size(), FieldElem::zero(field()));
    std::map<std::tuple<int, size_t, size_t>, Vec> blocks;
    for (const auto& [b, c] : x.terms()) {
        const NormalIndex& ix = idx_[b];
        auto [it, fresh] = blocks.try_emplace({ix.k, ix.u, ix.v});
        if (fresh) it->second = hecke_[ix.k]->zero();
        it->second[ix.pi] = c;
    }
    for (const auto& [key, vec] : blocks) {
        auto [k, u, v] = key;
        const Hecke& H = *hecke_[k];
        Vec m = H.to_murphy(vec);
        const auto& mi = H.murphy_indices();
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i].is_zero()) continue;
            size_t nt = H.tableaux(mi[i].lam_idx).size(), nb = B(k).size();
            size_t pos = cell_label_offset_.at({k, mi[i].lam_idx}) + ((mi[i].s * nb + u) * nt + mi[i].t) * nb + v;
            out[pos] = m[i];
        }
    }
    return out;
}

QBrElem QBrAlgebra::from_cellular(const std::vector<FieldElem>& coords) const {
    const auto& cb = cellular_basis();
    if (coords.size() != cb.size()) throw SizeMismatch("cellular coordinate vector has the wrong length");
    QBrElem out;
    for (size_t c = 0; c < coords.size(); ++c)
        if (!coords[c].is_zero()) out.add(cellular_element(c), coords[c]);
    return out;
}

QBrElem QBrAlgebra::cellular_element(size_t c) const {
    const CellularIndex& ci = cellular_basis().at(c);
    const Hecke& H = *hecke_[ci.label.k];
    const Vec& row = H.murphy_matrix()[H.murphy_position(ci.lam_idx, ci.s, ci.t)];
    QBrElem out;
    for (size_t pi = 0; pi < row.size(); ++pi) out.add(position(ci.label.k, ci.u, pi, ci.v), row[pi]);
    return out;
}

// ---------------------------------------------------------------- structure constants

namespace {
constexpr const char* kCacheMagic = "qbr-structure-constants";
constexpr int kCacheVersion = 1;
}  // namespace

StructureTable::StructureTable(const QBrAlgebra& A) : A_(A), dim_(A.dim()) {}

void StructureTable::build() {
    table_.assign(dim_ * dim_, QBrElem());
    for (size_t a = 0; a < dim_; ++a) {
        QBrElem x = A_.basis(a);
        for (size_t b = 0; b < dim_; ++b) table_[a * dim_ + b] = A_.mul(x, A_.basis(b));
    }
}

QBrElem StructureTable::mul(const QBrElem& x, const QBrElem& y) const {
    QBrElem out;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) out.add(at(a, b), ca * cb);
    return out;
}

std::string StructureTable::cache_file(const std::string& dir) const {
    return (std::filesystem::path(dir) / ("qbr-" + spec_hash(A_.spec()) + ".txt")).string();
}

std::string StructureTable::serialize() const {
    const AlgebraSpec& s = A_.spec();
    std::ostringstream os;
    os << kCacheMagic << ' ' << kCacheVersion << '\n';
    os << "n " << s.n << '\n';
    os << "version " << s.version_tag() << '\n';
    os << "params " << s.describe() << '\n';
    os << "hash " << spec_hash(s) << '\n';
    os << "entries " << table_.size() << '\n';
    for (size_t a = 0; a < dim_; ++a)
        for (size_t b = 0; b < dim_; ++b) {
            os << a << '\t' << b;
            for (const auto& [i, c] : at(a, b).terms()) os << '\t' << i << '\t' << c.str();
            os << '\n';
        }
    return os.str();
}

void StructureTable::deserialize(const std::string& text) {
    const AlgebraSpec& s = A_.spec();
    std::istringstream is(text);
    std::string line;
    auto expect = [&](const std::string& want) {
        if (!std::getline(is, line) || line != want)
            throw CacheVersionMismatch("cache header mismatch: expected '" + want + "', found '" + line + "'");
    };
    expect(std::string(kCacheMagic) + ' ' + std::to_string(kCacheVersion));
    expect("n " + std::to_string(s.n));
    expect("version " + s.version_tag());
    expect("params " + s.describe());
    expect("hash " + spec_hash(s));
    expect("entries " + std::to_string(dim_ * dim_));
    table_.assign(dim_ * dim_, QBrElem());
    size_t seen = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, '\t')) f.push_back(cell);
        if (f.size() < 2 || f.size() % 2) throw CacheVersionMismatch("malformed cache record: " + line);
        size_t a = std::stoul(f[0]), b = std::stoul(f[1]);
        if (a >= dim_ || b >= dim_) throw CacheVersionMismatch("cache record out of range: " + line);
        QBrElem x;
        for (size_t j = 2; j < f.size(); j += 2) {
            size_t i = std::stoul(f[j]);
            if (i >= dim_) throw CacheVersionMismatch("cache record out of range: " + line);
            x.add(i, parse_elem(s.field, f[j + 1]));
        }
        table_[a * dim_ + b] = std::move(x);
        ++seen;
    }
    if (seen != dim_ * dim_) throw CacheVersionMismatch("cache file is truncated");
}

bool StructureTable::load_or_build(const std::string& dir) {
    if (dir.empty()) {
        build();
        return false;
    }
    std::string path = cache_file(dir);
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        deserialize(buf.str());
        return true;
    }
    build();
    std::filesystem::create_directories(dir);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << serialize();
    }
    std::filesystem::rename(tmp, path);
    return false;
}

}  // namespace qbr
