#include "qbr/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace qbr {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) terms_.emplace(Mono{0, 0}, BigInt(c));
}

LaurentPoly::LaurentPoly(const BigInt& c) {
    if (c != 0) terms_.emplace(Mono{0, 0}, c);
}

LaurentPoly LaurentPoly::monomial(const BigInt& c, int qe, int re) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(Mono{qe, re}, c);
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0});
}

Mono LaurentPoly::min_exponents() const {
    Mono m{0, 0};
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            m = e;
            first = false;
        } else {
            m.q = std::min(m.q, e.q);
            m.r = std::min(m.r, e.r);
        }
    }
    return m;
}

BigInt LaurentPoly::content() const {
    BigInt g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void LaurentPoly::add_term(const Mono& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) p.add_term(Mono{ea.q + eb.q, ea.r + eb.r}, ca * cb);
    return p;
}

LaurentPoly LaurentPoly::shifted(int dq, int dr) const {
    if (dq == 0 && dr == 0) return *this;
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), Mono{e.q + dq, e.r + dr}, c);
    return p;
}

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
    if (c == 0) return {};
    LaurentPoly p = *this;
    for (auto& [e, x] : p.terms_) x *= c;
    return p;
}

LaurentPoly LaurentPoly::divexact(const BigInt& c) const {
    LaurentPoly p = *this;
    for (auto& [e, x] : p.terms_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return p;
}

static std::string monomial_str(const char* var, int e) {
    std::string s = var;
    if (e != 1) s += "^" + std::to_string(e);
    return s;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        BigInt a = abs(c);
        std::vector<std::string> factors;
        if (e.q != 0) factors.push_back(monomial_str("q", e.q));
        if (e.r != 0) factors.push_back(monomial_str("r", e.r));
        if (a != 1 || factors.empty()) factors.insert(factors.begin(), a.get_str());
        std::string body;
        for (size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
        if (first)
            out += (c < 0 ? "-" : "") + body;
        else
            out += (c < 0 ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers: UPoly in q over Z, BPoly in r over Z[q].

namespace {

using UPoly = std::vector<BigInt>;
using BPoly = std::vector<UPoly>;

void trim(UPoly& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
}
void trim(BPoly& b) {
    while (!b.empty() && b.back().empty()) b.pop_back();
}

BigInt content(const UPoly& u) {
    BigInt g = 0;
    for (const auto& c : u) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

UPoly scale(const UPoly& u, const BigInt& c) {
    UPoly out(u);
    for (auto& x : out) x *= c;
    trim(out);
    return out;
}

UPoly divexact(const UPoly& u, const BigInt& c) {
    UPoly out(u);
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return out;
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly out(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly out(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

UPoly primitive(const UPoly& u) {
    if (u.empty()) return u;
    BigInt c = content(u);
    if (u.back() < 0) c = -c;
    return divexact(u, c);
}

// Exact division in Z[q]; throws if b does not divide a.
UPoly udivexact(UPoly a, const UPoly& b) {
    if (b.empty()) throw DivisionByZero();
    if (a.empty()) return {};
    if (a.size() < b.size()) throw InternalInconsistency("inexact polynomial division");
    UPoly quo(a.size() - b.size() + 1, BigInt(0));
    const BigInt& lb = b.back();
    for (size_t d = a.size(); d-- >= b.size();) {
        if (a[d] == 0) continue;
        if (!mpz_divisible_p(a[d].get_mpz_t(), lb.get_mpz_t()))
            throw InternalInconsistency("inexact polynomial division");
        BigInt c;
        mpz_divexact(c.get_mpz_t(), a[d].get_mpz_t(), lb.get_mpz_t());
        size_t s = d - (b.size() - 1);
        quo[s] = c;
        for (size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
    }
    trim(a);
    if (!a.empty()) throw InternalInconsistency("inexact polynomial division");
    trim(quo);
    return quo;
}

UPoly uprem(UPoly a, const UPoly& b) {
    const BigInt& lb = b.back();
    trim(a);
    while (a.size() >= b.size()) {
        BigInt la = a.back();
        size_t s = a.size() - b.size();
        for (auto& x : a) x *= lb;
        for (size_t j = 0; j < b.size(); ++j) a[s + j] -= la * b[j];
        trim(a);
    }
    return a;
}

UPoly ugcd(const UPoly& a0, const UPoly& b0) {
    if (a0.empty()) return primitive(b0).empty() ? UPoly{} : scale(primitive(b0), content(b0));
    if (b0.empty()) return scale(primitive(a0), content(a0));
    BigInt g;
    mpz_gcd(g.get_mpz_t(), content(a0).get_mpz_t(), content(b0).get_mpz_t());
    UPoly a = primitive(a0), b = primitive(b0);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        if (b.size() == 1) return UPoly{g};
        UPoly r = uprem(a, b);
        a = std::move(b);
        b = primitive(r);
    }
    return scale(primitive(a), g);
}

BPoly to_dense(const LaurentPoly& p) {
    BPoly b;
    for (const auto& [e, c] : p.terms()) {
        if (e.q < 0 || e.r < 0) throw InternalInconsistency("negative exponent in dense conversion");
        if ((int)b.size() <= e.r) b.resize(e.r + 1);
        auto& u = b[e.r];
        if ((int)u.size() <= e.q) u.resize(e.q + 1, BigInt(0));
        u[e.q] = c;
    }
    return b;
}

LaurentPoly from_dense(const BPoly& b) {
    LaurentPoly p;
    for (size_t j = 0; j < b.size(); ++j)
        for (size_t i = 0; i < b[j].size(); ++i)
            if (b[j][i] != 0) p.add_term(Mono{(int)i, (int)j}, b[j][i]);
    return p;
}

UPoly bcontent(const BPoly& b) {
    UPoly g;
    for (const auto& u : b) {
        g = ugcd(g, u);
        if (g.size() == 1 && abs(g[0]) == 1) break;
    }
    return g;
}

BPoly bdiv_u(const BPoly& b, const UPoly& c) {
    BPoly out;
    out.reserve(b.size());
    for (const auto& u : b) out.push_back(u.empty() ? UPoly{} : udivexact(u, c));
    return out;
}

BPoly bmul_u(const BPoly& b, const UPoly& c) {
    BPoly out;
    out.reserve(b.size());
    for (const auto& u : b) out.push_back(mul(u, c));
    trim(out);
    return out;
}

BPoly bprimitive(const BPoly& b) {
    if (b.empty()) return b;
    return bdiv_u(b, bcontent(b));
}

BPoly bprem(BPoly a, const BPoly& b) {
    const UPoly& lb = b.back();
    trim(a);
    while (a.size() >= b.size()) {
        UPoly la = a.back();
        size_t s = a.size() - b.size();
        for (auto& u : a) u = mul(u, lb);
        for (size_t j = 0; j < b.size(); ++j) a[s + j] = sub(a[s + j], mul(la, b[j]));
        trim(a);
    }
    return a;
}

BPoly bgcd(const BPoly& a0, const BPoly& b0) {
    if (a0.empty()) return b0;
    if (b0.empty()) return a0;
    UPoly g = ugcd(bcontent(a0), bcontent(b0));
    BPoly a = bprimitive(a0), b = bprimitive(b0);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        if (b.size() == 1) return BPoly{g};
        BPoly r = bprem(a, b);
        a = std::move(b);
        b = bprimitive(r);
    }
    return bmul_u(a, g);
}

BPoly bdivexact(BPoly a, const BPoly& b) {
    if (b.empty()) throw DivisionByZero();
    trim(a);
    if (a.empty()) return {};
    if (a.size() < b.size()) throw InternalInconsistency("inexact polynomial division");
    BPoly quo(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        UPoly c = udivexact(a.back(), b.back());
        size_t s = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[s + j] = sub(a[s + j], mul(c, b[j]));
        quo[s] = std::move(c);
        trim(a);
    }
    if (!a.empty()) throw InternalInconsistency("inexact polynomial division");
    trim(quo);
    return quo;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly g = from_dense(bgcd(to_dense(a), to_dense(b)));
    if (!g.is_zero() && g.leading_coeff() < 0) g = -g;
    return g;
}

LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b) {
    return from_dense(bdivexact(to_dense(a), to_dense(b)));
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) { normalize(); }

void RatFunc::normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    Mono mn = num_.min_exponents(), md = den_.min_exponents();
    LaurentPoly N = num_.shifted(-mn.q, -mn.r);
    LaurentPoly D = den_.shifted(-md.q, -md.r);
    if (D.is_constant() || N.is_constant()) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), N.content().get_mpz_t(), D.content().get_mpz_t());
        if (g != 1) {
            N = N.divexact(g);
            D = D.divexact(g);
        }
    } else {
        LaurentPoly g = poly_gcd(N, D);
        if (!g.is_constant()) {
            N = poly_divexact(N, g);
            D = poly_divexact(D, g);
        } else if (g != LaurentPoly(1)) {
            BigInt c = g.leading_coeff();
            N = N.divexact(c);
            D = D.divexact(c);
        }
    }
    if (D.leading_coeff() < 0) {
        N = -N;
        D = -D;
    }
    num_ = N.shifted(mn.q - md.q, mn.r - md.r);
    den_ = std::move(D);
}

bool RatFunc::is_one() const { return num_ == LaurentPoly(1) && den_ == LaurentPoly(1); }

static bool is_one_poly(const LaurentPoly& p) {
    return p.terms().size() == 1 && p.terms().begin()->first == Mono{0, 0} && p.terms().begin()->second == 1;
}

RatFunc RatFunc::operator-() const {
    RatFunc f = *this;
    f.num_ = -f.num_;
    return f;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFunc f;
    if (is_one_poly(a.den_) && is_one_poly(b.den_)) {
        f.num_ = a.num_ + b.num_;
        return f;
    }
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (is_one_poly(a.den_) && is_one_poly(b.den_)) {
        RatFunc f;
        f.num_ = a.num_ * b.num_;
        return f;
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero();
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str() const {
    if (is_one_poly(den_)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// Cyclotomic helpers

namespace {

using QPoly = std::vector<BigRat>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, BigRat(0));
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly out(std::max(a.size(), b.size()), BigRat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

// Returns (quotient, remainder).
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    QPoly quo(a.size() - b.size() + 1, BigRat(0));
    while (!a.empty() && a.size() >= b.size()) {
        BigRat c = a.back() / b.back();
        size_t s = a.size() - b.size();
        quo[s] = c;
        for (size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
        a.pop_back();
        trim(a);
    }
    trim(quo);
    return {quo, a};
}

QPoly phi_q(int m) {
    const auto& z = cyclotomic_poly(m);
    QPoly p;
    for (const auto& c : z) p.push_back(BigRat(c));
    return p;
}

Cyc cyc_reduce(int m, QPoly p) {
    QPoly phi = phi_q(m);
    auto rem = qdivmod(std::move(p), phi).second;
    size_t deg = phi.size() - 1;
    rem.resize(deg, BigRat(0));
    return Cyc{m, rem};
}

QPoly cyc_poly(const Cyc& c) {
    QPoly p = c.c;
    trim(p);
    return p;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_poly(int m) {
    static std::recursive_mutex mu;
    static std::map<int, std::vector<BigInt>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    // x^m - 1 divided by Phi_d for proper divisors d.
    QPoly p(m + 1, BigRat(0));
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d) continue;
        const std::vector<BigInt>& pd = cyclotomic_poly(d);
        QPoly q;
        for (const auto& c : pd) q.push_back(BigRat(c));
        p = qdivmod(p, q).first;
    }
    std::vector<BigInt> out;
    for (const auto& c : p) out.push_back(c.get_num());
    return cache.emplace(m, out).first->second;
}

// ---------------------------------------------------------------------------
// Field

static bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Field Field::prime(long p) {
    if (!is_prime(p) || p > 2147483647L) throw ConfigError("not a supported prime: " + std::to_string(p));
    Field F;
    F.kind = Kind::Prime;
    F.p = p;
    return F;
}

Field Field::cyclotomic(int m) {
    if (m < 1 || m > 1000) throw ConfigError("unsupported cyclotomic conductor: " + std::to_string(m));
    Field F;
    F.kind = Kind::Cyclotomic;
    F.m = m;
    return F;
}

std::string Field::str() const {
    switch (kind) {
        case Kind::Generic: return "generic";
        case Kind::Prime: return "fp:" + std::to_string(p);
        case Kind::Cyclotomic: return "cyclo:" + std::to_string(m);
    }
    return "";
}

Field Field::parse(const std::string& s) {
    if (s == "generic") return generic();
    try {
        if (s.rfind("fp:", 0) == 0) return prime(std::stol(s.substr(3)));
        if (s.rfind("cyclo:", 0) == 0) return cyclotomic(std::stoi(s.substr(6)));
    } catch (const std::logic_error&) {
    }
    throw ConfigError("unknown field: " + s);
}

// ---------------------------------------------------------------------------
// FieldElem

static std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

static std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b = mod_norm(b, p);
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % p;
        b = (__int128)b * b % p;
        e >>= 1;
    }
    return r;
}

FieldElem FieldElem::from_int(const Field& F, long c) {
    switch (F.kind) {
        case Field::Kind::Generic: return FieldElem(RatFunc(c));
        case Field::Kind::Prime: return FieldElem(Fp{F.p, mod_norm(c, F.p)});
        case Field::Kind::Cyclotomic: return FieldElem(cyc_reduce(F.m, QPoly{BigRat(c)}));
    }
    return {};
}

FieldElem FieldElem::generator(const Field& F, const std::string& name) {
    if (F.kind == Field::Kind::Generic) {
        if (name == "q") return FieldElem(RatFunc::q());
        if (name == "r") return FieldElem(RatFunc::r());
    }
    if (F.kind == Field::Kind::Cyclotomic) {
        if (name == "zeta") return FieldElem(cyc_reduce(F.m, QPoly{BigRat(0), BigRat(1)}));
        if (name == "i" && F.m % 4 == 0) return generator(F, "zeta").pow(F.m / 4);
    }
    throw ConfigError("symbol '" + name + "' is not available in field " + F.str());
}

Field FieldElem::field() const {
    if (auto f = fp()) return Field::prime(f->p);
    if (auto c = cyc()) return Field::cyclotomic(c->m);
    return Field::generic();
}

bool FieldElem::is_zero() const {
    if (auto f = ratfunc()) return f->is_zero();
    if (auto f = fp()) return f->v == 0;
    for (const auto& x : cyc()->c)
        if (x != 0) return false;
    return true;
}

bool FieldElem::is_one() const {
    if (auto f = ratfunc()) return f->is_one();
    if (auto f = fp()) return f->v == 1;
    const auto& c = cyc()->c;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != (i == 0 ? 1 : 0)) return false;
    return true;
}

FieldElem FieldElem::operator-() const {
    if (auto f = ratfunc()) return FieldElem(-*f);
    if (auto f = fp()) return FieldElem(Fp{f->p, f->v == 0 ? 0 : f->p - f->v});
    Cyc c = *cyc();
    for (auto& x : c.c) x = -x;
    return FieldElem(c);
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    if (auto x = a.ratfunc()) {
        auto y = b.ratfunc();
        if (!y) throw FieldMismatch();
        return FieldElem(*x + *y);
    }
    if (auto x = a.fp()) {
        auto y = b.fp();
        if (!y || y->p != x->p) throw FieldMismatch();
        std::int64_t v = x->v + y->v;
        if (v >= x->p) v -= x->p;
        return FieldElem(Fp{x->p, v});
    }
    auto x = a.cyc();
    auto y = b.cyc();
    if (!y || y->m != x->m) throw FieldMismatch();
    Cyc c = *x;
    for (size_t i = 0; i < c.c.size(); ++i) c.c[i] += y->c[i];
    return FieldElem(c);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    if (auto x = a.ratfunc()) {
        auto y = b.ratfunc();
        if (!y) throw FieldMismatch();
        return FieldElem(*x * *y);
    }
    if (auto x = a.fp()) {
        auto y = b.fp();
        if (!y || y->p != x->p) throw FieldMismatch();
        return FieldElem(Fp{x->p, (std::int64_t)((__int128)x->v * y->v % x->p)});
    }
    auto x = a.cyc();
    auto y = b.cyc();
    if (!y || y->m != x->m) throw FieldMismatch();
    return FieldElem(cyc_reduce(x->m, qmul(cyc_poly(*x), cyc_poly(*y))));
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (auto f = ratfunc()) return FieldElem(f->inverse());
    if (auto f = fp()) return FieldElem(Fp{f->p, mod_pow(f->v, f->p - 2, f->p)});
    // Extended Euclid in Q[x] against Phi_m.
    const Cyc& c = *cyc();
    QPoly r0 = phi_q(c.m), r1 = cyc_poly(c);
    QPoly s0{}, s1{BigRat(1)};
    while (r1.size() > 1) {
        auto [qt, rem] = qdivmod(r0, r1);
        QPoly s2 = qsub(s0, qmul(qt, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    BigRat inv = 1 / r1[0];
    for (auto& x : s1) x *= inv;
    return FieldElem(cyc_reduce(c.m, s1));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    if (auto x = a.ratfunc()) {
        auto y = b.ratfunc();
        if (!y) throw FieldMismatch();
        return FieldElem(*x / *y);
    }
    return a * b.inverse();
}

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (auto f = fp()) return FieldElem(Fp{f->p, mod_pow(f->v, e, f->p)});
    FieldElem result = from_int(field(), 1), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (auto x = ratfunc()) {
        auto y = o.ratfunc();
        return y && *x == *y;
    }
    if (auto x = fp()) {
        auto y = o.fp();
        return y && x->p == y->p && x->v == y->v;
    }
    auto x = cyc();
    auto y = o.cyc();
    return y && x->m == y->m && x->c == y->c;
}

std::string FieldElem::str() const {
    if (auto f = ratfunc()) return f->str();
    if (auto f = fp()) return std::to_string(f->v);
    const auto& c = cyc()->c;
    std::string out;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        BigRat a = abs(c[i]);
        std::string body;
        if (i == 0)
            body = a.get_str();
        else {
            std::string z = i == 1 ? "zeta" : "zeta^" + std::to_string(i);
            body = a == 1 ? z : a.get_str() + "*" + z;
        }
        if (out.empty())
            out = (c[i] < 0 ? "-" : "") + body;
        else
            out += (c[i] < 0 ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(const Field& F, const std::string& s) : F_(F), s_(s) {}

    FieldElem parse() {
        FieldElem v = expr();
        skip();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail() { throw ConfigError("cannot parse coefficient expression: '" + s_ + "'"); }

    FieldElem expr() {
        FieldElem v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
    FieldElem term() {
        FieldElem v = unary();
        for (;;) {
            if (eat('*'))
                v = v * unary();
            else if (eat('/')) {
                FieldElem d = unary();
                if (d.is_zero()) throw DivisionByZero();
                v = v / d;
            } else
                return v;
        }
    }
    FieldElem unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    FieldElem power() {
        FieldElem base = atom();
        if (eat('^')) {
            bool neg = false;
            if (eat('-'))
                neg = true;
            else if (eat('(')) {
                bool n2 = eat('-');
                long e = integer();
                if (!eat(')')) fail();
                return base.pow(n2 ? -e : e);
            }
            long e = integer();
            return base.pow(neg ? -e : e);
        }
        return base;
    }
    long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (start == pos_) fail();
        return std::stol(s_.substr(start, pos_ - start));
    }
    FieldElem atom() {
        skip();
        if (eat('(')) {
            FieldElem v = expr();
            if (!eat(')')) fail();
            return v;
        }
        if (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            BigInt z(s_.substr(start, pos_ - start));
            return from_big(z);
        }
        if (pos_ < s_.size() && std::isalpha((unsigned char)s_[pos_])) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum((unsigned char)s_[pos_])) ++pos_;
            return FieldElem::generator(F_, s_.substr(start, pos_ - start));
        }
        fail();
    }
    FieldElem from_big(const BigInt& z) {
        switch (F_.kind) {
            case Field::Kind::Generic: return FieldElem(RatFunc(LaurentPoly(z)));
            case Field::Kind::Prime: {
                BigInt r = z % F_.p;
                return FieldElem::from_int(F_, r.get_si());
            }
            case Field::Kind::Cyclotomic: return FieldElem(cyc_reduce(F_.m, QPoly{BigRat(z)}));
        }
        fail();
    }

    Field F_;
    std::string s_;
    size_t pos_ = 0;
};

}  // namespace

FieldElem parse_elem(const Field& F, const std::string& text) { return Parser(F, text).parse(); }

// ---------------------------------------------------------------------------
// Specialization and quantum characteristic

FieldElem specialize(const LaurentPoly& f, const Specialization& s) {
    FieldElem acc = FieldElem::zero(s.target);
    std::map<int, FieldElem> qp, rp;
    auto pw = [](std::map<int, FieldElem>& cache, const FieldElem& x, int e) -> const FieldElem& {
        auto it = cache.find(e);
        if (it == cache.end()) {
            if (e < 0 && x.is_zero()) throw DenominatorVanishes();
            it = cache.emplace(e, x.pow(e)).first;
        }
        return it->second;
    };
    for (const auto& [e, c] : f.terms()) {
        FieldElem coeff = s.target.kind == Field::Kind::Prime
                              ? FieldElem::from_int(s.target, BigInt(c % s.target.p).get_si())
                              : parse_elem(s.target, BigInt(abs(c)).get_str());
        if (s.target.kind != Field::Kind::Prime && c < 0) coeff = -coeff;
        acc += coeff * pw(qp, s.q_image, e.q) * pw(rp, s.r_image, e.r);
    }
    return acc;
}

FieldElem specialize(const RatFunc& f, const Specialization& s) {
    FieldElem d = specialize(f.den(), s);
    if (d.is_zero()) throw DenominatorVanishes();
    FieldElem n = specialize(f.num(), s);
    return n / d;
}

std::optional<int> quantum_char(const FieldElem& x) {
    if (auto f = x.ratfunc()) {
        // Characteristic zero: only the rational constants 1 and -1 can satisfy [m] = 0.
        if (f->num() == LaurentPoly(-1) && f->den() == LaurentPoly(1)) return 2;
        return std::nullopt;
    }
    if (auto f = x.fp()) {
        if (f->v == 1) return (int)f->p;
        if (f->v == 0) return std::nullopt;
        std::int64_t acc = f->v;
        for (int m = 1; m < f->p; ++m) {
            if (acc == 1) return m;
            acc = (__int128)acc * f->v % f->p;
        }
        return std::nullopt;
    }
    // Cyclotomic field: characteristic zero, roots of unity have order dividing 2m.
    if (x.is_one() || x.is_zero()) return std::nullopt;
    int m = x.cyc()->m;
    FieldElem acc = x;
    for (int k = 1; k <= 2 * m; ++k) {
        if (acc.is_one()) return k;
        acc = acc * x;
    }
    return std::nullopt;
}

std::string quantum_char_str(std::optional<int> e) { return e ? std::to_string(*e) : "inf"; }

FieldElem quantum_int(const FieldElem& x, long m) {
    Field F = x.field();
    if (m < 0) return -(x.pow(m) * quantum_int(x, -m));
    FieldElem acc = FieldElem::zero(F), p = FieldElem::one(F);
    for (long i = 0; i < m; ++i) {
        acc += p;
        p *= x;
    }
    return acc;
}

}  // namespace qbr
