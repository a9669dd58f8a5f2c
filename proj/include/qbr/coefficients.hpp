/**
 * @file coefficients.hpp
 * @brief Exact coefficient arithmetic: Laurent polynomials in q and r,
 * their fraction field, and prime / cyclotomic specializations.
 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qbr/errors.hpp"

namespace qbr {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Exponent pair (power of q, power of r).
struct Mono {
    int q = 0;
    int r = 0;
    bool operator==(const Mono&) const = default;
};

// Graded-lex order: total degree first, then q-degree.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = a.q + a.r, db = b.q + b.r;
        if (da != db) return da < db;
        return a.q < b.q;
    }
};

class LaurentPoly {
public:
    using Terms = std::map<Mono, BigInt, MonoLess>;

    LaurentPoly() = default;
    LaurentPoly(long c);
    LaurentPoly(const BigInt& c);
    static LaurentPoly monomial(const BigInt& c, int qe, int re);
    static LaurentPoly q() { return monomial(1, 1, 0); }
    static LaurentPoly r() { return monomial(1, 0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // Coefficient of the graded-lex largest term.
    const BigInt& leading_coeff() const { return terms_.rbegin()->second; }
    Mono min_exponents() const;
    BigInt content() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly shifted(int dq, int dr) const;
    LaurentPoly scaled(const BigInt& c) const;
    LaurentPoly divexact(const BigInt& c) const;
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    std::string str() const;

    void add_term(const Mono& m, const BigInt& c);

private:
    Terms terms_;
};

// Exact quotient a / b of polynomials (nonnegative exponents); throws if b does not divide a.
LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b);
// Gcd of two polynomials with nonnegative exponents, positive leading coefficient.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

class RatFunc {
public:
    RatFunc() : num_(0), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const LaurentPoly& p) : num_(p), den_(1) { normalize(); }
    RatFunc(const LaurentPoly& n, const LaurentPoly& d);

    static RatFunc q() { return RatFunc(LaurentPoly::q()); }
    static RatFunc r() { return RatFunc(LaurentPoly::r()); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc inverse() const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string str() const;

private:
    void normalize();
    LaurentPoly num_, den_;
};

struct Fp {
    std::int64_t p;
    std::int64_t v;
};

struct Cyc {
    int m;
    std::vector<BigRat> c;  // length deg Phi_m, coefficient of zeta^i
};

// Cyclotomic polynomial Phi_m over the integers, lowest degree first.
const std::vector<BigInt>& cyclotomic_poly(int m);

struct Field {
    enum class Kind { Generic, Prime, Cyclotomic };
    Kind kind = Kind::Generic;
    long p = 0;  // prime modulus
    int m = 0;   // conductor

    static Field generic() { return {}; }
    static Field prime(long p);
    static Field cyclotomic(int m);
    bool operator==(const Field&) const = default;
    std::string str() const;
    // Parses "generic", "fp:<p>" or "cyclo:<m>".
    static Field parse(const std::string& s);
};

class FieldElem {
public:
    FieldElem() : v_(RatFunc()) {}
    FieldElem(RatFunc f) : v_(std::move(f)) {}
    FieldElem(Fp f) : v_(f) {}
    FieldElem(Cyc c) : v_(std::move(c)) {}

    static FieldElem from_int(const Field& F, long c);
    static FieldElem zero(const Field& F) { return from_int(F, 0); }
    static FieldElem one(const Field& F) { return from_int(F, 1); }
    // q or r in the generic field; zeta in a cyclotomic field.
    static FieldElem generator(const Field& F, const std::string& name);

    Field field() const;
    bool is_zero() const;
    bool is_one() const;
    const RatFunc* ratfunc() const { return std::get_if<RatFunc>(&v_); }
    const Fp* fp() const { return std::get_if<Fp>(&v_); }
    const Cyc* cyc() const { return std::get_if<Cyc>(&v_); }

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem inverse() const;
    FieldElem pow(long e) const;
    bool operator==(const FieldElem& o) const;

    // Canonical text form; parse_elem reads it back.
    std::string str() const;

private:
    std::variant<RatFunc, Fp, Cyc> v_;
};

// Parses an expression in q, r (generic), zeta (cyclotomic), integers,
// + - * / ^ and parentheses, evaluated in F.
FieldElem parse_elem(const Field& F, const std::string& text);

// Images of q and r in a target field.
struct Specialization {
    Field target;
    FieldElem q_image;
    FieldElem r_image;
};

FieldElem specialize(const LaurentPoly& f, const Specialization& s);
FieldElem specialize(const RatFunc& f, const Specialization& s);

// Least m with 1 + x + ... + x^(m-1) = 0; nullopt stands for infinity.
std::optional<int> quantum_char(const FieldElem& x);
std::string quantum_char_str(std::optional<int> e);

// [m]_x = 1 + x + ... + x^(m-1), extended to negative m by [-m]_x = -x^(-m) [m]_x.
FieldElem quantum_int(const FieldElem& x, long m);

}  // namespace qbr
