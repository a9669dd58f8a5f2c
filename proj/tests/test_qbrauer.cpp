#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qbr/brauerdiag.hpp"
#include "qbr/errors.hpp"
#include "qbr/qbrauer.hpp"

using namespace qbr;

namespace {

FieldElem gq() { return FieldElem(RatFunc::q()); }
FieldElem gr() { return FieldElem(RatFunc::r()); }

// g+_{l,m} and g-_{l,m} as words.
Word gplus(int l, int m, bool inv = false) {
    Word w;
    int step = l <= m ? 1 : -1;
    for (int i = l;; i += step) {
        w.push_back(inv ? Gen::ginv(i) : Gen::g(i));
        if (i == m) break;
    }
    return w;
}
Word gminus(int l, int m) { return gplus(l, m, true); }

Word cat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

QBrElem random_elem(const QBrAlgebra& A, std::mt19937& rng, int terms = 4) {
    std::uniform_int_distribution<size_t> pick(0, A.dim() - 1);
    std::uniform_int_distribution<int> c(-3, 3);
    QBrElem x;
    for (int i = 0; i < terms; ++i) x.add(pick(rng), FieldElem::from_int(A.field(), c(rng)));
    return x;
}

}  // namespace

TEST_CASE("dimension of the normal basis") {
    long expect[] = {0, 0, 3, 15, 105, 945};
    for (int n = 2; n <= 5; ++n) {
        QBrAlgebra A(AlgebraSpec::generic(n));
        CHECK(A.dim() == (size_t)expect[n]);
        CHECK(A.dim() == (size_t)double_factorial_odd(n));
        for (int k = 0; k <= n / 2; ++k)
            CHECK(A.level_size(k) == (size_t)(bkn_count(n, k) * bkn_count(n, k) * factorial(n - 2 * k)));
    }
    QBrAlgebra A5(AlgebraSpec::generic(5));
    CHECK(A5.level_size(1) == 600);
}

TEST_CASE("parameter scalars and exclusions") {
    auto s = AlgebraSpec::generic(3);
    CHECK(s.z == (gr() * gq()).inverse());
    CHECK(s.x.str() == "(q*r - q*r^-1)/(q^2 - 1)");
    auto one = AlgebraSpec::generic(3, Version::OneParam);
    CHECK(one.Q == gq());
    CHECK(one.y == gr());
    auto nv = AlgebraSpec::n_version(3, 3, gq());
    FieldElem Q = gq() * gq();
    CHECK(nv.x == FieldElem::one(Field::generic()) + Q + Q * Q);
    CHECK(nv.y == gq().pow(4));
    Field F5 = Field::prime(5);
    auto e = [&](long v) { return FieldElem::from_int(F5, v); };
    CHECK_THROWS_AS(AlgebraSpec::two_param(2, e(4), e(2)), ConfigError);  // q^2 = 1
    CHECK_THROWS_AS(AlgebraSpec::two_param(2, e(2), e(1)), ConfigError);  // r^2 = 1
    CHECK_THROWS_AS(AlgebraSpec::one_param(2, e(1), e(2)), ConfigError);
    CHECK_THROWS_AS(AlgebraSpec::n_version(2, 5, e(1)), ConfigError);  // [5] = 5 = 0
    CHECK_THROWS_AS(QBrAlgebra(AlgebraSpec::generic(6)), ConfigError);
}

TEST_CASE("certification over several coefficient domains") {
    Field F5 = Field::prime(5), F7 = Field::prime(7), C8 = Field::cyclotomic(8);
    std::vector<AlgebraSpec> specs;
    for (int n = 2; n <= 4; ++n) {
        specs.push_back(AlgebraSpec::generic(n));
        specs.push_back(AlgebraSpec::generic(n, Version::OneParam));
        specs.push_back(AlgebraSpec::generic(n, Version::NVersion, 3));
        specs.push_back(AlgebraSpec::generic(n, Version::NVersion, -2));
        specs.push_back(AlgebraSpec::two_param(n, FieldElem::from_int(F5, 2), FieldElem::from_int(F5, 3)));
        specs.push_back(AlgebraSpec::one_param(n, FieldElem::from_int(F7, 3), FieldElem::from_int(F7, 5)));
        specs.push_back(AlgebraSpec::two_param(n, parse_elem(C8, "zeta^3"), parse_elem(C8, "zeta^-3")));
        specs.push_back(AlgebraSpec::n_version(n, 2, FieldElem::one(Field::generic())));
    }
    for (const auto& s : specs) {
        QBrAlgebra A(s);
        auto cert = A.certify();
        INFO(s.describe());
        CHECK(cert.ok);
        for (const auto& f : cert.failures) MESSAGE(f);
    }
}

TEST_CASE("defining relations at n = 5") {
    QBrAlgebra A(AlgebraSpec::generic(5));
    auto cert = A.certify();
    CHECK(cert.ok);
    CHECK(cert.checks > 20000);
}

TEST_CASE("generator examples") {
    QBrAlgebra A(AlgebraSpec::generic(3));
    const auto& s = A.spec();
    QBrElem e = A.e_k(1);
    CHECK(A.mul(e, e) == e.scaled(s.x));
    CHECK(A.mul(A.gen(Gen::g(1)), e) == e.scaled(gq() * gq()));
    CHECK(A.from_word({Gen::e(), Gen::g(2), Gen::e()}) == e.scaled(gr() * gq()));
    CHECK(A.from_word({Gen::e(), Gen::ginv(2), Gen::e()}) == e.scaled((gr() * gq()).inverse()));
    CHECK(A.e_k(0) == A.one());
    CHECK(A.from_word(QBrAlgebra::e_k_word(1)) == e);
    CHECK_THROWS_AS(A.e_k(2), RangeError);
    CHECK_THROWS_AS(A.gen(Gen::g(3)), RangeError);
}

TEST_CASE("slide and absorption identities of e_(k)") {
    for (int n = 2; n <= 5; ++n) {
        QBrAlgebra A(AlgebraSpec::generic(n));
        const auto& s = A.spec();
        auto W = [&](const Word& w) { return A.from_word(w); };
        auto ek = [&](int k) { return QBrAlgebra::e_k_word(k); };
        for (int k = 0; k <= n / 2; ++k) {
            // (1)
            for (int j = 0; j < k; ++j) {
                Word g{Gen::g(2 * j + 1)}, gi{Gen::ginv(2 * j + 1)};
                CHECK(W(cat({g, ek(k)})) == A.e_k(k).scaled(s.Q));
                CHECK(W(cat({ek(k), g})) == A.e_k(k).scaled(s.Q));
                CHECK(W(cat({gi, ek(k)})) == A.e_k(k).scaled(s.Q.inverse()));
                CHECK(W(cat({ek(k), gi})) == A.e_k(k).scaled(s.Q.inverse()));
            }
            // (2)
            for (int j = 0; j <= k; ++j) {
                CHECK(W(cat({ek(j), ek(k)})) == A.e_k(k).scaled(s.x.pow(j)));
                CHECK(W(cat({ek(k), ek(j)})) == A.e_k(k).scaled(s.x.pow(j)));
            }
            for (int i = 1; i <= k; ++i)
                for (int j = i; j < k; ++j) {
                    // (3)
                    CHECK(W(cat({gplus(2 * i - 1, 2 * j), ek(k)})) == W(cat({gplus(2 * j + 1, 2 * i), ek(k)})));
                    CHECK(W(cat({gminus(2 * i - 1, 2 * j), ek(k)})) == W(cat({gminus(2 * j + 1, 2 * i), ek(k)})));
                    // (6)
                    CHECK(W(cat({ek(k), gplus(2 * j, 2 * i - 1)})) == W(cat({ek(k), gplus(2 * i, 2 * j + 1)})));
                    CHECK(W(cat({ek(k), gminus(2 * j, 2 * i - 1)})) == W(cat({ek(k), gminus(2 * i, 2 * j + 1)})));
                }
            for (int l = 1; l < k; ++l) {
                // (4)
                CHECK(W(cat({ek(k), gplus(2 * l, 1)})) == W(cat({ek(k), gplus(2, 2 * l + 1)})));
                CHECK(W(cat({ek(k), gminus(2 * l, 1)})) == W(cat({ek(k), gminus(2, 2 * l + 1)})));
            }
            for (int j = 1; j < k; ++j) {
                // (5)
                CHECK(W(cat({ek(k), {Gen::g(2 * j), Gen::g(2 * j - 1)}})) ==
                      W(cat({ek(k), {Gen::g(2 * j), Gen::g(2 * j + 1)}})));
                CHECK(W(cat({ek(k), {Gen::ginv(2 * j), Gen::ginv(2 * j - 1)}})) ==
                      W(cat({ek(k), {Gen::ginv(2 * j), Gen::ginv(2 * j + 1)}})));
                // (7), vacuous unless e_(k+1) exists
                if (k + 1 <= n / 2)
                    CHECK(W(cat({ek(k), gminus(2 * k, 2 * j - 1), gplus(2 * k + 1, 2 * j), ek(j)})) ==
                          A.e_k(k + 1).scaled(s.x.pow(j - 1)));
            }
            // (8)
            for (int j = 1; j <= k; ++j)
                if (2 * j < n)
                    CHECK(W(cat({ek(k), {Gen::g(2 * j)}, ek(j)})) == A.e_k(k).scaled(s.y * s.x.pow(j - 1)));
            // (10)
            if (k >= 1 && k + 1 <= n / 2)
                CHECK(W(cat({ek(k), gminus(2 * k, 1), gplus(2 * k + 1, 2), {Gen::e()}})) == A.e_k(k + 1));
        }
    }
}

TEST_CASE("e_(k) H_n e_(j) lies in the span of e_(k) times the window modulo higher levels") {
    for (int n = 3; n <= 5; ++n) {
        QBrAlgebra A(AlgebraSpec::generic(n));
        for (int k = 1; k <= n / 2; ++k)
            for (int j = 1; j <= k; ++j) {
                // Span of level-k parts of e_(k) g_pi, pi in S_{2j+1,n}.
                Matrix span;
                std::vector<size_t> cols;
                for (size_t b = A.level_offset(k); b < A.level_offset(k) + A.level_size(k); ++b) cols.push_back(b);
                auto row = [&](const QBrElem& x) {
                    Vec r;
                    for (size_t b : cols) r.push_back(x.coeff(b, A.field()));
                    return r;
                };
                for (const Perm& pi : window_perms(n, j)) {
                    Word w{};
                    for (int i : pi.reduced_word()) w.push_back(Gen::g(i));
                    span.push_back(row(A.from_word(cat({QBrAlgebra::e_k_word(k), w}))));
                }
                size_t base = rank(span);
                for (const Perm& w : window_perms(n, 0)) {
                    Word ww;
                    for (int i : w.reduced_word()) ww.push_back(Gen::g(i));
                    Matrix ext = span;
                    ext.push_back(row(A.from_word(cat({QBrAlgebra::e_k_word(k), ww, QBrAlgebra::e_k_word(j)}))));
                    CHECK(rank(ext) == base);
                }
            }
    }
}

TEST_CASE("e_(k) commutes with the window Hecke algebra") {
    for (int n = 2; n <= 5; ++n) {
        QBrAlgebra A(AlgebraSpec::generic(n));
        for (int k = 0; k <= n / 2; ++k)
            for (const Perm& w : window_perms(n, k)) {
                Word g;
                for (int i : w.reduced_word()) g.push_back(Gen::g(i));
                CHECK(A.from_word(cat({QBrAlgebra::e_k_word(k), g})) ==
                      A.from_word(cat({g, QBrAlgebra::e_k_word(k)})));
            }
    }
}

TEST_CASE("involution") {
    QBrAlgebra A(AlgebraSpec::generic(4));
    CHECK(A.star(A.from_word({Gen::e(), Gen::g(2)})) == A.from_word({Gen::g(2), Gen::e()}));
    std::mt19937 rng(11);
    for (int i = 0; i < 30; ++i) {
        QBrElem x = random_elem(A, rng), y = random_elem(A, rng);
        CHECK(A.star(A.star(x)) == x);
        CHECK(A.star(A.mul(x, y)) == A.mul(A.star(y), A.star(x)));
    }
    // star on basis words: the canonical word read backwards.
    for (size_t b = 0; b < A.dim(); ++b) {
        Word w = A.canonical_word(b);
        std::reverse(w.begin(), w.end());
        CHECK(A.from_word(w) == A.star(A.basis(b)));
    }
}

TEST_CASE("associativity") {
    QBrAlgebra A3(AlgebraSpec::generic(3));
    StructureTable T(A3);
    T.build();
    for (size_t a = 0; a < A3.dim(); ++a)
        for (size_t b = 0; b < A3.dim(); ++b)
            for (size_t c = 0; c < A3.dim(); ++c)
                CHECK(T.mul(T.at(a, b), A3.basis(c)) == T.mul(A3.basis(a), T.at(b, c)));
    QBrAlgebra A4(AlgebraSpec::generic(4));
    std::mt19937 rng(7);
    std::uniform_int_distribution<size_t> pick(0, A4.dim() - 1);
    for (int i = 0; i < 40; ++i) {
        QBrElem x = A4.basis(pick(rng)), y = A4.basis(pick(rng)), z = A4.basis(pick(rng));
        CHECK(A4.mul(A4.mul(x, y), z) == A4.mul(x, A4.mul(y, z)));
    }
}

TEST_CASE("two-sided ideals J_n(k)") {
    QBrAlgebra A(AlgebraSpec::generic(4));
    std::vector<Gen> gens{Gen::e(), Gen::g(1), Gen::g(2), Gen::g(3)};
    for (size_t b = 0; b < A.dim(); ++b) {
        int k = A.index(b).k;
        for (const Gen& g : gens) {
            for (const QBrElem& x : {A.mul_gen(A.basis(b), g), A.mul(A.gen(g), A.basis(b))})
                for (const auto& [c, coef] : x.terms()) CHECK(A.index(c).k >= k);
        }
    }
}

TEST_CASE("q = 1 N-version reproduces the Brauer algebra") {
    for (int n = 2; n <= 4; ++n) {
        Field F = Field::generic();
        long N = 3;
        QBrAlgebra A(AlgebraSpec::n_version(n, N, FieldElem::one(F)));
        FieldElem x = FieldElem::from_int(F, N);
        CHECK(A.spec().x == x);
        auto diag_of_word = [&](const Word& w) {
            DiagElement d{{BrauerDiagram::identity(n), FieldElem::one(F)}};
            for (const Gen& g : w) {
                BrauerDiagram gd = g.kind == Gen::E ? e_k_diagram(n, 1) : BrauerDiagram::from_perm(Perm::s(n, g.i));
                d = diag_product(d, {{gd, FieldElem::one(F)}}, x);
            }
            return d;
        };
        std::vector<DiagElement> img;
        std::set<BrauerDiagram> seen;
        for (size_t b = 0; b < A.dim(); ++b) {
            img.push_back(diag_of_word(A.canonical_word(b)));
            REQUIRE(img.back().size() == 1);
            CHECK(img.back().begin()->second.is_one());
            seen.insert(img.back().begin()->first);
        }
        CHECK(seen.size() == A.dim());
        StructureTable T(A);
        T.build();
        for (size_t a = 0; a < A.dim(); ++a)
            for (size_t b = 0; b < A.dim(); ++b) {
                DiagElement expect = diag_product(img[a], img[b], x), got;
                for (const auto& [c, coef] : T.at(a, b).terms()) {
                    const auto& [d, one] = *img[c].begin();
                    got[d] += coef;
                }
                for (auto it = got.begin(); it != got.end();) it = it->second.is_zero() ? got.erase(it) : std::next(it);
                CHECK(got == expect);
            }
    }
}

TEST_CASE("structure table and cache") {
    QBrAlgebra A(AlgebraSpec::generic(2));
    StructureTable T(A);
    auto dir = std::filesystem::temp_directory_path() / "qbr-test-cache";
    std::filesystem::remove_all(dir);
    CHECK_FALSE(T.load_or_build(dir.string()));
    size_t e = A.level_offset(1);
    CHECK(T.at(e, e) == A.e_k(1).scaled(A.spec().x));
    // The g1 row agrees with Hecke rewriting.
    Hecke H(2, 0, A.spec().Q);
    Vec g1g1 = H.mul_gen(H.basis(1), 1);
    CHECK(T.at(1, 1).coeff(0, A.field()) == g1g1[0]);
    CHECK(T.at(1, 1).coeff(1, A.field()) == g1g1[1]);
    StructureTable T2(A);
    CHECK(T2.load_or_build(dir.string()));
    for (size_t a = 0; a < A.dim(); ++a)
        for (size_t b = 0; b < A.dim(); ++b) CHECK(T2.at(a, b) == T.at(a, b));
    // A different parameter set must not accept this file.
    QBrAlgebra B(AlgebraSpec::generic(2, Version::OneParam));
    StructureTable T3(B);
    std::ifstream in(T.cache_file(dir.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK_THROWS_AS(T3.deserialize(buf.str()), CacheVersionMismatch);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cellular basis") {
    long expect[] = {0, 0, 3, 15, 105, 945};
    for (int n = 2; n <= 5; ++n) {
        QBrAlgebra A(AlgebraSpec::generic(n));
        CHECK(A.cellular_basis().size() == (size_t)expect[n]);
    }
    QBrAlgebra A(AlgebraSpec::generic(3));
    const auto& cb = A.cellular_basis();
    CHECK(cb.front().label.k == 1);
    size_t k0 = 0;
    for (const auto& c : cb) k0 += c.label.k == 0;
    CHECK(k0 == 6);
    std::mt19937 rng(5);
    QBrAlgebra A4(AlgebraSpec::generic(4));
    for (int i = 0; i < 10; ++i) {
        QBrElem x = random_elem(A4, rng, 6);
        CHECK(A4.from_cellular(A4.to_cellular(x)) == x);
    }
    // star(x_{(s,u)(t,v)}) = x_{(t,v)(s,u)}
    for (size_t c = 0; c < A4.cellular_basis().size(); ++c) {
        const auto& ci = A4.cellular_basis()[c];
        size_t swapped = A4.cellular_position(ci.label, ci.t, ci.v, ci.s, ci.u);
        CHECK(A4.star(A4.cellular_element(c)) == A4.cellular_element(swapped));
    }
}

TEST_CASE("step budget") {
    QBrAlgebra A(AlgebraSpec::generic(4));
    A.set_budget(5);
    CHECK_THROWS_AS(A.mul(A.basis(A.dim() - 1), A.basis(A.dim() - 1)), RewriteBudgetExceeded);
}
