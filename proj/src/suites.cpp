#include "qbr/suites.hpp"

#include <random>
#include <set>

#include "qbr/brauerdiag.hpp"

namespace qbr {

void SuiteResult::check(bool cond, const std::string& what) {
    ++checks;
    if (cond) return;
    ok = false;
    if (failures.size() < kMaxFailures) failures.push_back(what);
}

namespace {

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

std::vector<Gen> generators(int n) {
    std::vector<Gen> gs;
    for (int i = 1; i < n; ++i) gs.push_back(Gen::g(i));
    gs.push_back(Gen::e());
    return gs;
}

}  // namespace

SuiteResult suite_dimension(const QBrAlgebra& A) {
    SuiteResult r;
    r.name = "dimension";
    size_t expect = (size_t)double_factorial_odd(A.n());
    r.check(A.dim() == expect, "normal basis has " + std::to_string(A.dim()) + " elements");
    r.check(A.cellular_basis().size() == expect,
            "cellular basis has " + std::to_string(A.cellular_basis().size()) + " elements");
    size_t sum = 0;
    for (int k = 0; k <= A.max_k(); ++k) {
        size_t b = A.B(k).size();
        r.check(b == (size_t)bkn_count(A.n(), k), "|B_{" + std::to_string(k) + "," + std::to_string(A.n()) + "}|");
        sum += A.level_size(k);
    }
    r.check(sum == expect, "level sizes add up");
    r.detail = "rank " + std::to_string(A.dim());
    return r;
}

SuiteResult suite_relations(const QBrAlgebra& A) {
    SuiteResult r;
    r.name = "relations";
    auto cert = A.certify();
    r.checks += cert.checks;
    for (const auto& f : cert.failures) {
        r.ok = false;
        if (r.failures.size() < SuiteResult::kMaxFailures) r.failures.push_back(f);
    }

    const auto& s = A.spec();
    int n = A.n();
    auto W = [&](const Word& w) { return A.from_word(w); };
    auto ek = [](int k) { return QBrAlgebra::e_k_word(k); };
    auto eq = [&](const Word& a, const Word& b, const std::string& tag) {
        r.check(W(a) == W(b), tag + ": " + word_str(a) + " = " + word_str(b));
    };
    auto eqs = [&](const Word& a, int k, const FieldElem& c, const std::string& tag) {
        r.check(W(a) == A.e_k(k).scaled(c), tag + ": " + word_str(a) + " = (" + c.str() + ") e_(" + std::to_string(k) + ")");
    };
    for (int k = 0; k <= n / 2; ++k) {
        std::string K = " k=" + std::to_string(k);
        for (int j = 0; j < k; ++j) {
            Word g{Gen::g(2 * j + 1)}, gi{Gen::ginv(2 * j + 1)};
            eqs(cat({g, ek(k)}), k, s.Q, "odd g absorption" + K);
            eqs(cat({ek(k), g}), k, s.Q, "odd g absorption" + K);
            eqs(cat({gi, ek(k)}), k, s.Q.inverse(), "odd g absorption" + K);
            eqs(cat({ek(k), gi}), k, s.Q.inverse(), "odd g absorption" + K);
        }
        for (int j = 0; j <= k; ++j) {
            eqs(cat({ek(j), ek(k)}), k, s.x.pow(j), "e_(j) e_(k)" + K);
            eqs(cat({ek(k), ek(j)}), k, s.x.pow(j), "e_(j) e_(k)" + K);
        }
        for (int i = 1; i <= k; ++i)
            for (int j = i; j < k; ++j) {
                eq(cat({gplus(2 * i - 1, 2 * j), ek(k)}), cat({gplus(2 * j + 1, 2 * i), ek(k)}), "left slide" + K);
                eq(cat({gminus(2 * i - 1, 2 * j), ek(k)}), cat({gminus(2 * j + 1, 2 * i), ek(k)}), "left slide" + K);
                eq(cat({ek(k), gplus(2 * j, 2 * i - 1)}), cat({ek(k), gplus(2 * i, 2 * j + 1)}), "right slide" + K);
                eq(cat({ek(k), gminus(2 * j, 2 * i - 1)}), cat({ek(k), gminus(2 * i, 2 * j + 1)}), "right slide" + K);
            }
        for (int l = 1; l < k; ++l) {
            eq(cat({ek(k), gplus(2 * l, 1)}), cat({ek(k), gplus(2, 2 * l + 1)}), "fold to 1" + K);
            eq(cat({ek(k), gminus(2 * l, 1)}), cat({ek(k), gminus(2, 2 * l + 1)}), "fold to 1" + K);
        }
        for (int j = 1; j < k; ++j) {
            eq(cat({ek(k), {Gen::g(2 * j), Gen::g(2 * j - 1)}}), cat({ek(k), {Gen::g(2 * j), Gen::g(2 * j + 1)}}),
               "braid fold" + K);
            eq(cat({ek(k), {Gen::ginv(2 * j), Gen::ginv(2 * j - 1)}}),
               cat({ek(k), {Gen::ginv(2 * j), Gen::ginv(2 * j + 1)}}), "braid fold" + K);
            if (k + 1 <= n / 2)
                eqs(cat({ek(k), gminus(2 * k, 2 * j - 1), gplus(2 * k + 1, 2 * j), ek(j)}), k + 1, s.x.pow(j - 1),
                    "level raise" + K);
        }
        for (int j = 1; j <= k; ++j)
            if (2 * j < n) eqs(cat({ek(k), {Gen::g(2 * j)}, ek(j)}), k, s.y * s.x.pow(j - 1), "g_2j loop" + K);
        if (k >= 1 && k + 1 <= n / 2)
            eqs(cat({ek(k), gminus(2 * k, 1), gplus(2 * k + 1, 2), {Gen::e()}}), k + 1,
                FieldElem::one(A.field()), "e_(k+1) recursion" + K);
    }
    return r;
}

SuiteResult suite_associativity(const QBrAlgebra& A, size_t samples, unsigned seed) {
    SuiteResult r;
    r.name = "associativity";
    size_t d = A.dim();
    auto triple = [&](size_t a, size_t b, size_t c) {
        return A.index_str(a) + " * " + A.index_str(b) + " * " + A.index_str(c);
    };
    if (A.n() <= 3) {
        StructureTable T(A);
        T.build();
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b)
                for (size_t c = 0; c < d; ++c)
                    r.check(T.mul(T.at(a, b), A.basis(c)) == T.mul(A.basis(a), T.at(b, c)), triple(a, b, c));
        r.detail = "exhaustive over " + std::to_string(d * d * d) + " triples";
        return r;
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, d - 1);
    for (size_t i = 0; i < samples; ++i) {
        size_t a = pick(rng), b = pick(rng), c = pick(rng);
        QBrElem x = A.basis(a), y = A.basis(b), z = A.basis(c);
        r.check(A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z)), triple(a, b, c));
    }
    r.detail = std::to_string(samples) + " random triples";
    return r;
}

SuiteResult suite_involution(const QBrAlgebra& A, size_t samples, unsigned seed) {
    SuiteResult r;
    r.name = "involution";
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, A.dim() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto rnd = [&] {
        QBrElem x;
        for (int i = 0; i < 3; ++i) x.add(pick(rng), FieldElem::from_int(A.field(), coef(rng)));
        return x;
    };
    for (size_t i = 0; i < samples; ++i) {
        QBrElem x = rnd(), y = rnd();
        r.check(A.star(A.star(x)) == x, "star(star x) for x = " + A.elem_str(x));
        r.check(A.star(A.mul(x, y)) == A.mul(A.star(y), A.star(x)),
                "star(xy) for x = " + A.elem_str(x) + ", y = " + A.elem_str(y));
    }
    r.detail = std::to_string(samples) + " random pairs";
    return r;
}

SuiteResult suite_cellularity(const QBrAlgebra& A) {
    SuiteResult r;
    r.name = "cellularity";
    const auto& cb = A.cellular_basis();
    for (size_t c = 0; c < cb.size(); ++c) {
        QBrElem x = A.cellular_element(c);
        for (const Gen& h : generators(A.n())) {
            auto coords = A.to_cellular(A.mul_gen(x, h));
            bool good = true;
            for (size_t d = 0; d < coords.size() && good; ++d) {
                if (coords[d].is_zero()) continue;
                const auto &a = cb[c], &b = cb[d];
                bool same_row = b.label == a.label && b.s == a.s && b.u == a.u;
                good = same_row || strictly_dominates(b.label, a.label);
            }
            r.check(good, "cellular element " + std::to_string(c) + " (label " + cb[c].label.str() + ") times " +
                              h.str());
        }
    }
    return r;
}

SuiteResult suite_murphy(const QBrAlgebra& A) {
    SuiteResult r;
    r.name = "murphy";
    for (int k = 0; k <= A.max_k(); ++k) {
        const Hecke& H = A.hecke(k);
        std::string tag = "window k=" + std::to_string(k);
        r.check(H.murphy_inverse().has_value(), tag + ": Murphy transition matrix is singular");
        if (!H.murphy_inverse()) continue;
        for (size_t w = 0; w < H.size(); ++w) {
            Vec b = H.basis(w);
            r.check(H.from_murphy(H.to_murphy(b)) == b, tag + ": round trip at basis element " + std::to_string(w));
        }
    }
    return r;
}

SuiteResult suite_brauer_oracle(int n, long N) {
    SuiteResult r;
    r.name = "brauer-oracle";
    Field F = Field::generic();
    QBrAlgebra A(AlgebraSpec::n_version(n, N, FieldElem::one(F)));
    FieldElem x = FieldElem::from_int(F, N);
    r.check(A.spec().x == x, "loop value is " + A.spec().x.str());
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
        bool single = img.back().size() == 1 && img.back().begin()->second.is_one();
        r.check(single, "basis element " + A.index_str(b) + " is not a single diagram");
        if (!single) return r;
        seen.insert(img.back().begin()->first);
    }
    r.check(seen.size() == A.dim(), "basis images are not distinct diagrams");
    StructureTable T(A);
    T.build();
    for (size_t a = 0; a < A.dim(); ++a)
        for (size_t b = 0; b < A.dim(); ++b) {
            DiagElement expect = diag_product(img[a], img[b], x), got;
            for (const auto& [c, coef] : T.at(a, b).terms()) got[img[c].begin()->first] += coef;
            for (auto it = got.begin(); it != got.end();) it = it->second.is_zero() ? got.erase(it) : std::next(it);
            r.check(got == expect, A.index_str(a) + " * " + A.index_str(b));
        }
    r.detail = "D_" + std::to_string(n) + "(" + std::to_string(N) + "), " + std::to_string(A.dim() * A.dim()) + " products";
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"dimension",   "relations",   "associativity", "involution",
                                                "cellularity", "murphy",      "brauer-oracle"};
    return names;
}

}  // namespace qbr
