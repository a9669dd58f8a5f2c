// Acceptance runner: evaluates each acceptance criterion once and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "qbr/cellular.hpp"
#include "qbr/errors.hpp"
#include "qbr/suites.hpp"

using namespace qbr;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

using Criterion = std::function<Verdict()>;

CellLabel label(int k, Partition lam) { return {k, std::move(lam)}; }

std::optional<AlgebraSpec> try_spec(const std::function<AlgebraSpec()>& make) {
    try {
        return make();
    } catch (const ConfigError&) {
        return std::nullopt;
    }
}

Verdict dimensions() {
    Verdict v;
    long expect[] = {0, 0, 3, 15, 105, 945};
    std::ostringstream d;
    for (int n = 2; n <= 5; ++n) {
        QBrAlgebra A(AlgebraSpec::generic(n));
        bool ok = (long)A.dim() == expect[n] && (long)A.cellular_basis().size() == expect[n];
        v.ok = v.ok && ok;
        d << (n > 2 ? ", " : "") << A.dim() << "/" << A.cellular_basis().size();
    }
    v.detail = "normal/cellular counts " + d.str();
    return v;
}

Verdict b15() {
    // s_{j,i} = s_j s_{j-1} ... s_i, and s_{j,i} with i > j climbs instead.
    std::vector<std::vector<int>> words{{},        {2},          {2, 3},    {2, 1},          {2, 1, 3},
                                        {2, 1, 3, 2}, {2, 3, 4}, {2, 1, 3, 4}, {2, 1, 3, 2, 4}, {2, 1, 3, 2, 4, 3}};
    std::set<std::vector<int>> expect, got;
    for (const auto& w : words) expect.insert(Perm::from_word(5, w).images());
    const auto& B = enumerate_Bkn(5, 1);
    for (const auto& w : B) got.insert(w.images());
    Verdict v{B.size() == 10 && got == expect, std::to_string(B.size()) + " elements"};
    return v;
}

Verdict example_gram() {
    QBrAlgebra A(AlgebraSpec::generic(3));
    CellModules C(A);
    Matrix g = C.gram(label(1, {1}));
    FieldElem q = FieldElem(RatFunc::q()), r = FieldElem(RatFunc::r()), one = FieldElem::one(A.field());
    FieldElem a = (r - r.inverse()) / (q - q.inverse());
    FieldElem q2 = q * q, q4 = q2 * q2;
    Matrix expect = {{a, r * q, r * q.pow(3)},
                     {r * q, q2 * a + (q2 - one) * r * q, r * q.pow(5)},
                     {r * q.pow(3), r * q.pow(5), q4 * a + (q4 - one) * r * q.pow(3)}};
    size_t match = 0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) match += g.size() == 3 && g[i][j] == expect[i][j];
    FieldElem det = gram_det(g, A.field());
    FieldElem closed = FieldElem::from_int(A.field(), 3) * q.pow(5) * (r * r - q2).pow(2) * (q4 * r * r - one) /
                        (r.pow(3) * (q2 - one).pow(3));
    Verdict v;
    v.ok = match == 9 && det == closed;
    v.detail = std::to_string(match) + "/9 entries match; determinant " + det.str();
    if (det != closed) v.detail += " differs from the expected closed form by the factor " + (closed / det).str();
    return v;
}

Verdict cyclotomic_value() {
    Field C8 = Field::cyclotomic(8);
    FieldElem z = FieldElem::generator(C8, "zeta"), i = FieldElem::generator(C8, "i");
    FieldElem q = z.pow(3);
    QBrAlgebra A(AlgebraSpec::two_param(3, q, q.inverse()));
    CellModules C(A);
    FieldElem det = gram_det(C.gram(label(1, {1})), C8);
    FieldElem six_i = FieldElem::from_int(C8, 6) * i;
    Verdict v{det == six_i, "q^2 = " + (q * q).str() + ", determinant " + det.str() + " (expected 6i = " +
                                six_i.str() + ")"};
    return v;
}

Verdict f5_tables() {
    Field F5 = Field::prime(5);
    using P = std::set<std::pair<long, long>>;
    P two_bad, one_bad;
    for (long r = 0; r < 5; ++r)
        for (long qv = 0; qv < 5; ++qv) {
            FieldElem fq = FieldElem::from_int(F5, qv), fr = FieldElem::from_int(F5, r);
            if (auto s = try_spec([&] { return AlgebraSpec::two_param(2, fq, fr); })) {
                QBrAlgebra A(*s);
                if (!is_semisimple(CellModules(A)).semisimple) two_bad.insert({r, qv});
            }
            if (auto s = try_spec([&] { return AlgebraSpec::one_param(2, fq, fr); })) {
                QBrAlgebra A(*s);
                if (!is_semisimple(CellModules(A)).semisimple) one_bad.insert({r, qv});
            }
        }
    P two_expect{{2, 2}, {2, 3}, {3, 2}, {3, 3}}, one_expect{{2, 4}, {3, 4}, {4, 4}};
    Verdict v{two_bad == two_expect && one_bad == one_expect,
              std::to_string(two_bad.size()) + " two-parameter and " + std::to_string(one_bad.size()) +
                  " one-parameter non-semisimple points"};
    return v;
}

Verdict closed_forms() {
    size_t points = 0, disagree = 0;
    std::string first;
    auto run = [&](const AlgebraSpec& s) {
        QBrAlgebra A(s);
        auto res = is_semisimple(CellModules(A));
        ++points;
        if (!res.closed_form_agrees.value_or(false)) {
            ++disagree;
            if (first.empty()) first = s.describe();
        }
    };
    for (long p : {5L, 7L}) {
        Field F = Field::prime(p);
        for (int n = 2; n <= 3; ++n)
            for (long qv = 1; qv < p; ++qv) {
                FieldElem q = FieldElem::from_int(F, qv);
                for (long rv = 1; rv < p; ++rv) {
                    FieldElem r = FieldElem::from_int(F, rv);
                    if (auto s = try_spec([&] { return AlgebraSpec::two_param(n, q, r); })) run(*s);
                    if (auto s = try_spec([&] { return AlgebraSpec::one_param(n, q, r); })) run(*s);
                }
                for (long N = -p; N <= 2 * p; ++N)
                    if (auto s = try_spec([&] { return AlgebraSpec::n_version(n, N, q); })) run(*s);
            }
    }
    Verdict v{disagree == 0, std::to_string(points) + " admissible points, " + std::to_string(disagree) + " disagreements"};
    if (!first.empty()) v.detail += "; first at " + first;
    return v;
}

Verdict brauer_oracle() {
    Verdict v;
    size_t checks = 0;
    for (int n = 2; n <= 4; ++n)
        for (long N : {-2L, 1L, 2L, 3L, 5L}) {
            SuiteResult r = suite_brauer_oracle(n, N);
            checks += r.checks;
            if (!r.ok) {
                v.ok = false;
                v.detail = "n = " + std::to_string(n) + ", N = " + std::to_string(N) + ": " + r.failures.front();
                return v;
            }
        }
    v.detail = std::to_string(checks) + " checks over n = 2..4, N in {-2,1,2,3,5}";
    return v;
}

Verdict property_suites() {
    Verdict v;
    size_t checks = 0;
    auto take = [&](const SuiteResult& r, const std::string& where) {
        checks += r.checks;
        if (!r.ok && v.ok) {
            v.ok = false;
            v.detail = r.name + " at " + where + ": " + r.failures.front();
        }
    };
    for (int n = 2; n <= 5; ++n) {
        std::string where = "n = " + std::to_string(n);
        for (auto ver : {Version::TwoParam, Version::OneParam}) {
            QBrAlgebra A(AlgebraSpec::generic(n, ver));
            take(suite_murphy(A), where);
            if (n > 4) continue;
            take(suite_relations(A), where);
            if (ver != Version::TwoParam) continue;
            take(suite_associativity(A, 1000), where);
            take(suite_involution(A, 1000), where);
            take(suite_cellularity(A), where);
        }
    }
    if (v.ok) v.detail = std::to_string(checks) + " checks";
    return v;
}

Verdict simples() {
    Verdict v;
    auto spec = AlgebraSpec::generic(3);
    QBrAlgebra A(spec);
    CellModules C(A);
    auto labs = classify_simples(spec);
    v.ok = labs.size() == 4;
    for (const auto& lab : labs) {
        RadicalRank rr = C.radical_rank(lab);
        v.ok = v.ok && rr.rank == rr.dim_C;
    }
    size_t lowered = 0, nonrestricted = 0;
    Field F5 = Field::prime(5);
    FieldElem two = FieldElem::from_int(F5, 2);
    for (int n = 2; n <= 4; ++n) {
        auto s = AlgebraSpec::two_param(n, two, two);
        QBrAlgebra B(s);
        CellModules D(B);
        auto restricted = classify_simples(s);
        for (const auto& lab : cell_labels(n)) {
            if (std::find(restricted.begin(), restricted.end(), lab) != restricted.end()) continue;
            ++nonrestricted;
            RadicalRank rr = D.radical_rank(lab);
            if (rr.rank < rr.dim_C) ++lowered;
        }
    }
    v.ok = v.ok && nonrestricted > 0 && lowered == nonrestricted;
    v.detail = std::to_string(labs.size()) + " generic simple labels at n = 3; " + std::to_string(lowered) + "/" +
               std::to_string(nonrestricted) + " non-restricted labels drop rank over F5 with e = 2";
    return v;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, Criterion>> criteria{
        {"1 dimension reproduction", dimensions},
        {"2 B_{1,5} set equality", b15},
        {"3 Gram matrix of C(1,(1)) for n = 3", example_gram},
        {"4 cyclotomic spot value", cyclotomic_value},
        {"5 F5 semisimplicity tables", f5_tables},
        {"6 closed-form agreement over F5 and F7", closed_forms},
        {"7 Brauer oracle at q = 1", brauer_oracle},
        {"8 property suites", property_suites},
        {"9 simple-module classification", simples},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream t;
        t.setf(std::ios::fixed);
        t.precision(2);
        t << secs;
        std::cout << (v.ok ? "PASS " : "FAIL ") << name << " [" << t.str() << "s] " << v.detail << std::endl;
        failed += !v.ok;
    }
    std::cout << (9 - failed) << "/9 criteria passed" << std::endl;
    return failed ? 1 : 0;
}
