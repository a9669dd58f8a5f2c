#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qbr/brauerdiag.hpp"

using namespace qbr;

namespace {

// Diagram from 1-based edges; negative numbers denote bottom vertices.
BrauerDiagram from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> p(2 * n, -1);
    auto id = [n](int v) { return v > 0 ? v - 1 : n - v - 1; };
    for (auto [a, b] : edges) {
        p[id(a)] = id(b);
        p[id(b)] = id(a);
    }
    return BrauerDiagram(p);
}

}  // namespace

TEST_CASE("composition example in D_7") {
    auto d1 = from_edges(7, {{1, -3}, {2, 4}, {3, 6}, {5, -7}, {7, -5}, {-1, -2}, {-4, -6}});
    auto d2 = from_edges(7, {{1, 2}, {3, -7}, {4, 7}, {5, -1}, {6, -4}, {-2, -3}, {-5, -6}});
    auto expect = from_edges(7, {{1, -7}, {2, 4}, {3, 6}, {5, -4}, {7, -1}, {-2, -3}, {-5, -6}});
    auto [d, loops] = compose(d1, d2);
    CHECK(d == expect);
    CHECK(loops == 1);
}

TEST_CASE("e_(k) and identity") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            auto ek = e_k_diagram(n, k);
            auto [d, loops] = compose(ek, ek);
            CHECK(d == ek);
            CHECK(loops == k);
            CHECK(compose(BrauerDiagram::identity(n), ek).first == ek);
            CHECK(ek.horizontal_pairs() == k);
        }
    CHECK(e_k_diagram(4, 2) == from_edges(4, {{1, 2}, {3, 4}, {-1, -2}, {-3, -4}}));
    CHECK(e_k_diagram(3, 0) == BrauerDiagram::identity(3));
}

TEST_CASE("diagram length") {
    CHECK(diagram_length(e_k_diagram(4, 1)) == 0);
    CHECK(diagram_length(BrauerDiagram::from_perm(Perm::s(3, 1))) == 1);
    auto d = compose(e_k_diagram(3, 1), BrauerDiagram::from_perm(Perm::s(3, 2))).first;
    CHECK(diagram_length(d) == 1);
    for (const auto& w : window_perms(4, 0)) CHECK(diagram_length(BrauerDiagram::from_perm(w)) == w.length());
}

TEST_CASE("D_{k,n} enumeration") {
    CHECK(enumerate_Dkn(5, 1).size() == 10);
    CHECK(enumerate_Dkn(4, 2).size() == 3);
    CHECK(enumerate_Dkn(4, 0) == std::vector<BrauerDiagram>{BrauerDiagram::identity(4)});
    // Every diagram factors as w1 e_(k) w2 (diagram_length finds a witness).
    for (auto& d : all_diagrams(4)) CHECK(diagram_length(d) >= 0);
}

TEST_CASE("diagram counts") {
    CHECK(all_diagrams(2).size() == 3);
    CHECK(all_diagrams(3).size() == 15);
    CHECK(all_diagrams(4).size() == 105);
    CHECK(all_diagrams(5).size() == 945);
}

TEST_CASE("diagram algebra products") {
    Field F = Field::generic();
    FieldElem N = FieldElem::from_int(F, 3);
    FieldElem one = FieldElem::one(F);
    DiagElement e1{{e_k_diagram(3, 1), one}};
    CHECK(diag_product(e1, e1, N) == DiagElement{{e_k_diagram(3, 1), N}});
    auto p = [&](const Perm& w) { return DiagElement{{BrauerDiagram::from_perm(w), one}}; };
    Perm a = Perm::from_word(4, {1, 2}), b = Perm::from_word(4, {3, 2});
    CHECK(diag_product(p(a), p(b), N) == p(a * b));

    auto all = all_diagrams(5);
    std::mt19937 rng(11);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    FieldElem x(RatFunc::q());
    for (int i = 0; i < 200; ++i) {
        DiagElement d1{{all[pick(rng)], one}}, d2{{all[pick(rng)], one}}, d3{{all[pick(rng)], one}};
        CHECK(diag_product(diag_product(d1, d2, x), d3, x) == diag_product(d1, diag_product(d2, d3, x), x));
        DiagElement sum = d1;
        for (auto& [d, c] : d2) {
            auto [it, ins] = sum.emplace(d, c);
            if (!ins) it->second += c;
        }
        DiagElement lhs = diag_product(sum, d3, x), rhs = diag_product(d1, d3, x);
        for (auto& [d, c] : diag_product(d2, d3, x)) {
            auto [it, ins] = rhs.emplace(d, c);
            if (!ins) it->second += c;
        }
        CHECK(lhs == rhs);
    }
}
