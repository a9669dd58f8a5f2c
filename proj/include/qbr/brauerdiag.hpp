/**
 * @file brauerdiag.hpp
 * @brief Brauer diagrams D_n(x): concatenation with loop count, the e_(k)
 * diagram, diagram length and the D_{k,n} transversal.
 */
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbr/coefficients.hpp"
#include "qbr/symgrp.hpp"

namespace qbr {

// Perfect matching on vertices 0..2n-1; top row 0..n-1, bottom row n..2n-1.
class BrauerDiagram {
public:
    BrauerDiagram() = default;
    explicit BrauerDiagram(std::vector<int> partner);
    static BrauerDiagram identity(int n);
    static BrauerDiagram from_perm(const Perm& w);
    static BrauerDiagram e_k(int n, int k);

    int n() const { return (int)partner_.size() / 2; }
    int partner(int v) const { return partner_[v]; }
    const std::vector<int>& partners() const { return partner_; }
    int horizontal_pairs() const;  // per row
    bool operator==(const BrauerDiagram& o) const { return partner_ == o.partner_; }
    bool operator<(const BrauerDiagram& o) const { return partner_ < o.partner_; }

    // Edge list with 1-based labels, e.g. "{t1-t2, b1-b2, t3-b3}".
    std::string str() const;

private:
    std::vector<int> partner_;
};

// d1 on top of d2; second component is the number of closed loops.
std::pair<BrauerDiagram, int> compose(const BrauerDiagram& d1, const BrauerDiagram& d2);

BrauerDiagram e_k_diagram(int n, int k);
// min l(w1) + l(w2) over w1 e_(k) w2 = d, by exhaustive search.
int diagram_length(const BrauerDiagram& d);
// Diagrams with e_(k)'s top row and non-crossing through strands.
std::vector<BrauerDiagram> enumerate_Dkn(int n, int k);
// All (2n-1)!! Brauer diagrams, sorted.
std::vector<BrauerDiagram> all_diagrams(int n);

// Linear combination of diagrams.
using DiagElement = std::map<BrauerDiagram, FieldElem>;

DiagElement diag_product(const DiagElement& a, const DiagElement& b, const FieldElem& x);

}  // namespace qbr
