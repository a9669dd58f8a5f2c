/**
 * @file cellular.hpp
 * @brief Cell modules C(k,lambda) of the q-Brauer algebra: bases, the right
 * action, Gram matrices of the cell form, radical ranks, the simple-module
 * labels and semisimplicity decisions.
 */
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qbr/linalg.hpp"
#include "qbr/qbrauer.hpp"

namespace qbr {

// Basis vector x_(t,v) = m_lambda g_{d(t)} g_v of C(k,lambda).
struct CellBasisEntry {
    size_t t;  // position in std_tableaux(lambda, 2k)
    size_t v;  // position in B_{k,n}
};

struct RadicalRank {
    size_t dim_C = 0;
    size_t rank = 0;  // = dim D(k,lambda)
    size_t dim_rad = 0;
};

struct SemisimpleResult {
    bool semisimple = true;
    std::optional<CellLabel> witness;  // first label with a degenerate form
    std::optional<bool> closed_form;   // n in {2,3} only
    std::optional<bool> closed_form_agrees;
};

class CellModules {
public:
    // Products go through the structure table when one is supplied.
    explicit CellModules(const QBrAlgebra& A, const StructureTable* table = nullptr);

    const QBrAlgebra& algebra() const { return A_; }
    std::vector<CellBasisEntry> cell_basis(const CellLabel& label) const;
    QBrElem representative(const CellLabel& label, size_t t, size_t v) const;
    // Human-readable representative, e.g. "e*g2*g1" style words.
    std::string representative_str(const CellLabel& label, size_t t, size_t v) const;

    // Right action of a generator on coordinates over cell_basis(label).
    Vec cell_action(const CellLabel& label, const Vec& x, const Gen& g) const;
    Matrix gram(const CellLabel& label) const;
    RadicalRank radical_rank(const CellLabel& label) const;

private:
    const QBrAlgebra& A_;
    const StructureTable* table_;
    mutable std::map<std::pair<int, Partition>, std::vector<QBrElem>> reps_;

    QBrElem mul(const QBrElem& x, const QBrElem& y) const;
    const std::vector<QBrElem>& reps(const CellLabel& label) const;
    // Coordinates of y on row (t^lambda, 1) of the cell; throws if y has
    // terms outside that row at a label not strictly dominating.
    Vec row_coords(const CellLabel& label, const QBrElem& y) const;
};

FieldElem gram_det(const Matrix& g, const Field& F);

// Labels (l, mu) with mu e-restricted, e the quantum characteristic of Q.
std::vector<CellLabel> classify_simples(const AlgebraSpec& spec);

// Closed-form criteria for n in {2, 3}; nullopt for other n.
std::optional<bool> closed_form_semisimple(const AlgebraSpec& spec);
// The closed-form cell determinant for n = 3, label (1,(1)), in its published form.
FieldElem closed_form_n3_factor(const AlgebraSpec& spec);

// Checks nondegeneracy of every cell form; n > 4 requires allow_large.
SemisimpleResult is_semisimple(const CellModules& C, bool allow_large = false);

}  // namespace qbr
