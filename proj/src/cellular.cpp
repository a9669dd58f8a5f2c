#include "qbr/cellular.hpp"

#include <algorithm>

#include "qbr/errors.hpp"

namespace qbr {

CellModules::CellModules(const QBrAlgebra& A, const StructureTable* table) : A_(A), table_(table) {}

QBrElem CellModules::mul(const QBrElem& x, const QBrElem& y) const {
    return table_ ? table_->mul(x, y) : A_.mul(x, y);
}

std::vector<CellBasisEntry> CellModules::cell_basis(const CellLabel& label) const {
    if (label.k < 0 || label.k > A_.max_k() || size_of(label.lam) != A_.n() - 2 * label.k)
        throw RangeError("label " + label.str() + " is not in Lambda_" + std::to_string(A_.n()));
    const Hecke& H = A_.hecke(label.k);
    const auto& parts = H.partitions();
    size_t li = std::find(parts.begin(), parts.end(), label.lam) - parts.begin();
    std::vector<CellBasisEntry> out;
    for (size_t t = 0; t < H.tableaux(li).size(); ++t)
        for (size_t v = 0; v < A_.B(label.k).size(); ++v) out.push_back({t, v});
    return out;
}

const std::vector<QBrElem>& CellModules::reps(const CellLabel& label) const {
    auto key = std::make_pair(label.k, label.lam);
    auto it = reps_.find(key);
    if (it != reps_.end()) return it->second;
    std::vector<QBrElem> r;
    for (const auto& [t, v] : cell_basis(label))
        r.push_back(A_.cellular_element(A_.cellular_position(label, 0, 0, t, v)));
    return reps_.emplace(key, std::move(r)).first->second;
}

QBrElem CellModules::representative(const CellLabel& label, size_t t, size_t v) const {
    return reps(label)[t * A_.B(label.k).size() + v];
}

std::string CellModules::representative_str(const CellLabel& label, size_t t, size_t v) const {
    const Hecke& H = A_.hecke(label.k);
    const auto& parts = H.partitions();
    size_t li = std::find(parts.begin(), parts.end(), label.lam) - parts.begin();
    std::string s = "m" + label.str();
    Perm d = d_of(H.tableaux(li)[t], A_.n());
    if (!d.is_identity()) s += " g(" + d.word_str() + ")";
    const Perm& pv = A_.B(label.k)[v];
    if (!pv.is_identity()) s += " g(" + pv.word_str() + ")";
    return s;
}

Vec CellModules::row_coords(const CellLabel& label, const QBrElem& y) const {
    const auto& cb = A_.cellular_basis();
    std::vector<FieldElem> c = A_.to_cellular(y);
    size_t nb = A_.B(label.k).size();
    size_t dim = cell_basis(label).size();
    Vec out(dim, FieldElem::zero(A_.field()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        const CellularIndex& ci = cb[i];
        if (ci.label == label && ci.s == 0 && ci.u == 0) {
            out[ci.t * nb + ci.v] = c[i];
        } else if (!strictly_dominates(ci.label, label)) {
            throw InternalInconsistency("product leaves the cell filtration at " + label.str());
        }
    }
    return out;
}

Vec CellModules::cell_action(const CellLabel& label, const Vec& x, const Gen& g) const {
    const auto& r = reps(label);
    if (x.size() != r.size()) throw SizeMismatch("cell vector has the wrong length for " + label.str());
    QBrElem y;
    for (size_t i = 0; i < x.size(); ++i) y.add(r[i], x[i]);
    return row_coords(label, A_.mul_gen(y, g));
}

Matrix CellModules::gram(const CellLabel& label) const {
    const auto& r = reps(label);
    size_t d = r.size();
    Matrix g(d, Vec(d, FieldElem::zero(A_.field())));
    std::vector<QBrElem> stars;
    for (const auto& x : r) stars.push_back(A_.star(x));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Vec c = row_coords(label, mul(r[i], stars[j]));
            // Only x_{(t^lambda,1)(t^lambda,1)} may survive on the defining row.
            for (size_t m = 1; m < c.size(); ++m)
                if (!c[m].is_zero()) throw InternalInconsistency("cell form product is not a multiple of m_lambda");
            g[i][j] = c[0];
        }
    return g;
}

RadicalRank CellModules::radical_rank(const CellLabel& label) const {
    Matrix g = gram(label);
    RadicalRank rr;
    rr.dim_C = g.size();
    rr.rank = rank(g);
    rr.dim_rad = rr.dim_C - rr.rank;
    return rr;
}

FieldElem gram_det(const Matrix& g, const Field& F) { return determinant(g, F); }

std::vector<CellLabel> classify_simples(const AlgebraSpec& spec) {
    std::optional<int> e = quantum_char(spec.Q);
    std::vector<CellLabel> out;
    for (const auto& lab : cell_labels(spec.n))
        if (is_restricted(lab.lam, e)) out.push_back(lab);
    return out;
}

FieldElem closed_form_n3_factor(const AlgebraSpec& s) {
    const Field& F = s.field;
    FieldElem one = FieldElem::one(F), three = FieldElem::from_int(F, 3);
    const FieldElem &q = s.q, &r = s.r;
    switch (s.version) {
        case Version::TwoParam: {
            FieldElem q2 = q * q, r2 = r * r;
            FieldElem num = three * q.pow(5) * (r2 - q2).pow(2) * (q2 * q2 * r2 - one);
            return num / (r.pow(3) * (q2 - one).pow(3));
        }
        case Version::OneParam:
            return three * q * (r - q).pow(2) * (q * q * r - one) / (q - one).pow(3);
        case Version::NVersion: {
            FieldElem brN = s.x;
            return three * q.pow(4) * (q.pow(s.N) - q * brN) * (brN + q.pow(s.N + 1) + q.pow(s.N + 3));
        }
    }
    return one;
}

std::optional<bool> closed_form_semisimple(const AlgebraSpec& s) {
    if (s.n != 2 && s.n != 3) return std::nullopt;
    // The N-version and two-parameter criteria are read with e(q^2), the
    // one-parameter criterion with e(q); in every case this is e(Q).
    std::optional<int> e = quantum_char(s.Q);
    bool hecke_ok = !e || *e > s.n;
    if (s.n == 2) return hecke_ok;
    return hecke_ok && !closed_form_n3_factor(s).is_zero();
}

SemisimpleResult is_semisimple(const CellModules& C, bool allow_large) {
    const QBrAlgebra& A = C.algebra();
    if (A.n() > 4 && !allow_large)
        throw ConfigError("semisimplicity checks above n = 4 need an explicit override");
    SemisimpleResult res;
    for (const auto& lab : cell_labels(A.n())) {
        Matrix g = C.gram(lab);
        if (gram_det(g, A.field()).is_zero()) {
            res.semisimple = false;
            res.witness = lab;
            break;
        }
    }
    res.closed_form = closed_form_semisimple(A.spec());
    if (res.closed_form) res.closed_form_agrees = *res.closed_form == res.semisimple;
    return res;
}

}  // namespace qbr
