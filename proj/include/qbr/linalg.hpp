/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over FieldElem.
 */
#pragma once

#include <optional>
#include <vector>

#include "qbr/coefficients.hpp"

namespace qbr {

using Vec = std::vector<FieldElem>;
using Matrix = std::vector<Vec>;

Matrix identity_matrix(const Field& F, size_t n);
Matrix transpose(const Matrix& m);
bool is_symmetric(const Matrix& m);

// Fraction-free (Bareiss) determinant.
FieldElem determinant(const Matrix& m, const Field& F);
// Rank by Gaussian elimination over the field.
size_t rank(const Matrix& m);
// Inverse, or nullopt when singular. Pivots equal to +-1 are preferred so
// unitriangular-like matrices invert without introducing fractions.
std::optional<Matrix> inverse(const Matrix& m, const Field& F);

// Row vector times matrix.
Vec row_times(const Vec& v, const Matrix& m, const Field& F);

}  // namespace qbr
