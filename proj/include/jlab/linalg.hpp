#pragma once

#include <optional>

#include "jlab/cpoly.hpp"

namespace jlab {

/// Solves a x = b by Gaussian elimination with partial pivoting. Returns
/// nullopt when a pivot falls below `pivot_tol` times the largest entry.
std::optional<Point> solve_pivoted(CMatrix a, Point b, double pivot_tol = 1e-14);

/// Determinant by the same elimination.
Complex determinant(CMatrix a);

/// Singular values (descending) of the real 2n x 2n embedding
/// [[Re A, -Im A], [Im A, Re A]]. Each singular value of A appears twice.
Eigen::VectorXd embedded_singular_values(const CMatrix& a);

}  // namespace jlab
