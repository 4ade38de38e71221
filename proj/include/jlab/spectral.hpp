#pragma once

#include <string_view>
#include <vector>

#include "jlab/cpoly.hpp"
#include "jlab/jouanolou.hpp"
#include "jlab/solver.hpp"

namespace jlab {

/// Coefficients sigma_1..sigma_n of lambda^n + sum sigma_i lambda^{n-i}.
using CharCoeffs = std::vector<Complex>;

enum class Classification { degenerate, nondegenerate_only, hyperbolic, inconclusive };

std::string_view to_string(Classification c);
Classification classification_from_string(std::string_view s);

/// Truncated type-delta record: the smallest |lambda_j - <m, lambda>| * |m|^delta
/// over 2 <= |m| <= max_order and its witness. Only a finite-order certificate.
struct DivisorRecord {
    double delta = 1.0;
    int max_order = 2;
    double c_min = 0.0;
    int worst_j = 0;  // 1-based
    MultiIndex worst_m;
    bool resonant = false;  // c_min < 1e-10
};

struct SpectrumReport {
    int m = 0;
    CharCoeffs sigma;
    std::vector<Complex> eigenvalues;
    Classification classification = Classification::inconclusive;
    DivisorRecord divisor;
    bool near_diagonal = false;  // two eigenvalues closer than 1e-6 (1 + max |lambda|)
    /// hyperbolic and not resonant at (delta, max_order); a truncated check.
    bool linearizable() const;
};

/// det(lambda I - DF(p)) by the Faddeev-LeVerrier trace recursion.
CharCoeffs char_poly_direct(const PolyVectorField& f, const Point& p);

/// Same coefficients for a member of the family from the product structure
/// of its Jacobian. Two algebraic routes are evaluated (polynomial expansion
/// and the binomial sum); StructuralError if they differ by more than 1e-10.
CharCoeffs char_poly_closed(int n, int d, const Point& p);

/// Expansion route only.
CharCoeffs char_poly_closed_expanded(int n, int d, const Point& p);
/// Binomial-sum route only.
CharCoeffs char_poly_closed_sum(int n, int d, const Point& p);

/// sigma from the roots: sigma_i = (-1)^i e_i(roots).
CharCoeffs coeffs_from_roots(const std::vector<Complex>& roots);

/// Roots of lambda^n + sum sigma_i lambda^{n-i} by Aberth-Ehrlich with Newton
/// polishing. Throws NumericalError if the relative residual stays above 1e-10.
std::vector<Complex> eigenvalues(const CharCoeffs& sigma);

/// Smallest pairwise eigenvalue gap.
double min_root_gap(const std::vector<Complex>& roots);

Classification classify(const std::vector<Complex>& lambda, const RunConfig& cfg);

DivisorRecord small_divisor_scan(const std::vector<Complex>& lambda, double delta, int max_order);

/// |lambda_j - <m, lambda>| * |m|^delta for a single candidate (j is 1-based).
double divisor_value(const std::vector<Complex>& lambda, int j, const MultiIndex& m, double delta);

SpectrumReport spectrum_at(const PolyVectorField& f, const SingularPoint& p, const RunConfig& cfg);

}  // namespace jlab
