#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jlab/cpoly.hpp"

namespace jlab {

/// Selects the member X_alpha of the perturbed Jouanolou family of degree d on C^n.
struct FoliationParams {
    int n = 2;
    int d = 1;
    std::vector<Complex> alpha;  // empty means the unperturbed field

    /// Throws InputError unless 2 <= n <= 8, 1 <= d <= 6 and alpha has size 0 or n.
    void validate() const;
    /// alpha padded to length n.
    std::vector<Complex> alpha_or_zero() const;
    double alpha_norm() const;
};

void validate_degree(int n, int d);

struct Counts {
    std::int64_t N = 0;  // singular points, 1 + d + ... + d^n
    std::int64_t M = 0;  // projective dimension of the space of degree-d foliations
    std::int64_t K = 0;  // aligned (d+1)-subsets at alpha = 0 (odd n, d >= 2)
};

Counts counts(int n, int d);

/// d^k as an exact integer.
std::int64_t ipow_int(std::int64_t base, int k);

/// Diagonal element x_i -> xi^{weights_i} x_i of the cyclic group G(n,d),
/// xi = e^{2 pi i / order}. `power` is the exponent of the fixed generator.
struct GroupElement {
    std::int64_t power = 0;
    std::int64_t order = 1;
    std::vector<std::int64_t> weights;

    bool is_identity() const;
    Point apply(const Point& x) const;
    std::vector<Complex> scales() const;
};

GroupElement group_generator(int n, int d);
GroupElement group_power(int n, int d, std::int64_t k);
GroupElement compose(const GroupElement& a, const GroupElement& b);
std::vector<GroupElement> group_elements(int n, int d);

/// Zero of X_alpha tracked from p_m.
struct SingularPoint {
    int m = 0;  // 1-based index in [1, N]
    Point coords;
    double residual = 0.0;
    bool converged = false;
    int newton_iters = 0;
    std::string diagnostic;
};

/// X_0: components x_{i+1}^d - x_i x_1^d (i < n) and 1 - x_n x_1^d.
PolyVectorField jouanolou_field(int n, int d);

/// X_alpha = X_0 + sum alpha_i d/dx_i.
PolyVectorField family_field(const FoliationParams& params);

/// Closed-form zero p_m of X_0 (1 <= m <= N).
Point closed_form_point(int n, int d, std::int64_t m);

/// All N zeros of X_0 in index order m = 1..N.
std::vector<SingularPoint> closed_form_sing(int n, int d);

struct PushforwardFactor {
    Complex c;
    std::vector<Complex> alpha_tilde;
    double residual = 0.0;
};

/// Factors g_* X_alpha = c * X_{alpha_tilde}; throws StructuralError when the
/// pushforward leaves the family (residual >= 1e-12).
PushforwardFactor pushforward_factor(const GroupElement& g, const FoliationParams& params);

/// Index (1-based) of the point in `points` nearest to x, or 0 if none within tol.
int match_index(const std::vector<SingularPoint>& points, const Point& x, double tol);

}  // namespace jlab
