#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jlab/jouanolou.hpp"
#include "jlab/solver.hpp"
#include "jlab/spectral.hpp"

namespace jlab {

/// alpha -> characteristic coefficients at the tracked zero p_{m,alpha}.
CharCoeffs phi_map(int n, int d, std::int64_t m, const std::vector<Complex>& alpha, const RunConfig& cfg);

enum class FdStencil {
    central,  // (f(h e_j) - f(-h e_j)) / 2h along the real axis
    cauchy,   // four points h i^k e_j on a circle, O(h^4)
};

struct SubmersionReport {
    int m = 0;
    CMatrix jac;  // d sigma_i / d alpha_j at alpha = 0
    Complex det;
    double expected_modulus = 0.0;  // ((n+d)/N) d^{(n^2+3n-2)/2}
    double rel_error = 0.0;
    double fd_step = 0.0;
    Eigen::VectorXd singular_values;  // complex singular values, descending
    bool rank_certified = false;      // smallest > 1e-6 * largest
};

double expected_det_modulus(int n, int d);

/// Finite-difference Jacobian of phi_map at 0 for one index m. Throws
/// VerificationError when rel_error exceeds 1e-3 (ten times the target).
SubmersionReport submersion_report(int n, int d, std::int64_t m, const RunConfig& cfg,
                                   FdStencil stencil = FdStencil::central);

/// Reports for every m in [1, N]; VerificationError if |det| varies with m by
/// more than 1e-4 relative.
std::vector<SubmersionReport> submersion_all(int n, int d, const RunConfig& cfg,
                                             FdStencil stencil = FdStencil::central);

/// A_{n,d,i} = sum_{j=0}^{i} C(n-j, n-i) d^j.
double a_coefficient(int n, int d, int i);

struct DerivativeEntry {
    int i = 0;  // 1-based row (sigma index)
    int j = 0;  // 1-based column (alpha index)
    Complex fd;
    std::optional<double> formula;  // present where the closed form is explicit (j >= i-1)
    double rel_error = 0.0;         // |fd - formula| / max(1, |formula|)
};

/// Compares the FD Jacobian at p_N = (1, ..., 1) with the explicit entries.
/// Throws VerificationError if an explicit entry misses by more than 1e-4.
std::vector<DerivativeEntry> sigma_derivative_check(int n, int d, const RunConfig& cfg);

struct AlignmentRecord {
    std::vector<int> indices;  // 1-based, ascending
    Point line_point;
    Point line_dir;  // unit vector
    double residual = 0.0;
};

/// Maximal sets of >= d+1 points lying on a common complex line.
std::vector<AlignmentRecord> alignment_census(const std::vector<SingularPoint>& points, int d,
                                              const RunConfig& cfg);

/// Indices of q_j = (rho^j, 1, rho^j, ..., rho^j), 0 <= j <= d, among the
/// closed-form zeros (odd n only).
std::vector<int> q_pattern_indices(int n, int d);

/// {((s - 1 + k) mod N) + 1}, sorted: the index image under generator^k.
std::vector<int> translate_indices(const std::vector<int>& indices, std::int64_t k, std::int64_t order);

/// Smallest k with translate_indices(pattern, k) == target.
std::optional<std::int64_t> translation_power(const std::vector<int>& pattern, const std::vector<int>& target,
                                              std::int64_t order);

struct HyperplaneSet {
    std::vector<Complex> base_normal;
    std::vector<std::int64_t> group_powers;  // one per aligned set, from the alpha = 0 census
    std::vector<std::vector<Complex>> images;
};

HyperplaneSet hyperplane_set(int n, int d, const RunConfig& cfg);

/// Whether two normals define the same hyperplane.
bool normals_proportional(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol = 1e-12);

struct DefectResult {
    std::vector<double> mu;
    std::vector<double> defect;
    double slope = 0.0;  // NaN when some defect is exactly zero
    std::vector<int> q_indices;
    std::int64_t group_power = 0;
    /// Every defect is below 1e-12: the set stays aligned along this direction
    /// (e.g. nu lies where the stabilizer of the set is a symmetry of X_{mu nu}).
    bool persistent_alignment = false;
};

/// Tracks the first three points of the aligned set g^k{q_0, ..., q_d} under
/// alpha = mu nu and fits log(defect) against log(mu). `coords` picks the two
/// coordinates of the 2x2 obstruction (default: first and last).
DefectResult defect_experiment(int n, int d, const std::vector<Complex>& nu, const std::vector<double>& mu_grid,
                               const RunConfig& cfg, std::pair<int, int> coords = {-1, -1},
                               std::int64_t group_power = 0);

struct GenericityStats {
    int samples = 0;
    int successes = 0;
    int tracking_failures = 0;
    int all_hyperbolic = 0;
    int any_resonant = 0;
    double all_hyperbolic_fraction = 0.0;
    double any_resonant_fraction = 0.0;
    double success_fraction = 0.0;
    double min_c_min = 0.0;  // over all successful samples and points
};

/// Deterministic polydisk samples: coordinates drawn sequentially from
/// mt19937_64(seed), uniform on the disk of radius cfg.radius.
std::vector<std::vector<Complex>> sample_polydisk(int n, const RunConfig& cfg);

GenericityStats genericity_sample(int n, int d, const RunConfig& cfg);

/// Spectra at all tracked zeros of X_alpha.
std::vector<SpectrumReport> spectra(const FoliationParams& params, const RunConfig& cfg);

}  // namespace jlab
