#pragma once

#include <cstdint>
#include <vector>

#include "jlab/jouanolou.hpp"

namespace jlab {

struct RunConfig {
    double newton_tol = 1e-12;
    int max_iters = 50;
    int continuation_steps = 1;
    double dedup_tol = 1e-6;
    double radius = 0.05;
    double fd_step = 1e-5;
    double tol_hyp = 1e-9;
    double tol_nd = 1e-9;
    double align_tol = 1e-8;
    double delta = 1.0;
    int max_order = 8;
    std::uint64_t seed = 20240601;
    int samples = 1000;
    int jobs = 1;

    /// Throws InputError on non-positive tolerances, radius, or max_order < 2.
    void validate() const;
};

/// Damped Newton from x0. Never throws on divergence: the best iterate is
/// returned with converged = false and a diagnostic.
SingularPoint newton_refine(const PolyVectorField& f, const Point& x0, const RunConfig& cfg);

/// Continues p_m to X_alpha along alpha * k / steps. Escalates the step count
/// x4 (up to 64) on failure and throws TrackingError if that is not enough.
SingularPoint track_point(const FoliationParams& params, std::int64_t m, const RunConfig& cfg);

/// All N zeros of X_alpha sorted by m. Throws TrackingError on a
/// non-converged index or on two tracked points closer than dedup_tol.
std::vector<SingularPoint> track_singularities(const FoliationParams& params, const RunConfig& cfg);

/// First-order expansion of p_{m,alpha} in alpha. x_1 is linearized through the
/// implicit relation x_1^{-N} + (first-order alpha terms) = 1; the other
/// coordinates follow the descending recursion from x_n = (1 + alpha_n) x_1^{-d}.
Point first_order_point(int n, int d, std::int64_t m, const std::vector<Complex>& alpha);

}  // namespace jlab
