#include "jlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jlab/errors.hpp"
#include "jlab/linalg.hpp"
#include "jlab/parallel.hpp"

namespace jlab {

void RunConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw InputError(std::string(name) + " must be positive");
    };
    positive(newton_tol, "newton_tol");
    positive(dedup_tol, "dedup_tol");
    positive(radius, "radius");
    positive(fd_step, "fd_step");
    positive(tol_hyp, "tol_hyp");
    positive(tol_nd, "tol_nd");
    positive(align_tol, "align_tol");
    if (delta < 0.0) throw InputError("delta must be non-negative");
    if (max_iters < 1) throw InputError("max_iters must be positive");
    if (continuation_steps < 1) throw InputError("continuation_steps must be positive");
    if (max_order < 2) throw InputError("max_order must be at least 2");
    if (samples < 0) throw InputError("samples must be non-negative");
    if (jobs < 1) throw InputError("jobs must be positive");
}

SingularPoint newton_refine(const PolyVectorField& f, const Point& x0, const RunConfig& cfg) {
    constexpr int kMaxHalvings = 20;
    SingularPoint out;
    Point x = x0;
    double r = inf_norm(eval_field(f, x));
    int iters = 0;

    auto newton_step = [&](const Point& at) { return solve_pivoted(jacobian(f, at), eval_field(f, at)); };

    while (!(r < cfg.newton_tol) && iters < cfg.max_iters) {
        const auto step = newton_step(x);
        if (!step) {
            out.diagnostic = "singular Jacobian at iteration " + std::to_string(iters);
            break;
        }
        double t = 1.0;
        Point trial = x - *step;
        double rt = inf_norm(eval_field(f, trial));
        for (int h = 0; h < kMaxHalvings && !(rt < r); ++h) {
            t *= 0.5;
            trial = x - t * *step;
            rt = inf_norm(eval_field(f, trial));
        }
        if (!(rt < r)) {
            out.diagnostic = "residual stagnated at iteration " + std::to_string(iters);
            break;
        }
        x = std::move(trial);
        r = rt;
        ++iters;
    }

    if (r < cfg.newton_tol) {
        // One polishing step; kept only if it does not increase the residual.
        if (const auto step = newton_step(x)) {
            Point trial = x - *step;
            const double rt = inf_norm(eval_field(f, trial));
            if (rt <= r) {
                x = std::move(trial);
                r = rt;
                ++iters;
            }
        }
    } else if (out.diagnostic.empty()) {
        out.diagnostic = "no convergence within " + std::to_string(cfg.max_iters) + " iterations";
    }

    out.coords = std::move(x);
    out.residual = r;
    out.converged = r < cfg.newton_tol;
    out.newton_iters = iters;
    return out;
}

SingularPoint track_point(const FoliationParams& params, std::int64_t m, const RunConfig& cfg) {
    params.validate();
    const auto alpha = params.alpha_or_zero();
    const Point start = closed_form_point(params.n, params.d, m);

    std::string last_diagnostic;
    for (int steps = cfg.continuation_steps; steps <= std::max(64, cfg.continuation_steps); steps *= 4) {
        Point x = start;
        SingularPoint sp;
        bool ok = true;
        for (int k = 1; k <= steps; ++k) {
            FoliationParams stage{params.n, params.d, alpha};
            const double frac = static_cast<double>(k) / steps;
            for (auto& a : stage.alpha) a *= frac;
            sp = newton_refine(family_field(stage), x, cfg);
            if (!sp.converged) {
                ok = false;
                last_diagnostic = sp.diagnostic + " (" + std::to_string(steps) + " continuation steps)";
                break;
            }
            x = sp.coords;
        }
        if (ok) {
            sp.m = static_cast<int>(m);
            return sp;
        }
    }
    throw TrackingError(static_cast<int>(m), "continuation failed: " + last_diagnostic);
}

std::vector<SingularPoint> track_singularities(const FoliationParams& params, const RunConfig& cfg) {
    params.validate();
    if (params.alpha_norm() > cfg.radius) {
        throw InputError("alpha lies outside the polydisk of radius " + std::to_string(cfg.radius));
    }
    const std::int64_t big_n = counts(params.n, params.d).N;
    std::vector<SingularPoint> pts(static_cast<std::size_t>(big_n));
    parallel_for(pts.size(), cfg.jobs,
                 [&](std::size_t i) { pts[i] = track_point(params, static_cast<std::int64_t>(i) + 1, cfg); });

    // Collision sweep ordered by Re x_1; any pair within dedup_tol must be
    // within dedup_tol in that coordinate too.
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].coords[0].real() < pts[b].coords[0].real() ||
               (pts[a].coords[0].real() == pts[b].coords[0].real() && a < b);
    });
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const auto& pa = pts[order[a]];
            const auto& pb = pts[order[b]];
            if (pb.coords[0].real() - pa.coords[0].real() > cfg.dedup_tol) break;
            if (inf_norm(pa.coords - pb.coords) <= cfg.dedup_tol) {
                throw TrackingError(std::min(pa.m, pb.m),
                                    "collides with m=" + std::to_string(std::max(pa.m, pb.m)) +
                                        "; alpha is outside the neighborhood with N distinct zeros");
            }
        }
    }
    return pts;
}

Point first_order_point(int n, int d, std::int64_t m, const std::vector<Complex>& alpha) {
    validate_degree(n, d);
    if (static_cast<int>(alpha.size()) != n) throw InputError("first_order_point: alpha must have n entries");
    const std::int64_t big_n = counts(n, d).N;
    auto zeta_pow = [&](std::int64_t e) { return unit_root(mod_floor(m, big_n) * mod_floor(e, big_n), big_n); };
    auto a = [&](int i) { return alpha[static_cast<std::size_t>(i - 1)]; };  // 1-based

    // dx_1/dalpha_j(0) = d^{j-1}/N * zeta^{-d - sum_{l=0}^{j-2} d^{n-l}}
    Complex dx1{};
    for (int j = 1; j <= n; ++j) {
        std::int64_t e = -d;
        for (int l = 0; l <= j - 2; ++l) e -= ipow_int(d, n - l);
        dx1 += a(j) * (static_cast<double>(ipow_int(d, j - 1)) / static_cast<double>(big_n)) * zeta_pow(e);
    }

    Point x(n);
    x[0] = zeta_pow(1) + dx1;
    for (int i = 2; i <= n; ++i) {
        std::int64_t base_exp = 0;
        for (int s = 1; s <= n + 1 - i; ++s) base_exp -= ipow_int(d, s);
        // x_1^{E} linearized around zeta.
        Complex xi = zeta_pow(base_exp) + static_cast<double>(base_exp) * zeta_pow(base_exp - 1) * dx1;
        xi += a(i) * zeta_pow(-d);
        for (int j = i + 1; j <= n; ++j) {
            std::int64_t e = -d;
            for (int l = 0; l <= j - i - 1; ++l) e -= ipow_int(d, n + 1 - i - l);
            xi += a(j) * static_cast<double>(ipow_int(d, j - i)) * zeta_pow(e);
        }
        x[i - 1] = xi;
    }
    return x;
}

}  // namespace jlab
