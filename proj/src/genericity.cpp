#include "jlab/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "jlab/errors.hpp"
#include "jlab/linalg.hpp"
#include "jlab/parallel.hpp"

namespace jlab {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<Complex> axis_vector(int n, int j, Complex value) {
    std::vector<Complex> v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(j)] = value;
    return v;
}

}  // namespace

CharCoeffs phi_map(int n, int d, std::int64_t m, const std::vector<Complex>& alpha, const RunConfig& cfg) {
    const FoliationParams params{n, d, alpha};
    params.validate();
    if (params.alpha_norm() > cfg.radius) throw InputError("phi_map: alpha outside the polydisk");
    const SingularPoint p = track_point(params, m, cfg);
    return char_poly_direct(family_field(params), p.coords);
}

double expected_det_modulus(int n, int d) {
    const Counts c = counts(n, d);
    return (static_cast<double>(n + d) / static_cast<double>(c.N)) *
           std::pow(static_cast<double>(d), (n * n + 3 * n - 2) / 2);
}

SubmersionReport submersion_report(int n, int d, std::int64_t m, const RunConfig& cfg, FdStencil stencil) {
    validate_degree(n, d);
    cfg.validate();
    const std::int64_t big_n = counts(n, d).N;
    if (m < 1 || m > big_n) throw InputError("m must lie in [1, N]");
    const double h = cfg.fd_step;
    if (h > cfg.radius) throw InputError("fd_step exceeds the tracking radius");

    SubmersionReport rep;
    rep.m = static_cast<int>(m);
    rep.fd_step = h;
    rep.jac = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Complex> col(static_cast<std::size_t>(n));
        if (stencil == FdStencil::central) {
            const CharCoeffs plus = phi_map(n, d, m, axis_vector(n, j, h), cfg);
            const CharCoeffs minus = phi_map(n, d, m, axis_vector(n, j, -h), cfg);
            for (int i = 0; i < n; ++i)
                col[static_cast<std::size_t>(i)] = (plus[static_cast<std::size_t>(i)] - minus[static_cast<std::size_t>(i)]) / (2.0 * h);
        } else {
            const Complex rot[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            for (const Complex& w : rot) {
                const CharCoeffs val = phi_map(n, d, m, axis_vector(n, j, h * w), cfg);
                for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] += val[static_cast<std::size_t>(i)] / w;
            }
            for (auto& c : col) c /= 4.0 * h;
        }
        for (int i = 0; i < n; ++i) rep.jac(i, j) = col[static_cast<std::size_t>(i)];
    }
    rep.det = determinant(rep.jac);
    rep.expected_modulus = expected_det_modulus(n, d);
    rep.rel_error = std::abs(std::abs(rep.det) - rep.expected_modulus) / rep.expected_modulus;

    const Eigen::VectorXd sv = embedded_singular_values(rep.jac);
    rep.singular_values.resize(n);
    for (int i = 0; i < n; ++i) rep.singular_values[i] = sv[2 * i];
    rep.rank_certified = rep.singular_values[n - 1] > 1e-6 * rep.singular_values[0];

    if (rep.rel_error > 1e-3) {
        throw VerificationError("|det DPhi_m(0)| = " + std::to_string(std::abs(rep.det)) + " at m=" +
                                std::to_string(m) + " misses the expected modulus " +
                                std::to_string(rep.expected_modulus));
    }
    return rep;
}

std::vector<SubmersionReport> submersion_all(int n, int d, const RunConfig& cfg, FdStencil stencil) {
    const std::int64_t big_n = counts(n, d).N;
    std::vector<SubmersionReport> reps(static_cast<std::size_t>(big_n));
    RunConfig inner = cfg;
    inner.jobs = 1;
    parallel_for(reps.size(), cfg.jobs, [&](std::size_t i) {
        reps[i] = submersion_report(n, d, static_cast<std::int64_t>(i) + 1, inner, stencil);
    });
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& r : reps) {
        lo = std::min(lo, std::abs(r.det));
        hi = std::max(hi, std::abs(r.det));
    }
    if ((hi - lo) / hi > 1e-4) {
        throw VerificationError("|det DPhi_m(0)| depends on m: range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    }
    return reps;
}

double a_coefficient(int n, int d, int i) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += binomial(n - j, n - i) * std::pow(static_cast<double>(d), j);
    return s;
}

std::vector<DerivativeEntry> sigma_derivative_check(int n, int d, const RunConfig& cfg) {
    const std::int64_t big_n = counts(n, d).N;
    const SubmersionReport rep = submersion_report(n, d, big_n, cfg);
    std::vector<DerivativeEntry> table;
    std::string failures;
    for (int i = 1; i <= n; ++i) {
        const double base = i * d * a_coefficient(n, d, i) / static_cast<double>(big_n);
        for (int j = 1; j <= n; ++j) {
            DerivativeEntry e;
            e.i = i;
            e.j = j;
            e.fd = rep.jac(i - 1, j - 1);
            if (j > i - 1) {
                e.formula = base * std::pow(static_cast<double>(d), j - 1);
            } else if (j == i - 1) {
                e.formula = base * std::pow(static_cast<double>(d), i - 2) - std::pow(static_cast<double>(d), i);
            }
            if (e.formula) {
                e.rel_error = std::abs(e.fd - *e.formula) / std::max(1.0, std::abs(*e.formula));
                if (e.rel_error > 1e-4) failures += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
            table.push_back(e);
        }
    }
    if (!failures.empty()) throw VerificationError("derivative table mismatch at" + failures);
    return table;
}

std::vector<AlignmentRecord> alignment_census(const std::vector<SingularPoint>& points, int d,
                                              const RunConfig& cfg) {
    if (d < 2) throw InputError("d >= 2 required: any two points are aligned");
    if (static_cast<int>(points.size()) < d + 1) throw InputError("census needs at least d+1 points");

    std::map<std::vector<int>, AlignmentRecord> found;
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            const Point& base = points[a].coords;
            Point dir = points[b].coords - base;
            const double len = dir.norm();
            if (len == 0.0) continue;
            dir /= len;

            std::vector<int> members;
            double residual = 0.0;
            for (const auto& p : points) {
                const Point w = p.coords - base;
                const double dist = (w - dir.dot(w) * dir).norm();
                if (dist < cfg.align_tol) {
                    members.push_back(p.m);
                    residual = std::max(residual, dist);
                }
            }
            if (static_cast<int>(members.size()) < d + 1) continue;
            std::sort(members.begin(), members.end());
            if (found.contains(members)) continue;
            AlignmentRecord rec;
            rec.indices = members;
            rec.line_point = base;
            rec.line_dir = dir;
            rec.residual = residual;
            found.emplace(std::move(members), std::move(rec));
        }
    }
    std::vector<AlignmentRecord> out;
    out.reserve(found.size());
    for (auto& [key, rec] : found) out.push_back(std::move(rec));
    return out;
}

std::vector<int> q_pattern_indices(int n, int d) {
    if (n % 2 == 0) throw InputError("the q-pattern exists only for odd n");
    if (d < 2) throw InputError("d >= 2 required for the q-pattern");
    const auto pts = closed_form_sing(n, d);
    std::vector<int> idx;
    for (int j = 0; j <= d; ++j) {
        Point q(n);
        const Complex rho = unit_root(j, d + 1);
        for (int i = 0; i < n; ++i) q[i] = (i % 2 == 0) ? rho : Complex{1.0, 0.0};
        const int m = match_index(pts, q, 1e-9);
        if (m == 0) throw StructuralError("q-pattern point j=" + std::to_string(j) + " is not a zero of X_0");
        idx.push_back(m);
    }
    return idx;
}

std::vector<int> translate_indices(const std::vector<int>& indices, std::int64_t k, std::int64_t order) {
    std::vector<int> out;
    out.reserve(indices.size());
    for (int s : indices) out.push_back(static_cast<int>(mod_floor(s - 1 + k, order) + 1));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::int64_t> translation_power(const std::vector<int>& pattern, const std::vector<int>& target,
                                              std::int64_t order) {
    std::vector<int> sorted_target = target;
    std::sort(sorted_target.begin(), sorted_target.end());
    for (std::int64_t k = 0; k < order; ++k)
        if (translate_indices(pattern, k, order) == sorted_target) return k;
    return std::nullopt;
}

HyperplaneSet hyperplane_set(int n, int d, const RunConfig& cfg) {
    validate_degree(n, d);
    if (n % 2 == 0) throw InputError("hyperplanes are defined for odd n only");
    if (d < 2) throw InputError("d >= 2 required for the hyperplane set");
    const Counts c = counts(n, d);

    HyperplaneSet hs;
    hs.base_normal.assign(static_cast<std::size_t>(n), Complex{});
    for (int k = 1; 2 * k <= n - 1; ++k)
        hs.base_normal[static_cast<std::size_t>(2 * k - 1)] = std::pow(static_cast<double>(d), 2 * k - 1);

    const auto q = q_pattern_indices(n, d);
    const auto records = alignment_census(closed_form_sing(n, d), d, cfg);
    if (static_cast<std::int64_t>(records.size()) != c.K) {
        throw StructuralError("alpha = 0 census found " + std::to_string(records.size()) +
                              " aligned sets, expected K = " + std::to_string(c.K));
    }
    for (const auto& rec : records) {
        const auto k = translation_power(q, rec.indices, c.N);
        if (!k) throw StructuralError("aligned set is not a group translate of the q-pattern");
        hs.group_powers.push_back(*k);
        const auto scale = group_power(n, d, *k).scales();
        std::vector<Complex> normal(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            normal[static_cast<std::size_t>(i)] = hs.base_normal[static_cast<std::size_t>(i)] / scale[static_cast<std::size_t>(i)];
        hs.images.push_back(std::move(normal));
    }
    return hs;
}

bool normals_proportional(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
    if (a.size() != b.size()) return false;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    // All 2x2 minors vanish.
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::abs(a[i] * b[j] - a[j] * b[i]) > tol * scale * scale) return false;
    return true;
}

DefectResult defect_experiment(int n, int d, const std::vector<Complex>& nu, const std::vector<double>& mu_grid,
                               const RunConfig& cfg, std::pair<int, int> coords, std::int64_t group_power) {
    validate_degree(n, d);
    if (n % 2 == 0) throw InputError("defect experiment requires odd n");
    if (d < 2) throw InputError("d >= 2 required: for d = 1 the first-order obstruction vanishes identically");
    if (static_cast<int>(nu.size()) != n) throw InputError("nu must have n entries");
    if (mu_grid.size() < 2) throw InputError("need at least two mu values to fit a slope");
    double nu_norm = 0.0;
    for (const Complex& v : nu) nu_norm = std::max(nu_norm, std::abs(v));
    if (nu_norm == 0.0) throw InputError("nu must be nonzero");
    for (double mu : mu_grid) {
        if (!(mu > 0.0) || mu > cfg.radius / nu_norm) throw InputError("mu values must lie in (0, radius/|nu|]");
    }
    const int c0 = coords.first < 0 ? 0 : coords.first;
    const int c1 = coords.second < 0 ? n - 1 : coords.second;
    if (c0 >= n || c1 >= n || c0 == c1) throw InputError("invalid coordinate pair for the defect");

    DefectResult out;
    // q_j -> p_{m+k} under generator^k; keep the order j = 0..d.
    const std::int64_t big_n = counts(n, d).N;
    out.group_power = mod_floor(group_power, big_n);
    for (int m : q_pattern_indices(n, d))
        out.q_indices.push_back(static_cast<int>(mod_floor(m - 1 + out.group_power, big_n) + 1));
    out.mu = mu_grid;
    for (double mu : mu_grid) {
        FoliationParams params{n, d, nu};
        for (auto& a : params.alpha) a *= mu;
        std::vector<Point> q;
        for (int j = 0; j < 3; ++j) q.push_back(track_point(params, out.q_indices[static_cast<std::size_t>(j)], cfg).coords);
        const Complex det = (q[1][c0] - q[0][c0]) * (q[2][c1] - q[0][c1]) -
                            (q[2][c0] - q[0][c0]) * (q[1][c1] - q[0][c1]);
        out.defect.push_back(std::abs(det));
    }

    out.persistent_alignment = std::all_of(out.defect.begin(), out.defect.end(), [](double v) { return v < 1e-12; });

    // Least-squares slope of log(defect) against log(mu).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(mu_grid.size());
    for (std::size_t k = 0; k < mu_grid.size(); ++k) {
        if (!(out.defect[k] > 0.0)) {
            out.slope = std::numeric_limits<double>::quiet_NaN();
            return out;
        }
        const double x = std::log(mu_grid[k]);
        const double y = std::log(out.defect[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return out;
}

std::vector<std::vector<Complex>> sample_polydisk(int n, const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<Complex>> samples(static_cast<std::size_t>(cfg.samples));
    for (auto& alpha : samples) {
        alpha.resize(static_cast<std::size_t>(n));
        for (auto& a : alpha) {
            const double r = cfg.radius * std::sqrt(unit(rng));
            const double theta = 2.0 * std::numbers::pi * unit(rng);
            a = std::polar(r, theta);
        }
    }
    return samples;
}

GenericityStats genericity_sample(int n, int d, const RunConfig& cfg) {
    validate_degree(n, d);
    cfg.validate();
    const auto samples = sample_polydisk(n, cfg);

    struct Outcome {
        bool tracked = false;
        bool all_hyperbolic = false;
        bool any_resonant = false;
        double c_min = std::numeric_limits<double>::infinity();
    };
    std::vector<Outcome> outcomes(samples.size());
    RunConfig inner = cfg;
    inner.jobs = 1;
    parallel_for(samples.size(), cfg.jobs, [&](std::size_t s) {
        Outcome& o = outcomes[s];
        std::vector<SpectrumReport> reps;
        try {
            reps = spectra(FoliationParams{n, d, samples[s]}, inner);
        } catch (const NumericalError&) {
            return;
        }
        o.tracked = true;
        o.all_hyperbolic = true;
        for (const auto& r : reps) {
            if (r.classification != Classification::hyperbolic) o.all_hyperbolic = false;
            if (r.divisor.resonant) o.any_resonant = true;
            o.c_min = std::min(o.c_min, r.divisor.c_min);
        }
    });

    GenericityStats st;
    st.samples = static_cast<int>(samples.size());
    st.min_c_min = std::numeric_limits<double>::infinity();
    for (const auto& o : outcomes) {
        if (!o.tracked) {
            ++st.tracking_failures;
            continue;
        }
        ++st.successes;
        st.all_hyperbolic += o.all_hyperbolic ? 1 : 0;
        st.any_resonant += o.any_resonant ? 1 : 0;
        st.min_c_min = std::min(st.min_c_min, o.c_min);
    }
    if (st.samples > 0) {
        st.success_fraction = static_cast<double>(st.successes) / st.samples;
        st.all_hyperbolic_fraction = static_cast<double>(st.all_hyperbolic) / st.samples;
        st.any_resonant_fraction = static_cast<double>(st.any_resonant) / st.samples;
    }
    return st;
}

std::vector<SpectrumReport> spectra(const FoliationParams& params, const RunConfig& cfg) {
    const auto pts = track_singularities(params, cfg);
    const PolyVectorField f = family_field(params);
    std::vector<SpectrumReport> reps;
    reps.reserve(pts.size());
    for (const auto& p : pts) reps.push_back(spectrum_at(f, p, cfg));
    return reps;
}

}  // namespace jlab
