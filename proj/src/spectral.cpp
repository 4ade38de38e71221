#include "jlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jlab/errors.hpp"

namespace jlab {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Complex ipow(Complex x, int k) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// Polynomials here are coefficient vectors in ascending powers of lambda.
using Poly = std::vector<Complex>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly linear_power(Complex shift, int k) {
    Poly out{1.0};
    for (int i = 0; i < k; ++i) out = poly_mul(out, Poly{shift, 1.0});
    return out;
}

// Monic polynomial value and derivative at z; coefficients as sigma.
void horner(const CharCoeffs& sigma, Complex z, Complex& p, Complex& dp) {
    p = 1.0;
    dp = 0.0;
    for (const Complex& s : sigma) {
        dp = dp * z + p;
        p = p * z + s;
    }
}

double coeff_scale(const CharCoeffs& sigma) {
    double m = 0.0;
    for (const Complex& s : sigma) m = std::max(m, std::abs(s));
    return 1.0 + m;
}

void check_point(int n, const Point& p) {
    if (p.size() != n) throw InputError("point dimension does not match n");
}

}  // namespace

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::degenerate: return "degenerate";
        case Classification::nondegenerate_only: return "nondegenerate_only";
        case Classification::hyperbolic: return "hyperbolic";
        case Classification::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Classification classification_from_string(std::string_view s) {
    for (auto c : {Classification::degenerate, Classification::nondegenerate_only, Classification::hyperbolic,
                   Classification::inconclusive})
        if (to_string(c) == s) return c;
    throw InputError("unknown classification '" + std::string(s) + "'");
}

bool SpectrumReport::linearizable() const {
    return classification == Classification::hyperbolic && !divisor.resonant;
}

CharCoeffs char_poly_direct(const PolyVectorField& f, const Point& p) {
    const CMatrix a = jacobian(f, p);
    const Eigen::Index n = a.rows();
    CharCoeffs sigma(static_cast<std::size_t>(n));
    CMatrix m = CMatrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        const CMatrix am = a * m;
        const Complex s = -am.trace() / static_cast<double>(k);
        sigma[static_cast<std::size_t>(k - 1)] = s;
        m = am + s * CMatrix::Identity(n, n);
    }
    return sigma;
}

CharCoeffs char_poly_closed_expanded(int n, int d, const Point& p) {
    check_point(n, p);
    const Complex a = ipow(p[0], d);
    // (lambda + x_1^d)^n + sum_j d^j (x_1...x_{j-1})^{d-1} x_j^d (lambda + x_1^d)^{n-j}
    Poly total = linear_power(a, n);
    Complex prefix{1.0, 0.0};  // (x_1...x_{j-1})^{d-1}
    for (int j = 1; j <= n; ++j) {
        const Complex weight = std::pow(static_cast<double>(d), j) * prefix * ipow(p[j - 1], d);
        const Poly term = linear_power(a, n - j);
        for (std::size_t k = 0; k < term.size(); ++k) total[k] += weight * term[k];
        prefix *= ipow(p[j - 1], d - 1);
    }
    CharCoeffs sigma(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) sigma[static_cast<std::size_t>(i - 1)] = total[static_cast<std::size_t>(n - i)];
    return sigma;
}

CharCoeffs char_poly_closed_sum(int n, int d, const Point& p) {
    check_point(n, p);
    std::vector<Complex> b(static_cast<std::size_t>(n + 1));  // b_j = d^j (x_1..x_{j-1})^{d-1} x_j^d
    Complex prefix{1.0, 0.0};
    for (int j = 1; j <= n; ++j) {
        b[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(d), j) * prefix * ipow(p[j - 1], d);
        prefix *= ipow(p[j - 1], d - 1);
    }
    const Complex a = ipow(p[0], d);
    CharCoeffs sigma(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        Complex s = binomial(n, n - i) * ipow(a, i);
        for (int j = 1; j <= i; ++j) s += binomial(n - j, n - i) * ipow(a, i - j) * b[static_cast<std::size_t>(j)];
        sigma[static_cast<std::size_t>(i - 1)] = s;
    }
    return sigma;
}

CharCoeffs char_poly_closed(int n, int d, const Point& p) {
    validate_degree(n, d);
    const CharCoeffs expanded = char_poly_closed_expanded(n, d, p);
    const CharCoeffs summed = char_poly_closed_sum(n, d, p);
    const double scale = coeff_scale(summed);
    for (std::size_t i = 0; i < summed.size(); ++i) {
        if (std::abs(expanded[i] - summed[i]) > 1e-10 * scale) {
            throw StructuralError("closed characteristic polynomial routes disagree at sigma_" +
                                  std::to_string(i + 1));
        }
    }
    return summed;
}

CharCoeffs coeffs_from_roots(const std::vector<Complex>& roots) {
    // prod (lambda - r) in descending-power order, leading 1 dropped at the end.
    std::vector<Complex> c{1.0};
    for (const Complex& r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= r * c[k - 1];
    }
    return CharCoeffs(c.begin() + 1, c.end());
}

std::vector<Complex> eigenvalues(const CharCoeffs& sigma) {
    constexpr int kMaxSweeps = 500;
    const int n = static_cast<int>(sigma.size());
    if (n == 0) return {};
    if (n == 1) return {-sigma[0]};

    // Deterministic start: roots of unity on a circle bounding the roots.
    double radius = 0.0;
    for (int i = 1; i <= n; ++i)
        radius = std::max(radius, std::pow(std::abs(sigma[static_cast<std::size_t>(i - 1)]), 1.0 / i));
    if (radius == 0.0) return std::vector<Complex>(static_cast<std::size_t>(n));
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    const double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex p, dp;
            horner(sigma, z[static_cast<std::size_t>(k)], p, dp);
            if (p == Complex{}) continue;
            Complex repulsion{};
            for (int j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
            const Complex denom = dp - p * repulsion;
            if (denom == Complex{}) continue;
            const Complex corr = p / denom;
            z[static_cast<std::size_t>(k)] -= corr;
            worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(z[static_cast<std::size_t>(k)])));
        }
        if (worst <= 4.0 * eps) break;
    }

    const double scale = coeff_scale(sigma);
    for (auto& root : z) {
        for (int it = 0; it < 3; ++it) {
            Complex p, dp;
            horner(sigma, root, p, dp);
            if (p == Complex{} || dp == Complex{}) break;
            const Complex trial = root - p / dp;
            Complex pt, dpt;
            horner(sigma, trial, pt, dpt);
            if (std::abs(pt) >= std::abs(p)) break;
            root = trial;
        }
        Complex p, dp;
        horner(sigma, root, p, dp);
        if (!(std::abs(p) / scale < 1e-10)) {
            throw NumericalError("Aberth iteration did not converge within 500 sweeps");
        }
    }
    return z;
}

double min_root_gap(const std::vector<Complex>& roots) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) gap = std::min(gap, std::abs(roots[i] - roots[j]));
    return gap;
}

Classification classify(const std::vector<Complex>& lambda, const RunConfig& cfg) {
    for (const Complex& l : lambda)
        if (std::abs(l) <= cfg.tol_nd) return Classification::degenerate;

    bool all_hyperbolic = true;
    bool any_small = false;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        for (std::size_t l = j + 1; l < lambda.size(); ++l) {
            // Divide by the larger modulus; the other order is non-real iff this one is.
            const bool j_larger = std::abs(lambda[j]) >= std::abs(lambda[l]);
            const Complex ratio = j_larger ? lambda[l] / lambda[j] : lambda[j] / lambda[l];
            const double im = std::abs(ratio.imag());
            if (!(im > cfg.tol_hyp)) all_hyperbolic = false;
            if (im > 0.0 && im <= cfg.tol_hyp) any_small = true;
        }
    }
    if (all_hyperbolic) return Classification::hyperbolic;
    if (any_small) return Classification::inconclusive;
    return Classification::nondegenerate_only;
}

double divisor_value(const std::vector<Complex>& lambda, int j, const MultiIndex& m, double delta) {
    Complex combo{};
    int order = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        combo += static_cast<double>(m[i]) * lambda[i];
        order += m[i];
    }
    return std::abs(lambda[static_cast<std::size_t>(j - 1)] - combo) * std::pow(static_cast<double>(order), delta);
}

DivisorRecord small_divisor_scan(const std::vector<Complex>& lambda, double delta, int max_order) {
    const int n = static_cast<int>(lambda.size());
    if (max_order < 2) throw InputError("max_order must be at least 2");
    if (n < 1) throw InputError("empty eigenvalue list");
    // n * (#{|m| <= max_order} - 1 - n) candidates.
    const double candidates = n * (binomial(max_order + n, n) - 1.0 - n);
    if (candidates > 1e8) {
        throw InputError("small-divisor scan would visit " + std::to_string(candidates) +
                         " candidates; reduce max_order");
    }

    DivisorRecord rec;
    rec.delta = delta;
    rec.max_order = max_order;
    rec.c_min = std::numeric_limits<double>::infinity();

    // Multi-indices of each total order in lexicographic order; strict < keeps the
    // first witness, so ties resolve to the smallest (j, |m|, m).
    MultiIndex m(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        for (int order = 2; order <= max_order; ++order) {
            std::fill(m.begin(), m.end(), 0);
            m.back() = order;
            while (true) {
                const double v = divisor_value(lambda, j, m, delta);
                if (v < rec.c_min) {
                    rec.c_min = v;
                    rec.worst_j = j;
                    rec.worst_m = m;
                }
                // Next composition of `order` into n parts in lexicographic order.
                int pos = n - 2;
                while (pos >= 0 && m[static_cast<std::size_t>(pos + 1)] == 0) --pos;
                if (pos < 0) break;
                int tail = 0;
                for (int q = pos + 1; q < n; ++q) tail += m[static_cast<std::size_t>(q)];
                ++m[static_cast<std::size_t>(pos)];
                for (int q = pos + 1; q < n; ++q) m[static_cast<std::size_t>(q)] = 0;
                m.back() = tail - 1;
            }
        }
    }
    rec.resonant = rec.c_min < 1e-10;
    return rec;
}

SpectrumReport spectrum_at(const PolyVectorField& f, const SingularPoint& p, const RunConfig& cfg) {
    SpectrumReport rep;
    rep.m = p.m;
    rep.sigma = char_poly_direct(f, p.coords);
    rep.eigenvalues = eigenvalues(rep.sigma);
    rep.classification = classify(rep.eigenvalues, cfg);
    rep.divisor = small_divisor_scan(rep.eigenvalues, cfg.delta, cfg.max_order);
    double scale = 1.0;
    for (const Complex& l : rep.eigenvalues) scale = std::max(scale, 1.0 + std::abs(l));
    rep.near_diagonal = min_root_gap(rep.eigenvalues) < 1e-6 * scale;
    return rep;
}

}  // namespace jlab
