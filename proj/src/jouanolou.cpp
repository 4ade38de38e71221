#include "jlab/jouanolou.hpp"

#include <algorithm>
#include <cmath>

#include "jlab/errors.hpp"

namespace jlab {

void validate_degree(int n, int d) {
    if (n < 2 || n > 8) throw InputError("n must lie in [2, 8], got " + std::to_string(n));
    if (d < 1 || d > 6) throw InputError("d must lie in [1, 6], got " + std::to_string(d));
}

void FoliationParams::validate() const {
    validate_degree(n, d);
    if (!alpha.empty() && static_cast<int>(alpha.size()) != n) {
        throw InputError("alpha has " + std::to_string(alpha.size()) + " entries, expected " +
                         std::to_string(n));
    }
}

std::vector<Complex> FoliationParams::alpha_or_zero() const {
    if (alpha.empty()) return std::vector<Complex>(static_cast<std::size_t>(n));
    return alpha;
}

double FoliationParams::alpha_norm() const {
    double m = 0.0;
    for (const Complex& a : alpha) m = std::max(m, std::abs(a));
    return m;
}

std::int64_t ipow_int(std::int64_t base, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

namespace {

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

MultiIndex unit_index(int n, int i, int power = 1) {
    MultiIndex e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = power;
    return e;
}

}  // namespace

Counts counts(int n, int d) {
    validate_degree(n, d);
    Counts c;
    for (int k = 0; k <= n; ++k) c.N += ipow_int(d, k);
    c.M = n * binomial(n + d, d) + binomial(n + d - 1, d) - 1;
    if (n % 2 == 1 && d >= 2) {
        for (int k = 0; k <= n - 1; k += 2) c.K += ipow_int(d, k);
    }
    return c;
}

bool GroupElement::is_identity() const {
    return std::all_of(weights.begin(), weights.end(),
                       [this](std::int64_t w) { return mod_floor(w, order) == 0; });
}

std::vector<Complex> GroupElement::scales() const {
    std::vector<Complex> s;
    s.reserve(weights.size());
    for (std::int64_t w : weights) s.push_back(unit_root(w, order));
    return s;
}

Point GroupElement::apply(const Point& x) const {
    if (x.size() != static_cast<Eigen::Index>(weights.size()))
        throw InputError("group element applied to a point of the wrong dimension");
    Point y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] *= unit_root(weights[static_cast<std::size_t>(i)], order);
    return y;
}

GroupElement group_generator(int n, int d) {
    return group_power(n, d, 1);
}

GroupElement group_power(int n, int d, std::int64_t k) {
    const std::int64_t order = counts(n, d).N;
    GroupElement g;
    g.order = order;
    g.power = mod_floor(k, order);
    g.weights.assign(static_cast<std::size_t>(n), 0);
    // Generator weights: (1, -(d^{n-1}+...+d), -(d^{n-2}+...+d), ..., -d).
    for (int i = 0; i < n; ++i) {
        std::int64_t w = 1;
        if (i > 0) {
            w = 0;
            for (int s = 1; s <= n - i; ++s) w -= ipow_int(d, s);
        }
        g.weights[static_cast<std::size_t>(i)] = mod_floor(mod_floor(w, order) * g.power, order);
    }
    return g;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    if (a.order != b.order || a.weights.size() != b.weights.size())
        throw InputError("composing elements of different groups");
    GroupElement g = a;
    g.power = mod_floor(a.power + b.power, a.order);
    for (std::size_t i = 0; i < g.weights.size(); ++i) g.weights[i] = mod_floor(a.weights[i] + b.weights[i], a.order);
    return g;
}

std::vector<GroupElement> group_elements(int n, int d) {
    const std::int64_t order = counts(n, d).N;
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order));
    for (std::int64_t k = 0; k < order; ++k) out.push_back(group_power(n, d, k));
    return out;
}

PolyVectorField jouanolou_field(int n, int d) {
    validate_degree(n, d);
    PolyVectorField f(n);
    for (int i = 0; i < n; ++i) {
        // -x_i x_1^d
        MultiIndex top = unit_index(n, 0, d);
        top[static_cast<std::size_t>(i)] += 1;
        f.add_term(i, top, -1.0);
        if (i + 1 < n) {
            f.add_term(i, unit_index(n, i + 1, d), 1.0);
        } else {
            f.add_term(i, MultiIndex(static_cast<std::size_t>(n), 0), 1.0);
        }
    }
    return f;
}

PolyVectorField family_field(const FoliationParams& params) {
    params.validate();
    PolyVectorField f = jouanolou_field(params.n, params.d);
    const MultiIndex constant(static_cast<std::size_t>(params.n), 0);
    for (std::size_t i = 0; i < params.alpha.size(); ++i) f.add_term(static_cast<int>(i), constant, params.alpha[i]);
    return f;
}

Point closed_form_point(int n, int d, std::int64_t m) {
    return group_power(n, d, m).apply(Point::Ones(n));
}

std::vector<SingularPoint> closed_form_sing(int n, int d) {
    const std::int64_t big_n = counts(n, d).N;
    const PolyVectorField x0 = jouanolou_field(n, d);
    std::vector<SingularPoint> pts;
    pts.reserve(static_cast<std::size_t>(big_n));
    for (std::int64_t m = 1; m <= big_n; ++m) {
        SingularPoint p;
        p.m = static_cast<int>(m);
        p.coords = closed_form_point(n, d, m);
        p.residual = inf_norm(eval_field(x0, p.coords));
        p.converged = true;
        pts.push_back(std::move(p));
    }
    return pts;
}

PushforwardFactor pushforward_factor(const GroupElement& g, const FoliationParams& params) {
    params.validate();
    const int n = params.n;
    const int d = params.d;
    if (static_cast<int>(g.weights.size()) != n || g.order != counts(n, d).N)
        throw InputError("group element does not belong to G(n,d)");

    const PolyVectorField pushed = diagonal_pushforward(family_field(params), g.weights, g.order);

    MultiIndex top = unit_index(n, 0, d);
    top[static_cast<std::size_t>(n - 1)] += 1;
    PushforwardFactor out;
    out.c = -pushed.coeff(n - 1, top);
    if (std::abs(out.c) == 0.0) throw StructuralError("pushforward lost the x_n x_1^d term");

    const MultiIndex constant(static_cast<std::size_t>(n), 0);
    out.alpha_tilde.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.alpha_tilde[static_cast<std::size_t>(i)] = pushed.coeff(i, constant) / out.c;
    out.alpha_tilde[static_cast<std::size_t>(n - 1)] -= 1.0;

    const PolyVectorField refit = out.c * family_field(FoliationParams{n, d, out.alpha_tilde});
    out.residual = field_distance(pushed, refit);
    if (!(out.residual < 1e-12)) {
        throw StructuralError("pushforward does not factor into the family (residual " +
                              std::to_string(out.residual) + ")");
    }
    return out;
}

int match_index(const std::vector<SingularPoint>& points, const Point& x, double tol) {
    int best = 0;
    double best_dist = tol;
    for (const auto& p : points) {
        const double dist = inf_norm(p.coords - x);
        if (dist < best_dist) {
            best_dist = dist;
            best = p.m;
        }
    }
    return best;
}

}  // namespace jlab
