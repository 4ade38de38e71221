#include "jlab/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jlab/errors.hpp"

namespace jlab {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
    }
}

// x^k for a non-negative integer k by repeated squaring.
Complex ipow(Complex x, int k) {
    Complex result{1.0, 0.0};
    while (k > 0) {
        if (k & 1) result *= x;
        x *= x;
        k >>= 1;
    }
    return result;
}

}  // namespace

int total_degree(const MultiIndex& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
}

std::int64_t mod_floor(std::int64_t k, std::int64_t order) {
    std::int64_t r = k % order;
    return r < 0 ? r + order : r;
}

Complex unit_root(std::int64_t k, std::int64_t order) {
    const std::int64_t r = mod_floor(k, order);
    if (r == 0) return {1.0, 0.0};
    // Exact values on the axes keep symbolic identities exact.
    if (4 * r == order) return {0.0, 1.0};
    if (2 * r == order) return {-1.0, 0.0};
    if (4 * r == 3 * order) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(order);
    return std::polar(1.0, angle);
}

PolyVectorField::PolyVectorField(int n) : n_(n), components_(static_cast<std::size_t>(n)) {
    if (n < 1) throw InputError("PolyVectorField: dimension must be positive");
}

void PolyVectorField::check_index(const MultiIndex& e) const {
    if (static_cast<int>(e.size()) != n_) {
        throw InputError("multi-index length " + std::to_string(e.size()) + " != dimension " +
                         std::to_string(n_));
    }
    for (int v : e) {
        if (v < 0) throw InputError("multi-index entries must be non-negative");
    }
}

Complex PolyVectorField::coeff(int i, const MultiIndex& e) const {
    const auto& comp = components_.at(static_cast<std::size_t>(i));
    auto it = comp.find(e);
    return it == comp.end() ? Complex{} : it->second;
}

void PolyVectorField::add_term(int i, const MultiIndex& e, Complex c) {
    check_index(e);
    auto& comp = components_.at(static_cast<std::size_t>(i));
    auto [it, inserted] = comp.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second == Complex{}) comp.erase(it);
}

int PolyVectorField::degree() const {
    int deg = -1;
    for (const auto& comp : components_)
        for (const auto& [e, c] : comp) deg = std::max(deg, total_degree(e));
    return deg;
}

PolyVectorField PolyVectorField::homogeneous_part(int degree) const {
    PolyVectorField out(n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [e, c] : components_[static_cast<std::size_t>(i)])
            if (total_degree(e) == degree) out.add_term(i, e, c);
    return out;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& other) {
    require_same_dim(n_, other.n_, "field addition");
    for (int i = 0; i < n_; ++i)
        for (const auto& [e, c] : other.components_[static_cast<std::size_t>(i)]) add_term(i, e, c);
    return *this;
}

PolyVectorField& PolyVectorField::operator*=(Complex c) {
    for (auto& comp : components_) {
        for (auto it = comp.begin(); it != comp.end();) {
            it->second *= c;
            it = (it->second == Complex{}) ? comp.erase(it) : std::next(it);
        }
    }
    return *this;
}

PolyVectorField coordinate_field(int n, int i) {
    PolyVectorField f(n);
    f.add_term(i, MultiIndex(static_cast<std::size_t>(n), 0), 1.0);
    return f;
}

PolyVectorField linear_diagonal_field(std::span<const Complex> lambda) {
    const int n = static_cast<int>(lambda.size());
    PolyVectorField f(n);
    for (int j = 0; j < n; ++j) {
        MultiIndex e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 1;
        f.add_term(j, e, lambda[static_cast<std::size_t>(j)]);
    }
    return f;
}

Point eval_field(const PolyVectorField& f, const Point& x) {
    require_same_dim(f.dim(), static_cast<int>(x.size()), "eval_field");
    const int n = f.dim();
    Point out = Point::Zero(n);
    for (int i = 0; i < n; ++i) {
        Complex acc{};
        for (const auto& [e, c] : f.component(i)) {
            Complex term = c;
            for (int k = 0; k < n; ++k) term *= ipow(x[k], e[static_cast<std::size_t>(k)]);
            acc += term;
        }
        out[i] = acc;
    }
    return out;
}

CMatrix jacobian(const PolyVectorField& f, const Point& x) {
    require_same_dim(f.dim(), static_cast<int>(x.size()), "jacobian");
    const int n = f.dim();
    CMatrix jac = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [e, c] : f.component(i)) {
            for (int j = 0; j < n; ++j) {
                const int ej = e[static_cast<std::size_t>(j)];
                if (ej == 0) continue;
                Complex term = c * static_cast<double>(ej);
                for (int k = 0; k < n; ++k) {
                    const int power = e[static_cast<std::size_t>(k)] - (k == j ? 1 : 0);
                    term *= ipow(x[k], power);
                }
                jac(i, j) += term;
            }
        }
    }
    return jac;
}

PolyVectorField diagonal_pushforward(const PolyVectorField& f, std::span<const Complex> scale) {
    require_same_dim(f.dim(), static_cast<int>(scale.size()), "diagonal_pushforward");
    for (const Complex& s : scale) {
        if (s == Complex{}) throw InputError("diagonal_pushforward: zero scale entry");
    }
    const int n = f.dim();
    PolyVectorField out(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [e, c] : f.component(i)) {
            Complex factor = scale[static_cast<std::size_t>(i)];
            for (int k = 0; k < n; ++k) {
                const int ek = e[static_cast<std::size_t>(k)];
                if (ek > 0) factor /= ipow(scale[static_cast<std::size_t>(k)], ek);
            }
            out.add_term(i, e, factor * c);
        }
    }
    return out;
}

PolyVectorField diagonal_pushforward(const PolyVectorField& f, std::span<const std::int64_t> weights,
                                     std::int64_t order) {
    require_same_dim(f.dim(), static_cast<int>(weights.size()), "diagonal_pushforward");
    if (order < 1) throw InputError("diagonal_pushforward: root-of-unity order must be positive");
    const int n = f.dim();
    PolyVectorField out(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [e, c] : f.component(i)) {
            std::int64_t k = weights[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j) {
                k -= static_cast<std::int64_t>(e[static_cast<std::size_t>(j)]) *
                     mod_floor(weights[static_cast<std::size_t>(j)], order);
                k = mod_floor(k, order);
            }
            out.add_term(i, e, unit_root(k, order) * c);
        }
    }
    return out;
}

double field_distance(const PolyVectorField& f, const PolyVectorField& g) {
    require_same_dim(f.dim(), g.dim(), "field_distance");
    double dist = 0.0;
    for (int i = 0; i < f.dim(); ++i) {
        const auto& a = f.component(i);
        const auto& b = g.component(i);
        for (const auto& [e, c] : a) dist = std::max(dist, std::abs(c - g.coeff(i, e)));
        for (const auto& [e, c] : b)
            if (!a.contains(e)) dist = std::max(dist, std::abs(c));
    }
    return dist;
}

double inf_norm(const Point& x) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

}  // namespace jlab
