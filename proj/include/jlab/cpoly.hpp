#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace jlab {

using Complex = std::complex<double>;
using Point = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Monomial exponent tuple; its length is the ambient dimension.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& e);

/// e^{2 pi i k / N}, with k reduced mod N in integer arithmetic first.
Complex unit_root(std::int64_t k, std::int64_t order);

/// Non-negative representative of k mod N.
std::int64_t mod_floor(std::int64_t k, std::int64_t order);

/// A polynomial vector field on C^n stored as one coefficient map per
/// component. Absent keys are zero; exact zeros are pruned after arithmetic.
class PolyVectorField {
public:
    using Component = std::map<MultiIndex, Complex>;

    explicit PolyVectorField(int n);

    int dim() const { return n_; }
    const Component& component(int i) const { return components_.at(i); }
    const std::vector<Component>& components() const { return components_; }

    /// Coefficient of monomial `e` in component i (0-based); zero if absent.
    Complex coeff(int i, const MultiIndex& e) const;

    /// Adds `c` to the coefficient of `e` in component i, pruning exact zeros.
    void add_term(int i, const MultiIndex& e, Complex c);

    /// Highest total degree over all stored monomials (-1 for the zero field).
    int degree() const;

    /// Component-wise homogeneous part of the given total degree.
    PolyVectorField homogeneous_part(int degree) const;

    PolyVectorField& operator+=(const PolyVectorField& other);
    PolyVectorField& operator*=(Complex c);

    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator*(Complex c, PolyVectorField f) { return f *= c; }

private:
    void check_index(const MultiIndex& e) const;

    int n_;
    std::vector<Component> components_;
};

/// Constant field e_i = d/dx_i (0-based i).
PolyVectorField coordinate_field(int n, int i);

/// Linear diagonal field sum lambda_j x_j d/dx_j.
PolyVectorField linear_diagonal_field(std::span<const Complex> lambda);

Point eval_field(const PolyVectorField& f, const Point& x);

/// Jacobian by formal differentiation of the coefficient table.
CMatrix jacobian(const PolyVectorField& f, const Point& x);

/// phi_* F for phi(x) = (s_1 x_1, ..., s_n x_n).
PolyVectorField diagonal_pushforward(const PolyVectorField& f, std::span<const Complex> scale);

/// Same pushforward with s_i = xi^{weights_i}, xi = e^{2 pi i / order}. Every
/// coefficient's root-of-unity factor is formed from an exact integer exponent.
PolyVectorField diagonal_pushforward(const PolyVectorField& f, std::span<const std::int64_t> weights,
                                     std::int64_t order);

/// Max over components and monomials of |coeff_F - coeff_G|.
double field_distance(const PolyVectorField& f, const PolyVectorField& g);

double inf_norm(const Point& x);

}  // namespace jlab
