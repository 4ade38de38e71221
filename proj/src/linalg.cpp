#include "jlab/linalg.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "jlab/errors.hpp"

namespace jlab {

std::optional<Point> solve_pivoted(CMatrix a, Point b, double pivot_tol) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.size() != n) throw InputError("solve_pivoted: shape mismatch");
    const double scale = a.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) return std::nullopt;

    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = k;
        for (Eigen::Index r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(pivot, k))) pivot = r;
        if (std::abs(a(pivot, k)) <= pivot_tol * scale) return std::nullopt;
        if (pivot != k) {
            a.row(k).swap(a.row(pivot));
            std::swap(b[k], b[pivot]);
        }
        for (Eigen::Index r = k + 1; r < n; ++r) {
            const Complex factor = a(r, k) / a(k, k);
            if (factor == Complex{}) continue;
            a.row(r).tail(n - k) -= factor * a.row(k).tail(n - k);
            b[r] -= factor * b[k];
        }
    }
    Point x(n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        Complex s = b[k];
        for (Eigen::Index c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
        x[k] = s / a(k, k);
    }
    return x;
}

Complex determinant(CMatrix a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw InputError("determinant: matrix must be square");
    Complex det{1.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = k;
        for (Eigen::Index r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(pivot, k))) pivot = r;
        if (a(pivot, k) == Complex{}) return {};
        if (pivot != k) {
            a.row(k).swap(a.row(pivot));
            det = -det;
        }
        det *= a(k, k);
        for (Eigen::Index r = k + 1; r < n; ++r) {
            const Complex factor = a(r, k) / a(k, k);
            a.row(r).tail(n - k) -= factor * a.row(k).tail(n - k);
        }
    }
    return det;
}

Eigen::VectorXd embedded_singular_values(const CMatrix& a) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = a.cols();
    Eigen::MatrixXd real(2 * n, 2 * m);
    real.topLeftCorner(n, m) = a.real();
    real.topRightCorner(n, m) = -a.imag();
    real.bottomLeftCorner(n, m) = a.imag();
    real.bottomRightCorner(n, m) = a.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real);
    return svd.singularValues();
}

}  // namespace jlab
