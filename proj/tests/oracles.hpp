// Independent reference computations for the test suites. Nothing here calls
// the eigensolver, the frame operator assembly, or the decomposition code.
#ifndef FRAMEKIT_TESTS_ORACLES_HPP
#define FRAMEKIT_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <framekit/linalg.hpp>

namespace oracle {

using framekit::Complex;
using framekit::ComplexMatrix;
using framekit::ComplexVector;

/// Σ_i w_i x_i x_i*, entry by entry.
inline ComplexMatrix rank_one_sum(const std::vector<ComplexVector>& xs, const std::vector<double>& w)
{
    const std::size_t n = xs.front().size();
    ComplexMatrix s(n, n);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                s(i, j) += w[k] * xs[k][i] * std::conj(xs[k][j]);
            }
        }
    }
    return s;
}

/// Rayleigh quotient extremes of a 2×2 Hermitian matrix from the closed-form
/// characteristic polynomial.
inline std::pair<double, double> eigenvalues_2x2(const ComplexMatrix& a)
{
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const double off = std::norm(a(0, 1));
    const double mid = 0.5 * (p + q);
    const double rad = std::sqrt(0.25 * (p - q) * (p - q) + off);
    return {mid - rad, mid + rad};
}

/// n-th roots of unity characters x_t[j] = exp(2πi·t·j/n).
inline std::vector<ComplexVector> fourier_characters(std::size_t n)
{
    std::vector<ComplexVector> xs(n, ComplexVector(n));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = 2.0 * std::numbers::pi * double(t * j) / double(n);
            xs[t][j] = std::polar(1.0, angle);
        }
    }
    return xs;
}

/// Unit vectors at 0°, 120°, 240° in ℝ² ⊂ ℂ².
inline std::vector<ComplexVector> equiangular_triple()
{
    std::vector<ComplexVector> xs;
    for (int k = 0; k < 3; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / 3.0;
        xs.push_back({std::cos(angle), std::sin(angle)});
    }
    return xs;
}

/// ‖A·B − I‖_F computed with a plain triple loop.
inline double identity_residual(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) {
                acc += a(i, k) * b(k, j);
            }
            if (i == j) {
                acc -= 1.0;
            }
            s += std::norm(acc);
        }
    }
    return std::sqrt(s);
}

/// Quadratic form ⟨Ax, x⟩ by explicit double sum.
inline Complex quadratic_form(const ComplexMatrix& a, const ComplexVector& x, const ComplexVector& y)
{
    Complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * x[j] * std::conj(y[i]);
        }
    }
    return s;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

} // namespace oracle

#endif // FRAMEKIT_TESTS_ORACLES_HPP
