#ifndef FRAMEKIT_LINALG_HPP
#define FRAMEKIT_LINALG_HPP

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "tolerances.hpp"

namespace framekit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/**
 * Dense row-major complex matrix. Every constructor that accepts external
 * data rejects NaN/Inf entries; arithmetic on finite values stays in the
 * value domain.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{})
    {
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::DimensionMismatch,
                        "matrix data has " + std::to_string(data_.size()) + " entries, expected "
                            + std::to_string(rows_ * cols_));
        }
        for (const Complex& z : data_) {
            if (!is_finite(z)) {
                throw Error(ErrorCode::NonFinite, "matrix entry is NaN or Inf");
            }
        }
    }

    /// Row-by-row literal, e.g. `from_rows({{2, {0, 1}}, {{0, -1}, 2}})`.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<Complex> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) {
                throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
            }
            data.insert(data.end(), row.begin(), row.end());
        }
        return ComplexMatrix(r, c, std::move(data));
    }

    static ComplexMatrix identity(std::size_t n)
    {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values)
    {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> values)
    {
        return diagonal(std::span<const double>(values.begin(), values.size()));
    }

    /// x·y* (outer product).
    static ComplexMatrix outer(std::span<const Complex> x, std::span<const Complex> y)
    {
        ComplexMatrix m(x.size(), y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < y.size(); ++j) {
                m(i, j) = x[i] * std::conj(y[j]);
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other)
    {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += other.data_[k];
        }
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& other)
    {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) noexcept
    {
        for (Complex& z : data_) {
            z *= s;
        }
        return *this;
    }

    /// this += s·other, without a temporary.
    ComplexMatrix& add_scaled(const ComplexMatrix& other, Complex s)
    {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += s * other.data_[k];
        }
        return *this;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_shape(const ComplexMatrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw Error(ErrorCode::DimensionMismatch,
                        "shape " + std::to_string(rows_) + "x" + std::to_string(cols_) + " vs "
                            + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

inline ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> x)
{
    if (a.cols() != x.size()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector dimensions differ");
    }
    ComplexVector y(a.rows(), Complex{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

inline ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x)
{
    return a * std::span<const Complex>(x);
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a)
{
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(j, i) = std::conj(a(i, j));
        }
    }
    return r;
}

/// a*·b without forming a* explicitly.
inline ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "adjoint product row counts differ");
    }
    ComplexMatrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex aki = std::conj(a(k, i));
            if (aki == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aki * b(k, j);
            }
        }
    }
    return c;
}

/// a*·x.
inline ComplexVector adjoint_apply(const ComplexMatrix& a, std::span<const Complex> x)
{
    if (a.rows() != x.size()) {
        throw Error(ErrorCode::DimensionMismatch, "adjoint-vector dimensions differ");
    }
    ComplexVector y(a.cols(), Complex{});
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            y[i] += std::conj(a(k, i)) * x[k];
        }
    }
    return y;
}

inline double frobenius_norm(const ComplexMatrix& a) noexcept
{
    double s = 0.0;
    for (const Complex& z : a.data()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

inline Complex trace(const ComplexMatrix& a)
{
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "trace of a non-square matrix");
    }
    Complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        s += a(i, i);
    }
    return s;
}

/// ⟨x, y⟩ = Σ x_i conj(y_i): linear in x, conjugate-linear in y.
inline Complex inner(std::span<const Complex> x, std::span<const Complex> y)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "inner product of vectors of different length");
    }
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * std::conj(y[i]);
    }
    return s;
}

inline double norm(std::span<const Complex> x) noexcept
{
    double s = 0.0;
    for (const Complex& z : x) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

inline ComplexVector subtract(std::span<const Complex> x, std::span<const Complex> y)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "vector difference of different lengths");
    }
    ComplexVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        r[i] = x[i] - y[i];
    }
    return r;
}

/// ‖A − A*‖_F.
inline double hermitian_residual(const ComplexMatrix& a)
{
    if (!a.is_square()) {
        return INFINITY;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    return std::sqrt(s);
}

inline bool is_hermitian(const ComplexMatrix& a, const Tolerances& tol = {})
{
    return a.is_square() && hermitian_residual(a) <= tol.herm * frobenius_norm(a);
}

/// (A + A*)/2, with an exactly real diagonal.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a)
{
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "hermitian part of a non-square matrix");
    }
    ComplexMatrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

struct EigenDecomposition {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix eigenvectors;      // column k pairs with eigenvalues[k]
};

inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr double kJacobiOffDiagonalThreshold = 1e-14;

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). The rotation is the phase
// diag(1, conj(e)) on (p,q), which makes a(p,q) = |a(p,q)|, followed by the
// real plane rotation [[c, s], [−s, c]].
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q)
{
    const std::size_t n = a.rows();
    const Complex apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) {
        return;
    }
    const Complex e = apq / g;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * g);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) {
        t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex ce = std::conj(e);

    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * ce * akq;
        a(k, q) = s * akp + c * ce * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * e * aqk;
        a(q, k) = s * apk + c * e * aqk;
    }
    a(p, p) = app - t * g;
    a(q, q) = aqq + t * g;
    a(p, q) = Complex{};
    a(q, p) = Complex{};

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * ce * vkq;
        v(k, q) = s * vkp + c * ce * vkq;
    }
}

} // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
 *
 * Pivots are visited row-major over the strict upper triangle. Iteration
 * stops once the off-diagonal Frobenius norm falls to 1e−14·‖A‖_F; more than
 * 100 sweeps raises NoConvergence. Eigenvalues come back ascending with their
 * eigenvector columns permuted alongside; ties keep the Jacobi order.
 */
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& input, const Tolerances& tol = {})
{
    if (!input.is_square()) {
        throw Error(ErrorCode::NotHermitian, "matrix is not square");
    }
    const double scale = frobenius_norm(input);
    const double herm = hermitian_residual(input);
    if (!(herm <= tol.herm * scale)) {
        throw Error(ErrorCode::NotHermitian,
                    "‖A − A*‖_F = " + std::to_string(herm) + " exceeds tolerance");
    }
    const std::size_t n = input.rows();
    ComplexMatrix a = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = kJacobiOffDiagonalThreshold * scale;
    int sweep = 0;
    while (detail::off_diagonal_norm(a) > threshold) {
        if (sweep == kMaxJacobiSweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "Jacobi eigensolver exceeded " + std::to_string(kMaxJacobiSweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                detail::jacobi_rotate(a, v, p, q);
            }
        }
        ++sweep;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

/// U·diag(f(λ))·U*, returned exactly Hermitian.
inline ComplexMatrix reassemble(const EigenDecomposition& eig, std::span<const double> values)
{
    const ComplexMatrix& u = eig.eigenvectors;
    const std::size_t n = u.rows();
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double lambda = values[k];
        if (lambda == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Complex uik = lambda * u(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) += uik * std::conj(u(j, k));
            }
        }
    }
    return hermitian_part(r);
}

inline double min_eigenvalue(const ComplexMatrix& a, const Tolerances& tol = {})
{
    const auto eig = hermitian_eigen(a, tol);
    return eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
}

/**
 * The unique Hermitian PSD root R with R·R = A.
 *
 * Eigenvalues in [−tol_psd, 0) are clamped to 0, with tol_psd =
 * tol.psd·(1 + ‖A‖_F). Non-negative eigenvalues below the eigensolver's
 * rounding floor (16·n·ε·‖A‖_F) are also zeroed: their square roots are pure
 * noise, and keeping them would perturb the root of a projection by ~1e−8.
 */
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerances& tol = {})
{
    const auto eig = hermitian_eigen(a, tol);
    const double norm_a = frobenius_norm(a);
    const double tol_psd = tol.psd * (1.0 + norm_a);
    const double floor = 16.0 * static_cast<double>(a.rows()) * DBL_EPSILON * norm_a;
    std::vector<double> roots(eig.eigenvalues.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda < -tol_psd) {
            throw Error(ErrorCode::NotPsd, "eigenvalue " + std::to_string(lambda) + " below −tol_psd");
        }
        roots[k] = lambda <= floor ? 0.0 : std::sqrt(lambda);
    }
    return reassemble(eig, roots);
}

namespace detail {

// Gauss-Jordan elimination with partial pivoting.
inline ComplexMatrix gauss_jordan_inverse(const ComplexMatrix& input)
{
    const std::size_t n = input.rows();
    ComplexMatrix a = input;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) {
            throw Error(ErrorCode::Singular, "zero pivot during elimination");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Complex d = 1.0 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= d;
            inv(col, j) *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const Complex f = a(r, col);
            if (f == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace detail

/**
 * Inverse of a square matrix. Raises Singular when the smallest eigenvalue
 * magnitude (Hermitian input) or singular value (general input) is at most
 * tol.inv·‖A‖_F.
 */
inline ComplexMatrix invert(const ComplexMatrix& a, const Tolerances& tol = {})
{
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "cannot invert a non-square matrix");
    }
    const double norm_a = frobenius_norm(a);
    const double threshold = tol.inv * norm_a;
    double smallest = 0.0;
    if (is_hermitian(a, tol)) {
        const auto eig = hermitian_eigen(a, tol);
        smallest = INFINITY;
        for (double lambda : eig.eigenvalues) {
            smallest = std::min(smallest, std::abs(lambda));
        }
    } else {
        // σ_min² = λ_min(A*A)
        const auto eig = hermitian_eigen(adjoint_times(a, a), tol);
        smallest = std::sqrt(std::max(0.0, eig.eigenvalues.front()));
    }
    if (!(smallest > threshold) || norm_a == 0.0) {
        throw Error(ErrorCode::Singular,
                    "smallest magnitude " + std::to_string(smallest) + " ≤ " + std::to_string(threshold));
    }
    return detail::gauss_jordan_inverse(a);
}

} // namespace framekit

#endif // FRAMEKIT_LINALG_HPP
