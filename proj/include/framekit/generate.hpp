#ifndef FRAMEKIT_GENERATE_HPP
#define FRAMEKIT_GENERATE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "linalg.hpp"
#include "povm.hpp"
#include "rng.hpp"

namespace framekit {

inline constexpr std::size_t kMaxGeneratedDim = 64;
inline constexpr std::size_t kMaxGeneratedAtoms = 256;
inline constexpr int kMaxGenerationAttempts = 1000;

/// Real and imaginary parts uniform on [−1, 1).
inline Complex random_complex(PortableRng& rng)
{
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    return {re, im};
}

inline ComplexVector random_vector(std::size_t dim, PortableRng& rng)
{
    ComplexVector v(dim);
    for (auto& z : v) {
        z = random_complex(rng);
    }
    return v;
}

inline ComplexVector random_unit_vector(std::size_t dim, PortableRng& rng)
{
    ComplexVector v;
    double n = 0.0;
    do {
        v = random_vector(dim, rng);
        n = norm(v);
    } while (n < 1e-3);
    for (auto& z : v) {
        z /= n;
    }
    return v;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, PortableRng& rng)
{
    ComplexMatrix m(rows, cols);
    for (auto& z : m.data()) {
        z = random_complex(rng);
    }
    return m;
}

inline void check_generation_limits(std::size_t dim, std::size_t atoms)
{
    if (dim == 0 || dim > kMaxGeneratedDim || atoms == 0 || atoms > kMaxGeneratedAtoms) {
        throw Error(ErrorCode::LimitExceeded, "need 1 ≤ dim ≤ " + std::to_string(kMaxGeneratedDim)
                                                  + " and 1 ≤ atoms ≤ " + std::to_string(kMaxGeneratedAtoms));
    }
}

/// Random vectors regenerated until they form a frame.
inline VectorFrame random_vector_frame(std::size_t dim, std::size_t atoms, std::uint64_t seed, const Tolerances& tol = {})
{
    check_generation_limits(dim, atoms);
    if (atoms < dim) {
        throw Error(ErrorCode::LimitExceeded, "fewer vectors than dimensions can never form a frame");
    }
    PortableRng rng(seed);
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        VectorFrame f{dim, {}};
        for (std::size_t t = 0; t < atoms; ++t) {
            f.vectors.push_back(random_vector(dim, rng));
        }
        try {
            from_vector_frame(f, tol);
            return f;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAFrame) {
                throw;
            }
        }
    }
    throw Error(ErrorCode::LimitExceeded, "no frame found within the attempt budget");
}

/**
 * Random OVF with block heights drawn from 1..max_rank and weights from
 * [0.5, 2), regenerated until it is a frame.
 */
inline OperatorValuedFrame random_ovf(std::size_t dim, std::size_t atoms, std::size_t max_rank, std::uint64_t seed,
                                      const Tolerances& tol = {})
{
    check_generation_limits(dim, atoms);
    if (max_rank == 0) {
        throw Error(ErrorCode::LimitExceeded, "max_rank must be positive");
    }
    PortableRng rng(seed);
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        std::vector<ComplexMatrix> blocks;
        std::vector<double> weights;
        for (std::size_t t = 0; t < atoms; ++t) {
            const std::size_t k = 1 + rng.below(max_rank);
            blocks.push_back(random_matrix(k, dim, rng));
            weights.push_back(rng.uniform(0.5, 2.0));
        }
        try {
            return OperatorValuedFrame(AtomicMeasureSpace(index_labels(atoms), weights), dim, std::move(blocks), tol);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAFrame) {
                throw;
            }
        }
    }
    throw Error(ErrorCode::LimitExceeded, "no frame found within the attempt budget");
}

/**
 * Random PSD elements G*G, scaled so that λ_max(M(Ω)) = 1, regenerated until
 * the POVM is framed.
 */
inline Povm random_povm(std::size_t dim, std::size_t atoms, std::uint64_t seed, const Tolerances& tol = {})
{
    check_generation_limits(dim, atoms);
    PortableRng rng(seed);
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        std::vector<ComplexMatrix> elements;
        ComplexMatrix total(dim, dim);
        for (std::size_t t = 0; t < atoms; ++t) {
            const ComplexMatrix g = random_matrix(dim, dim, rng);
            elements.push_back(hermitian_part(adjoint_times(g, g)));
            total += elements.back();
        }
        const auto eig = hermitian_eigen(hermitian_part(total), tol);
        const double top = eig.eigenvalues.back();
        if (!(top > 0.0)) {
            continue;
        }
        for (auto& e : elements) {
            e *= 1.0 / top;
        }
        Povm m(index_labels(atoms), dim, std::move(elements));
        if (is_framed(m, tol).framed) {
            return m;
        }
    }
    throw Error(ErrorCode::LimitExceeded, "no framed POVM found within the attempt budget");
}

} // namespace framekit

#endif // FRAMEKIT_GENERATE_HPP
