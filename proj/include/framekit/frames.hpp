#ifndef FRAMEKIT_FRAMES_HPP
#define FRAMEKIT_FRAMES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "tolerances.hpp"

namespace framekit {

inline std::vector<std::string> index_labels(std::size_t count)
{
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back(std::to_string(i));
    }
    return labels;
}

inline void require_unique_labels(const std::vector<std::string>& atoms)
{
    std::unordered_set<std::string> seen;
    for (const auto& label : atoms) {
        if (!seen.insert(label).second) {
            throw Error(ErrorCode::InvalidMeasure, "duplicate atom label '" + label + "'");
        }
    }
}

/// Finite measure space: atoms with strictly positive weights, Σ = all subsets.
class AtomicMeasureSpace {
public:
    AtomicMeasureSpace() = default;

    AtomicMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights)
        : atoms_(std::move(atoms)), weights_(std::move(weights))
    {
        if (atoms_.size() != weights_.size()) {
            throw Error(ErrorCode::InvalidMeasure, "atom and weight counts differ");
        }
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
                throw Error(ErrorCode::InvalidMeasure,
                            "weight of atom '" + atoms_[i] + "' must be positive and finite");
            }
        }
        require_unique_labels(atoms_);
    }

    /// Atoms labelled "0".."count−1", each of weight 1.
    static AtomicMeasureSpace counting(std::size_t count)
    {
        return AtomicMeasureSpace(index_labels(count), std::vector<double>(count, 1.0));
    }

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double weight(std::size_t t) const { return weights_.at(t); }

    std::optional<std::size_t> index_of(const std::string& label) const
    {
        const auto it = std::find(atoms_.begin(), atoms_.end(), label);
        if (it == atoms_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - atoms_.begin());
    }

    /// μ(E) for E given by atom indices.
    double measure(std::span<const std::size_t> event) const
    {
        double s = 0.0;
        for (std::size_t t : event) {
            s += weights_.at(t);
        }
        return s;
    }

    AtomicMeasureSpace scaled(double c) const
    {
        std::vector<double> w = weights_;
        for (double& x : w) {
            x *= c;
        }
        return AtomicMeasureSpace(atoms_, std::move(w));
    }

    friend bool operator==(const AtomicMeasureSpace&, const AtomicMeasureSpace&) = default;

private:
    std::vector<std::string> atoms_;
    std::vector<double> weights_;
};

struct FrameBounds {
    double lower = 0.0; // A
    double upper = 0.0; // B

    /// (B − A)/(B + A), the contraction factor of the frame algorithm.
    double rate() const noexcept { return (upper - lower) / (upper + lower); }
};

/**
 * Frame bounds of a frame operator S: the extreme eigenvalues. Raises
 * NotAFrame when λ_min(S) ≤ tol.frame·λ_max(S).
 */
inline FrameBounds frame_bounds(const ComplexMatrix& frame_operator, const Tolerances& tol = {})
{
    const auto eig = hermitian_eigen(frame_operator, tol);
    if (eig.eigenvalues.empty()) {
        throw Error(ErrorCode::NotAFrame, "frame operator is empty");
    }
    const double lower = eig.eigenvalues.front();
    const double upper = eig.eigenvalues.back();
    if (!(upper > 0.0) || !(lower > tol.frame * upper)) {
        throw Error(ErrorCode::NotAFrame,
                    "λ_min(S) = " + std::to_string(lower) + " is not bounded away from zero (λ_max = "
                        + std::to_string(upper) + ")");
    }
    return {lower, upper};
}

/**
 * A measure space plus one linear map T(t): ℂⁿ → ℂ^{k_t} per atom. Frames,
 * g-frames and discretized continuous frames are all special cases.
 *
 * Construction assembles S = Σ μ({t}) T(t)*T(t) and rejects families whose S
 * is not positive definite (NotAFrame). S and the bounds are kept with the
 * value.
 */
class OperatorValuedFrame {
public:
    OperatorValuedFrame(AtomicMeasureSpace space, std::size_t dim_h, std::vector<ComplexMatrix> blocks,
                        const Tolerances& tol = {})
        : space_(std::move(space)), dim_h_(dim_h), blocks_(std::move(blocks))
    {
        if (dim_h_ == 0) {
            throw Error(ErrorCode::DimensionMismatch, "dim_h must be positive");
        }
        if (blocks_.empty()) {
            throw Error(ErrorCode::EmptyFrame, "operator-valued frame has no atoms");
        }
        if (blocks_.size() != space_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "block count differs from atom count");
        }
        for (std::size_t t = 0; t < blocks_.size(); ++t) {
            if (blocks_[t].cols() != dim_h_ || blocks_[t].rows() == 0) {
                throw Error(ErrorCode::DimensionMismatch,
                            "block of atom '" + space_.atoms()[t] + "' must be k×" + std::to_string(dim_h_));
            }
        }
        frame_operator_ = ComplexMatrix(dim_h_, dim_h_);
        for (std::size_t t = 0; t < blocks_.size(); ++t) {
            frame_operator_.add_scaled(adjoint_times(blocks_[t], blocks_[t]), space_.weight(t));
        }
        frame_operator_ = hermitian_part(frame_operator_);
        bounds_ = framekit::frame_bounds(frame_operator_, tol);
    }

    const AtomicMeasureSpace& space() const noexcept { return space_; }
    std::size_t dim_h() const noexcept { return dim_h_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
    const ComplexMatrix& block(std::size_t t) const { return blocks_.at(t); }
    const ComplexMatrix& frame_operator() const noexcept { return frame_operator_; }
    const FrameBounds& bounds() const noexcept { return bounds_; }

private:
    AtomicMeasureSpace space_;
    std::size_t dim_h_;
    std::vector<ComplexMatrix> blocks_;
    ComplexMatrix frame_operator_;
    FrameBounds bounds_;
};

struct VectorFrame {
    std::size_t dim_h = 0;
    std::vector<ComplexVector> vectors;
};

/// Per-atom coefficient segments {T(t)x}_t, weighted by the atoms' measure.
struct CoefficientField {
    AtomicMeasureSpace space;
    std::vector<ComplexVector> segments;

    /// Σ_t μ({t})·‖segment_t‖²
    double weighted_norm_squared() const
    {
        double s = 0.0;
        for (std::size_t t = 0; t < segments.size(); ++t) {
            const double n = norm(segments[t]);
            s += space.weight(t) * n * n;
        }
        return s;
    }
};

inline OperatorValuedFrame discretize_continuous(std::span<const ComplexVector> samples,
                                                 std::span<const double> weights, const Tolerances& tol = {})
{
    if (samples.empty()) {
        throw Error(ErrorCode::EmptyFrame, "no samples");
    }
    if (weights.size() != samples.size()) {
        throw Error(ErrorCode::DimensionMismatch, "sample and weight counts differ");
    }
    const std::size_t n = samples.front().size();
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(samples.size());
    for (const auto& x : samples) {
        if (x.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "samples have different dimensions");
        }
        ComplexMatrix row(1, n);
        for (std::size_t j = 0; j < n; ++j) {
            row(0, j) = std::conj(x[j]);
        }
        blocks.push_back(std::move(row));
    }
    AtomicMeasureSpace space(index_labels(samples.size()), std::vector<double>(weights.begin(), weights.end()));
    return OperatorValuedFrame(std::move(space), n, std::move(blocks), tol);
}

/// T_i = ⟨·, x_i⟩ as a 1×n block, unit weights.
inline OperatorValuedFrame from_vector_frame(const VectorFrame& frame, const Tolerances& tol = {})
{
    if (frame.vectors.empty()) {
        throw Error(ErrorCode::EmptyFrame, "vector frame has no vectors");
    }
    for (const auto& x : frame.vectors) {
        if (x.size() != frame.dim_h) {
            throw Error(ErrorCode::DimensionMismatch, "frame vector length differs from dim_h");
        }
    }
    const std::vector<double> ones(frame.vectors.size(), 1.0);
    return discretize_continuous(frame.vectors, ones, tol);
}

inline CoefficientField analysis(const OperatorValuedFrame& ovf, std::span<const Complex> x)
{
    if (x.size() != ovf.dim_h()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "vector has dimension " + std::to_string(x.size()) + ", frame acts on "
                        + std::to_string(ovf.dim_h()));
    }
    CoefficientField c{ovf.space(), {}};
    c.segments.reserve(ovf.size());
    for (const auto& block : ovf.blocks()) {
        c.segments.push_back(block * x);
    }
    return c;
}

/// Σ_t μ({t})·T(t)*·c_t
inline ComplexVector synthesis(const OperatorValuedFrame& ovf, const CoefficientField& c)
{
    if (!(c.space == ovf.space())) {
        throw Error(ErrorCode::SpaceMismatch, "coefficient field lives on a different measure space");
    }
    if (c.segments.size() != ovf.size()) {
        throw Error(ErrorCode::DimensionMismatch, "segment count differs from atom count");
    }
    ComplexVector out(ovf.dim_h(), Complex{});
    for (std::size_t t = 0; t < ovf.size(); ++t) {
        const auto& block = ovf.block(t);
        if (c.segments[t].size() != block.rows()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "segment of atom '" + ovf.space().atoms()[t] + "' has the wrong length");
        }
        const ComplexVector y = adjoint_apply(block, c.segments[t]);
        const double w = ovf.space().weight(t);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += w * y[i];
        }
    }
    return out;
}

inline const ComplexMatrix& frame_operator(const OperatorValuedFrame& ovf) noexcept
{
    return ovf.frame_operator();
}

inline FrameBounds frame_bounds(const OperatorValuedFrame& ovf) noexcept { return ovf.bounds(); }

} // namespace framekit

#endif // FRAMEKIT_FRAMES_HPP
