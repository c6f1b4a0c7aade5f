#ifndef FRAMEKIT_RECONSTRUCTION_HPP
#define FRAMEKIT_RECONSTRUCTION_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "linalg.hpp"

namespace framekit {

/// x = S⁻¹·T*c
inline ComplexVector reconstruct_direct(const OperatorValuedFrame& ovf, const CoefficientField& c,
                                        const Tolerances& tol = {})
{
    const ComplexVector synthesized = synthesis(ovf, c);
    return invert(ovf.frame_operator(), tol) * synthesized;
}

struct ReconstructionConfig {
    std::size_t max_iters = 10'000;
    double target_error = 1e-9;
    std::optional<FrameBounds> bounds_override;
};

enum class StopReason { TargetReached, MaxIterations };

constexpr std::string_view to_string(StopReason r) noexcept
{
    return r == StopReason::TargetReached ? "target_reached" : "max_iterations";
}

/**
 * Record of one frame-algorithm run. Index n of every per-step list refers to
 * iterate x⁽ⁿ⁾, starting at x⁽⁰⁾ = 0.
 *
 * certified_bounds is the a priori bound rateⁿ·‖T*c‖/A. Since ‖T*c‖ = ‖Sx‖ ≥
 * A‖x‖, the proxy dominates the unknown ‖x‖ and the bound stays rigorous.
 * residual_bounds is the a posteriori bound ‖T*c − S x⁽ⁿ⁾‖/A ≥ ‖x − x⁽ⁿ⁾‖.
 * Both only hold when `certified` is set, i.e. the bounds used enclose the
 * true spectrum of S.
 */
struct IterationTrace {
    std::vector<ComplexVector> iterates;
    std::vector<double> certified_bounds;
    std::vector<double> residual_bounds;
    std::vector<double> actual_errors; // empty unless the true x was supplied
    std::vector<std::int64_t> elapsed_ns;
    FrameBounds bounds_used;
    double rate = 0.0;
    bool certified = true;
    StopReason stop = StopReason::MaxIterations;

    std::size_t iterations() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
    const ComplexVector& result() const { return iterates.back(); }
};

/**
 * Frame algorithm x⁽ⁿ⁾ = x⁽ⁿ⁻¹⁾ + 2/(A+B)·(T*c − S x⁽ⁿ⁻¹⁾) from x⁽⁰⁾ = 0.
 *
 * T*c equals S x for the unknown x, so the update only needs the frame and the
 * coefficients. `truth`, when given, is used solely to fill actual_errors.
 */
inline IterationTrace frame_algorithm(const OperatorValuedFrame& ovf, const CoefficientField& c,
                                      const ReconstructionConfig& cfg = {},
                                      std::optional<std::span<const Complex>> truth = std::nullopt)
{
    if (cfg.max_iters == 0 || !(cfg.target_error > 0.0)) {
        throw Error(ErrorCode::InvalidBounds, "max_iters and target_error must be positive");
    }
    if (truth && truth->size() != ovf.dim_h()) {
        throw Error(ErrorCode::DimensionMismatch, "reference vector has the wrong dimension");
    }

    const auto start = std::chrono::steady_clock::now();
    const FrameBounds actual = ovf.bounds();
    IterationTrace trace;
    trace.bounds_used = actual;
    if (cfg.bounds_override) {
        const FrameBounds& b = *cfg.bounds_override;
        if (!(b.lower > 0.0) || !(b.lower <= b.upper) || !std::isfinite(b.upper)) {
            throw Error(ErrorCode::InvalidBounds, "override must satisfy 0 < lower ≤ upper");
        }
        trace.bounds_used = b;
        trace.certified = b.lower <= actual.lower && b.upper >= actual.upper;
    }
    const double a = trace.bounds_used.lower;
    const double b = trace.bounds_used.upper;
    trace.rate = (b - a) / (b + a);
    const double relaxation = 2.0 / (a + b);

    const ComplexMatrix& s = ovf.frame_operator();
    const ComplexVector synthesized = synthesis(ovf, c);
    const double proxy = norm(synthesized) / a;

    auto record = [&](ComplexVector x, const ComplexVector& residual, double certified) {
        trace.residual_bounds.push_back(norm(residual) / a);
        trace.certified_bounds.push_back(certified);
        if (truth) {
            trace.actual_errors.push_back(norm(subtract(*truth, x)));
        }
        trace.iterates.push_back(std::move(x));
        trace.elapsed_ns.push_back(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
    };

    ComplexVector x(ovf.dim_h(), Complex{});
    ComplexVector residual = synthesized; // T*c − S·0
    double certified = proxy;
    record(x, residual, certified);

    std::size_t n = 0;
    while (true) {
        if (certified <= cfg.target_error) {
            trace.stop = StopReason::TargetReached;
            break;
        }
        if (n == cfg.max_iters) {
            trace.stop = StopReason::MaxIterations;
            break;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += relaxation * residual[i];
        }
        residual = subtract(synthesized, s * x);
        ++n;
        certified = proxy * std::pow(trace.rate, static_cast<double>(n));
        record(x, residual, certified);
    }
    return trace;
}

} // namespace framekit

#endif // FRAMEKIT_RECONSTRUCTION_HPP
