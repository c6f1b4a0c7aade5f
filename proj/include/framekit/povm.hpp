#ifndef FRAMEKIT_POVM_HPP
#define FRAMEKIT_POVM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "tolerances.hpp"

namespace framekit {

/// A set of atom labels, i.e. an element of Σ = 2^Ω.
struct Event {
    std::vector<std::string> members;
};

/**
 * Positive operator-valued measure on a finite set of atoms. Stores M({t}) per
 * atom; M(E) is the sum over E. Construction only checks shapes and labels so
 * that malformed measures can still be handed to validate().
 */
class Povm {
public:
    Povm(std::vector<std::string> atoms, std::size_t dim_h, std::vector<ComplexMatrix> elements)
        : atoms_(std::move(atoms)), dim_h_(dim_h), elements_(std::move(elements))
    {
        if (dim_h_ == 0) {
            throw Error(ErrorCode::DimensionMismatch, "dim_h must be positive");
        }
        if (atoms_.size() != elements_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "atom and element counts differ");
        }
        require_unique_labels(atoms_);
        for (std::size_t t = 0; t < elements_.size(); ++t) {
            if (elements_[t].rows() != dim_h_ || elements_[t].cols() != dim_h_) {
                throw Error(ErrorCode::DimensionMismatch,
                            "element of atom '" + atoms_[t] + "' must be " + std::to_string(dim_h_) + "x"
                                + std::to_string(dim_h_));
            }
        }
    }

    std::size_t size() const noexcept { return atoms_.size(); }
    std::size_t dim_h() const noexcept { return dim_h_; }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
    const ComplexMatrix& element(std::size_t t) const { return elements_.at(t); }

    std::size_t index_of(const std::string& label) const
    {
        const auto it = std::find(atoms_.begin(), atoms_.end(), label);
        if (it == atoms_.end()) {
            throw Error(ErrorCode::UnknownAtom, "atom '" + label + "' is not in the space");
        }
        return static_cast<std::size_t>(it - atoms_.begin());
    }

    std::vector<std::size_t> resolve(const Event& e) const
    {
        std::vector<std::size_t> idx;
        idx.reserve(e.members.size());
        for (const auto& label : e.members) {
            idx.push_back(index_of(label));
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        return idx;
    }

    /// M(E) for E given by distinct atom indices.
    ComplexMatrix evaluate(std::span<const std::size_t> event) const
    {
        ComplexMatrix m(dim_h_, dim_h_);
        for (std::size_t t : event) {
            m += elements_.at(t);
        }
        return m;
    }

    ComplexMatrix total() const
    {
        ComplexMatrix m(dim_h_, dim_h_);
        for (const auto& e : elements_) {
            m += e;
        }
        return m;
    }

private:
    std::vector<std::string> atoms_;
    std::size_t dim_h_;
    std::vector<ComplexMatrix> elements_;
};

inline ComplexMatrix evaluate(const Povm& m, const Event& e) { return m.evaluate(m.resolve(e)); }

inline Event whole_space(const Povm& m) { return Event{m.atoms()}; }

enum class ValidationFailure { NotHermitian, NotPsd, NotAdditive, EmptyNotZero };

constexpr std::string_view to_string(ValidationFailure f) noexcept
{
    switch (f) {
    case ValidationFailure::NotHermitian: return "NotHermitian";
    case ValidationFailure::NotPsd: return "NotPsd";
    case ValidationFailure::NotAdditive: return "NotAdditive";
    case ValidationFailure::EmptyNotZero: return "EmptyNotZero";
    }
    return "Unknown";
}

struct ValidationIssue {
    ValidationFailure kind;
    std::string atom; // empty for whole-measure checks
    double value;
    double tolerance;
};

struct ValidationReport {
    std::vector<std::string> atoms;
    std::vector<double> hermitian_residuals;
    std::vector<double> min_eigenvalues;
    double empty_residual = 0.0;
    double additivity_residual = 0.0;
    double additivity_tolerance = 0.0;
    std::size_t pairs_checked = 0;
    std::uint64_t seed = 0;
    std::vector<ValidationIssue> issues;

    bool passed() const noexcept { return issues.empty(); }

    bool has(ValidationFailure kind) const noexcept
    {
        return std::any_of(issues.begin(), issues.end(), [kind](const auto& i) { return i.kind == kind; });
    }
};

inline constexpr double kAdditivityTolerance = 1e-12;
inline constexpr std::size_t kAdditivityPairs = 50;
inline constexpr std::uint64_t kValidationSeed = 0x5eedf00dULL;

/**
 * Checks the measure axioms on any map E ↦ M(E) over the given atoms. The map
 * is called with a sorted span of atom indices.
 *
 * Per atom: Hermiticity residual and minimum eigenvalue of M({t}). Globally:
 * ‖M(∅)‖_F and the largest ‖M(E) + M(F) − M(E∪F)‖_F over random disjoint
 * pairs drawn from `seed`.
 */
template <typename EventMap>
ValidationReport validate_event_map(const std::vector<std::string>& atoms, EventMap&& map,
                                    const Tolerances& tol = {}, std::uint64_t seed = kValidationSeed,
                                    std::size_t pairs = kAdditivityPairs)
{
    ValidationReport report;
    report.atoms = atoms;
    report.seed = seed;

    std::vector<std::size_t> all(atoms.size());
    for (std::size_t t = 0; t < all.size(); ++t) {
        all[t] = t;
    }
    const ComplexMatrix total = map(std::span<const std::size_t>(all));
    report.additivity_tolerance = kAdditivityTolerance * (1.0 + frobenius_norm(total));

    for (std::size_t t = 0; t < atoms.size(); ++t) {
        const std::size_t single[] = {t};
        const ComplexMatrix m = map(std::span<const std::size_t>(single));
        const double scale = frobenius_norm(m);
        const double herm = hermitian_residual(m);
        const double herm_tol = tol.herm * scale;
        report.hermitian_residuals.push_back(herm);
        if (!(herm <= herm_tol)) {
            report.issues.push_back({ValidationFailure::NotHermitian, atoms[t], herm, herm_tol});
        }
        const double lambda = min_eigenvalue(hermitian_part(m), tol);
        const double psd_tol = tol.psd * (1.0 + scale);
        report.min_eigenvalues.push_back(lambda);
        if (lambda < -psd_tol) {
            report.issues.push_back({ValidationFailure::NotPsd, atoms[t], lambda, -psd_tol});
        }
    }

    report.empty_residual = frobenius_norm(map(std::span<const std::size_t>()));
    if (report.empty_residual > report.additivity_tolerance) {
        report.issues.push_back(
            {ValidationFailure::EmptyNotZero, "", report.empty_residual, report.additivity_tolerance});
    }

    PortableRng rng(seed);
    std::vector<std::size_t> e, f, both;
    for (std::size_t k = 0; k < pairs; ++k) {
        e.clear();
        f.clear();
        both.clear();
        for (std::size_t t = 0; t < atoms.size(); ++t) {
            switch (rng.below(3)) {
            case 0: e.push_back(t); both.push_back(t); break;
            case 1: f.push_back(t); both.push_back(t); break;
            default: break;
            }
        }
        ComplexMatrix diff = map(std::span<const std::size_t>(e));
        diff += map(std::span<const std::size_t>(f));
        diff -= map(std::span<const std::size_t>(both));
        report.additivity_residual = std::max(report.additivity_residual, frobenius_norm(diff));
    }
    report.pairs_checked = pairs;
    if (report.additivity_residual > report.additivity_tolerance) {
        report.issues.push_back(
            {ValidationFailure::NotAdditive, "", report.additivity_residual, report.additivity_tolerance});
    }
    return report;
}

inline ValidationReport validate(const Povm& m, const Tolerances& tol = {}, std::uint64_t seed = kValidationSeed)
{
    return validate_event_map(
        m.atoms(), [&m](std::span<const std::size_t> e) { return m.evaluate(e); }, tol, seed);
}

struct FramedCheck {
    bool framed = false;
    FrameBounds bounds; // λ_min, λ_max of M(Ω)
};

/// Framed iff λ_min(M(Ω)) > tol.frame·λ_max(M(Ω)).
inline FramedCheck is_framed(const Povm& m, const Tolerances& tol = {})
{
    const auto eig = hermitian_eigen(hermitian_part(m.total()), tol);
    FramedCheck out;
    out.bounds = {eig.eigenvalues.front(), eig.eigenvalues.back()};
    out.framed = out.bounds.upper > 0.0 && out.bounds.lower > tol.frame * out.bounds.upper;
    return out;
}

inline constexpr double kUnitVectorTolerance = 1e-10;

/**
 * p_t = Re⟨M({t})x, x⟩ for a unit state x. Values in [−tol_psd, 0) are clamped
 * to 0; anything more negative means an element is not PSD.
 */
inline std::vector<double> measure_probabilities(const Povm& m, std::span<const Complex> x, const Tolerances& tol = {})
{
    if (x.size() != m.dim_h()) {
        throw Error(ErrorCode::DimensionMismatch, "state dimension differs from dim_h");
    }
    const double nx = norm(x);
    if (!(std::abs(nx - 1.0) <= kUnitVectorTolerance)) {
        throw Error(ErrorCode::NotUnitVector, "‖x‖ = " + std::to_string(nx));
    }
    std::vector<double> p;
    p.reserve(m.size());
    for (std::size_t t = 0; t < m.size(); ++t) {
        const ComplexMatrix& e = m.element(t);
        const double v = inner(e * x, x).real();
        const double floor = tol.psd * (1.0 + frobenius_norm(e));
        if (v < -floor) {
            throw Error(ErrorCode::NotPsd, "negative probability at atom '" + m.atoms()[t] + "'");
        }
        p.push_back(std::max(v, 0.0));
    }
    return p;
}

} // namespace framekit

#endif // FRAMEKIT_POVM_HPP
