#ifndef FRAMEKIT_CORRESPONDENCE_HPP
#define FRAMEKIT_CORRESPONDENCE_HPP

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
#include "povm.hpp"
#include "rng.hpp"
#include "tolerances.hpp"

namespace framekit {

/// The POVM an OVF gives rise to: M({t}) = μ({t})·T(t)*T(t).
inline Povm ovf_to_povm(const OperatorValuedFrame& ovf)
{
    std::vector<ComplexMatrix> elements;
    elements.reserve(ovf.size());
    for (std::size_t t = 0; t < ovf.size(); ++t) {
        ComplexMatrix e = adjoint_times(ovf.block(t), ovf.block(t));
        e *= ovf.space().weight(t);
        elements.push_back(hermitian_part(e));
    }
    return Povm(ovf.space().atoms(), ovf.dim_h(), std::move(elements));
}

/**
 * How the dominating scalar measure μ is built from a POVM.
 *
 * Trace: μ({t}) = tr M({t}).
 * DyadicSequence: μ({t}) = Σ_j 2^{−j}⟨M({t})x_j, x_j⟩, j = 1, 2, …, over a
 * finite spanning family of vectors in the closed unit ball.
 */
struct ReferenceMeasureRule {
    enum class Kind { Trace, DyadicSequence };

    Kind kind = Kind::Trace;
    std::vector<ComplexVector> sequence;

    static ReferenceMeasureRule trace() { return {}; }

    static ReferenceMeasureRule dyadic(std::vector<ComplexVector> sequence)
    {
        return {Kind::DyadicSequence, std::move(sequence)};
    }

    /// Dyadic rule over e₁, …, eₙ.
    static ReferenceMeasureRule dyadic_standard_basis(std::size_t n)
    {
        std::vector<ComplexVector> seq(n, ComplexVector(n, Complex{}));
        for (std::size_t j = 0; j < n; ++j) {
            seq[j][j] = 1.0;
        }
        return dyadic(std::move(seq));
    }
};

constexpr std::string_view to_string(ReferenceMeasureRule::Kind k) noexcept
{
    return k == ReferenceMeasureRule::Kind::Trace ? "trace" : "dyadic";
}

/// Non-negative atom weights; unlike AtomicMeasureSpace, zeros are allowed.
struct ReferenceMeasure {
    std::vector<std::string> atoms;
    std::vector<double> weights;
};

inline constexpr double kUnitBallSlack = 1e-12;

inline void check_dyadic_sequence(const std::vector<ComplexVector>& seq, std::size_t dim_h, const Tolerances& tol)
{
    if (seq.empty()) {
        throw Error(ErrorCode::SequenceDoesNotSpan, "dyadic rule needs a nonempty sequence");
    }
    ComplexMatrix gram(dim_h, dim_h);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (seq[j].size() != dim_h) {
            throw Error(ErrorCode::DimensionMismatch, "sequence vector " + std::to_string(j) + " has the wrong length");
        }
        if (norm(seq[j]) > 1.0 + kUnitBallSlack) {
            throw Error(ErrorCode::InvalidRule, "sequence vector " + std::to_string(j) + " lies outside the unit ball");
        }
        gram += ComplexMatrix::outer(seq[j], seq[j]);
    }
    const auto eig = hermitian_eigen(hermitian_part(gram), tol);
    if (!(eig.eigenvalues.back() > 0.0) || !(eig.eigenvalues.front() > tol.frame * eig.eigenvalues.back())) {
        throw Error(ErrorCode::SequenceDoesNotSpan,
                    std::to_string(seq.size()) + " vectors do not span C^" + std::to_string(dim_h));
    }
}

/**
 * Weights of the chosen rule on every atom. Values that round to slightly
 * below zero (|w| ≤ tol_psd) are reported as exact zeros.
 */
inline ReferenceMeasure reference_measure(const Povm& m, const ReferenceMeasureRule& rule, const Tolerances& tol = {})
{
    if (rule.kind == ReferenceMeasureRule::Kind::DyadicSequence) {
        check_dyadic_sequence(rule.sequence, m.dim_h(), tol);
    }
    ReferenceMeasure out{m.atoms(), {}};
    out.weights.reserve(m.size());
    for (const ComplexMatrix& e : m.elements()) {
        double w = 0.0;
        if (rule.kind == ReferenceMeasureRule::Kind::Trace) {
            w = trace(e).real();
        } else {
            double scale = 0.5;
            for (const auto& x : rule.sequence) {
                w += scale * inner(e * x, x).real();
                scale *= 0.5;
            }
        }
        if (w < 0.0) {
            const double floor = tol.psd * (1.0 + frobenius_norm(e));
            if (w < -floor) {
                throw Error(ErrorCode::InvalidPovm, "reference weight is negative; element is not PSD");
            }
            w = 0.0;
        }
        out.weights.push_back(w);
    }
    return out;
}

/**
 * A dominating measure μ together with a density t ↦ Q(t), so that
 * M(E) = Σ_{t∈E} μ({t})·Q(t). Only atoms of positive measure are stored.
 */
class Decomposition {
public:
    Decomposition(AtomicMeasureSpace measure, std::size_t dim_h, std::vector<ComplexMatrix> densities,
                  const Tolerances& tol = {})
        : measure_(std::move(measure)), dim_h_(dim_h), densities_(std::move(densities))
    {
        if (dim_h_ == 0) {
            throw Error(ErrorCode::DimensionMismatch, "dim_h must be positive");
        }
        if (densities_.size() != measure_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "density count differs from atom count");
        }
        for (std::size_t t = 0; t < densities_.size(); ++t) {
            const ComplexMatrix& q = densities_[t];
            const std::string& label = measure_.atoms()[t];
            if (q.rows() != dim_h_ || q.cols() != dim_h_) {
                throw Error(ErrorCode::DimensionMismatch, "density of atom '" + label + "' has the wrong shape");
            }
            if (!is_hermitian(q, tol)) {
                throw Error(ErrorCode::NotHermitian, "density of atom '" + label + "'");
            }
            const double lambda = min_eigenvalue(q, tol);
            if (lambda < -tol.psd * (1.0 + frobenius_norm(q))) {
                throw Error(ErrorCode::NotPsd, "density of atom '" + label + "'");
            }
        }
    }

    const AtomicMeasureSpace& measure() const noexcept { return measure_; }
    std::size_t dim_h() const noexcept { return dim_h_; }
    std::size_t size() const noexcept { return densities_.size(); }
    const std::vector<ComplexMatrix>& densities() const noexcept { return densities_; }
    const ComplexMatrix& density(std::size_t t) const { return densities_.at(t); }

    /// Σ_{t∈E} μ({t})·Q(t), E given by indices into this decomposition.
    ComplexMatrix reintegrate(std::span<const std::size_t> event) const
    {
        ComplexMatrix m(dim_h_, dim_h_);
        for (std::size_t t : event) {
            m.add_scaled(densities_.at(t), measure_.weight(t));
        }
        return m;
    }

    ComplexMatrix total() const
    {
        ComplexMatrix m(dim_h_, dim_h_);
        for (std::size_t t = 0; t < densities_.size(); ++t) {
            m.add_scaled(densities_[t], measure_.weight(t));
        }
        return m;
    }

private:
    AtomicMeasureSpace measure_;
    std::size_t dim_h_;
    std::vector<ComplexMatrix> densities_;
};

/**
 * Radon-Nikodym decomposition of a POVM: μ from `rule`, Q(t) = M({t})/μ({t}).
 * Null atoms are dropped; the rule's domination guarantees their elements
 * vanish, and a violation raises InvalidPovm.
 */
inline Decomposition decompose(const Povm& m, const ReferenceMeasureRule& rule = ReferenceMeasureRule::trace(),
                               const Tolerances& tol = {})
{
    const ValidationReport report = validate(m, tol);
    if (!report.passed()) {
        const auto& issue = report.issues.front();
        throw Error(ErrorCode::InvalidPovm,
                    std::string(to_string(issue.kind)) + (issue.atom.empty() ? "" : " at atom '" + issue.atom + "'"));
    }
    const ReferenceMeasure mu = reference_measure(m, rule, tol);
    const double null_floor = tol.psd * (1.0 + frobenius_norm(m.total()));

    std::vector<std::string> atoms;
    std::vector<double> weights;
    std::vector<ComplexMatrix> densities;
    for (std::size_t t = 0; t < m.size(); ++t) {
        const double w = mu.weights[t];
        if (w == 0.0) {
            if (frobenius_norm(m.element(t)) > null_floor) {
                throw Error(ErrorCode::InvalidPovm, "reference measure does not dominate atom '" + m.atoms()[t] + "'");
            }
            continue;
        }
        ComplexMatrix q = m.element(t);
        q *= 1.0 / w;
        atoms.push_back(m.atoms()[t]);
        weights.push_back(w);
        densities.push_back(hermitian_part(q));
    }
    return Decomposition(AtomicMeasureSpace(std::move(atoms), std::move(weights)), m.dim_h(), std::move(densities), tol);
}

/// OVF with T(t) = Q(t)^{1/2}, the unique PSD root; every block is n×n.
inline OperatorValuedFrame decomposition_to_ovf(const Decomposition& d, const Tolerances& tol = {})
{
    const auto eig = hermitian_eigen(hermitian_part(d.total()), tol);
    const double lower = eig.eigenvalues.front();
    const double upper = eig.eigenvalues.back();
    if (!(upper > 0.0) || !(lower > tol.frame * upper)) {
        throw Error(ErrorCode::NotFramed, "reintegrated M(Ω) has λ_min = " + std::to_string(lower));
    }
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(d.size());
    for (const auto& q : d.densities()) {
        blocks.push_back(psd_sqrt(q, tol));
    }
    return OperatorValuedFrame(d.measure(), d.dim_h(), std::move(blocks), tol);
}

inline constexpr std::size_t kExhaustiveEventLimit = 16;
inline constexpr std::size_t kSampledEvents = 1000;
inline constexpr std::uint64_t kEventSamplingSeed = 0xe7e47ULL;

struct ReintegrationReport {
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::size_t events_checked = 0;
    bool exhaustive = false;

    bool passed() const noexcept { return max_residual <= tolerance; }
};

/**
 * max_E ‖M(E) − Σ_{t∈E} μ({t})Q(t)‖_F over every event when the POVM has at
 * most 16 atoms, otherwise over 1000 seeded random events. Atoms dropped from
 * the decomposition contribute nothing to the reintegrated side.
 */
inline ReintegrationReport check_reintegration(const Povm& m, const Decomposition& d, const Tolerances& tol = {})
{
    if (m.dim_h() != d.dim_h()) {
        throw Error(ErrorCode::DimensionMismatch, "POVM and decomposition act on different spaces");
    }
    // Position of each POVM atom inside the decomposition, or npos when dropped.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> map(m.size(), npos);
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (auto idx = d.measure().index_of(m.atoms()[t])) {
            map[t] = *idx;
        }
    }
    for (const auto& label : d.measure().atoms()) {
        m.index_of(label); // UnknownAtom when the decomposition has extra atoms
    }

    ReintegrationReport report;
    report.tolerance = tol.decomp * (1.0 + frobenius_norm(m.total()));
    std::vector<std::size_t> event, mapped;
    auto check = [&] {
        mapped.clear();
        for (std::size_t t : event) {
            if (map[t] != npos) {
                mapped.push_back(map[t]);
            }
        }
        const double r = frobenius_norm(m.evaluate(event) - d.reintegrate(mapped));
        report.max_residual = std::max(report.max_residual, r);
        ++report.events_checked;
    };

    if (m.size() <= kExhaustiveEventLimit) {
        report.exhaustive = true;
        const std::uint64_t count = std::uint64_t{1} << m.size();
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            event.clear();
            for (std::size_t t = 0; t < m.size(); ++t) {
                if (mask >> t & 1U) {
                    event.push_back(t);
                }
            }
            check();
        }
    } else {
        PortableRng rng(kEventSamplingSeed);
        for (std::size_t k = 0; k < kSampledEvents; ++k) {
            event.clear();
            for (std::size_t t = 0; t < m.size(); ++t) {
                if (rng.below(2) == 1) {
                    event.push_back(t);
                }
            }
            check();
        }
    }
    return report;
}

struct UniquenessReport {
    std::vector<std::string> atoms;
    std::vector<double> per_atom_residuals;
    std::vector<std::pair<double, double>> radon_nikodym_ratios; // (dμ₁/d(μ₁+μ₂), dμ₂/d(μ₁+μ₂))
    double max_residual = 0.0;
    double tolerance = 0.0;

    bool passed() const noexcept { return max_residual <= tolerance; }
};

namespace detail {

struct WeightedDensities {
    const std::vector<std::string>& atoms;
    const std::vector<double>& weights;
    const std::vector<ComplexMatrix>& densities;
    std::size_t dim_h;
};

inline double total_norm(const WeightedDensities& w)
{
    ComplexMatrix m(w.dim_h, w.dim_h);
    for (std::size_t t = 0; t < w.densities.size(); ++t) {
        m.add_scaled(w.densities[t], w.weights[t]);
    }
    return frobenius_norm(m);
}

// Q₁·w₁/(w₁+w₂) − Q₂·w₂/(w₁+w₂) per atom, aligned by label. An atom missing
// from one side counts as weight 0 there.
inline UniquenessReport compare_densities(const WeightedDensities& a, const WeightedDensities& b, const Tolerances& tol)
{
    if (a.dim_h != b.dim_h) {
        throw Error(ErrorCode::DimensionMismatch, "decompositions act on different spaces");
    }
    auto find = [](const std::vector<std::string>& atoms, const std::string& label) -> std::ptrdiff_t {
        const auto it = std::find(atoms.begin(), atoms.end(), label);
        return it == atoms.end() ? -1 : it - atoms.begin();
    };

    UniquenessReport report;
    bool shared = false;
    for (const auto& label : a.atoms) {
        report.atoms.push_back(label);
        shared = shared || find(b.atoms, label) >= 0;
    }
    for (const auto& label : b.atoms) {
        if (find(a.atoms, label) < 0) {
            report.atoms.push_back(label);
        }
    }
    if (!shared) {
        throw Error(ErrorCode::AtomMismatch, "the two atom label sets are disjoint");
    }

    const ComplexMatrix zero(a.dim_h, a.dim_h);
    for (const auto& label : report.atoms) {
        const std::ptrdiff_t i = find(a.atoms, label);
        const std::ptrdiff_t j = find(b.atoms, label);
        const double w1 = i >= 0 ? a.weights[static_cast<std::size_t>(i)] : 0.0;
        const double w2 = j >= 0 ? b.weights[static_cast<std::size_t>(j)] : 0.0;
        const ComplexMatrix& q1 = i >= 0 ? a.densities[static_cast<std::size_t>(i)] : zero;
        const ComplexMatrix& q2 = j >= 0 ? b.densities[static_cast<std::size_t>(j)] : zero;
        const double sum = w1 + w2;
        const double r1 = w1 / sum;
        const double r2 = w2 / sum;
        ComplexMatrix diff = q1;
        diff *= r1;
        diff.add_scaled(q2, -r2);
        const double residual = frobenius_norm(diff);
        report.per_atom_residuals.push_back(residual);
        report.radon_nikodym_ratios.emplace_back(r1, r2);
        report.max_residual = std::max(report.max_residual, residual);
    }
    report.tolerance = tol.decomp * (1.0 + std::max(total_norm(a), total_norm(b)));
    return report;
}

} // namespace detail

inline UniquenessReport verify_uniqueness(const Decomposition& d1, const Decomposition& d2, const Tolerances& tol = {})
{
    return detail::compare_densities(
        {d1.measure().atoms(), d1.measure().weights(), d1.densities(), d1.dim_h()},
        {d2.measure().atoms(), d2.measure().weights(), d2.densities(), d2.dim_h()}, tol);
}

/// Compares T₁(t)*T₁(t) and T₂(t)*T₂(t) with the same Radon-Nikodym weighting.
inline UniquenessReport verify_ovf_equivalence(const OperatorValuedFrame& f1, const OperatorValuedFrame& f2,
                                               const Tolerances& tol = {})
{
    auto grams = [](const OperatorValuedFrame& f) {
        std::vector<ComplexMatrix> q;
        q.reserve(f.size());
        for (const auto& block : f.blocks()) {
            q.push_back(adjoint_times(block, block));
        }
        return q;
    };
    const auto q1 = grams(f1);
    const auto q2 = grams(f2);
    return detail::compare_densities({f1.space().atoms(), f1.space().weights(), q1, f1.dim_h()},
                                     {f2.space().atoms(), f2.space().weights(), q2, f2.dim_h()}, tol);
}

} // namespace framekit

#endif // FRAMEKIT_CORRESPONDENCE_HPP
