#include <gtest/gtest.h>

#include <cmath>

#include <framekit/correspondence.hpp>
#include <framekit/generate.hpp>
#include <framekit/povm.hpp>

#include "oracles.hpp"

using namespace framekit;

namespace {

Povm projective_qubit()
{
    return Povm({"up", "down"}, 2, {ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})});
}

} // namespace

TEST(Evaluate, EmptyEventIsZero)
{
    const auto m = random_povm(3, 5, 1);
    EXPECT_EQ(evaluate(m, Event{}), ComplexMatrix(3, 3));
}

TEST(Evaluate, WholeSpaceOfProjectivePovm)
{
    const auto m = projective_qubit();
    EXPECT_EQ(evaluate(m, whole_space(m)), ComplexMatrix::identity(2));
}

TEST(Evaluate, SingletonsSumToWholeSpace)
{
    const auto m = random_povm(2, 2, 4);
    const auto sum = evaluate(m, Event{{"0"}}) + evaluate(m, Event{{"1"}});
    EXPECT_LE(frobenius_norm(sum - evaluate(m, whole_space(m))), 1e-15);
}

TEST(Evaluate, UnknownAtom)
{
    try {
        evaluate(projective_qubit(), Event{{"sideways"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownAtom);
    }
}

TEST(Povm, ShapeChecks)
{
    EXPECT_THROW(Povm({"a"}, 2, {ComplexMatrix::identity(3)}), Error);
    EXPECT_THROW(Povm({"a", "b"}, 2, {ComplexMatrix::identity(2)}), Error);
    EXPECT_THROW(Povm({"a", "a"}, 1, {ComplexMatrix::identity(1), ComplexMatrix::identity(1)}), Error);
}

TEST(Validate, ProjectiveQubitPassesWithZeroResiduals)
{
    const auto r = validate(projective_qubit());
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.hermitian_residuals, (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(r.min_eigenvalues, (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(r.additivity_residual, 0.0);
    EXPECT_EQ(r.empty_residual, 0.0);
    EXPECT_EQ(r.pairs_checked, kAdditivityPairs);
    EXPECT_EQ(r.seed, kValidationSeed);
}

TEST(Validate, NegativeEigenvalueFailsNotPsd)
{
    const Povm m({"a", "b"}, 2, {ComplexMatrix::diagonal({1.0, -1e-3}), ComplexMatrix::diagonal({0.0, 1.0})});
    const auto r = validate(m);
    EXPECT_FALSE(r.passed());
    EXPECT_TRUE(r.has(ValidationFailure::NotPsd));
    EXPECT_FALSE(r.has(ValidationFailure::NotHermitian));
    EXPECT_NEAR(r.min_eigenvalues[0], -1e-3, 1e-15);
}

TEST(Validate, SkewPerturbationFailsNotHermitian)
{
    // K = 1e−3·[[0, 1], [−1, 0]] is anti-Hermitian, so ‖K − K*‖_F = ‖2K‖_F = 2√2·1e−3.
    auto e = ComplexMatrix::diagonal({0.5, 0.5});
    e += 1e-3 * ComplexMatrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}});
    const Povm m({"a", "b"}, 2, {e, ComplexMatrix::diagonal({0.5, 0.5})});
    const auto r = validate(m);
    EXPECT_TRUE(r.has(ValidationFailure::NotHermitian));
    EXPECT_NEAR(r.hermitian_residuals[0], 2.0 * std::sqrt(2.0) * 1e-3, 1e-15);
    EXPECT_EQ(r.hermitian_residuals[1], 0.0);
}

TEST(Validate, BrokenAdditivityIsClassified)
{
    const auto m = random_povm(3, 6, 12);
    // Adds 0.01·I to every nonempty event: M(∅) stays 0, additivity breaks.
    auto broken = [&m](std::span<const std::size_t> e) {
        ComplexMatrix out = m.evaluate(e);
        if (!e.empty()) {
            out += 0.01 * ComplexMatrix::identity(3);
        }
        return out;
    };
    const auto r = validate_event_map(m.atoms(), broken);
    EXPECT_TRUE(r.has(ValidationFailure::NotAdditive));
    EXPECT_FALSE(r.has(ValidationFailure::NotPsd));
    EXPECT_FALSE(r.has(ValidationFailure::EmptyNotZero));
    EXPECT_NEAR(r.additivity_residual, 0.01 * std::sqrt(3.0), 1e-12);

    auto shifted = [&m](std::span<const std::size_t> e) {
        return m.evaluate(e) + 0.01 * ComplexMatrix::identity(3);
    };
    EXPECT_TRUE(validate_event_map(m.atoms(), shifted).has(ValidationFailure::EmptyNotZero));
}

TEST(Validate, SeedIsRecordedAndReproducible)
{
    const auto m = random_povm(4, 8, 2);
    const auto a = validate(m, {}, 77);
    const auto b = validate(m, {}, 77);
    EXPECT_EQ(a.seed, 77u);
    EXPECT_EQ(a.additivity_residual, b.additivity_residual);
}

TEST(IsFramed, Examples)
{
    const auto a = is_framed(projective_qubit());
    EXPECT_TRUE(a.framed);
    EXPECT_EQ(a.bounds.lower, 1.0);
    EXPECT_EQ(a.bounds.upper, 1.0);

    const Povm singular({"a", "b"}, 2, {ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({1.0, 0.0})});
    EXPECT_FALSE(is_framed(singular).framed);

    const auto from_frame = ovf_to_povm(from_vector_frame({2, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}}));
    const auto c = is_framed(from_frame);
    EXPECT_TRUE(c.framed);
    EXPECT_EQ(c.bounds.lower, 1.0);
    EXPECT_EQ(c.bounds.upper, 2.0);
}

TEST(MeasureProbabilities, ProjectiveQubit)
{
    const auto m = projective_qubit();
    EXPECT_EQ(measure_probabilities(m, ComplexVector{1.0, 0.0}), (std::vector<double>{1.0, 0.0}));
    const double h = 1.0 / std::sqrt(2.0);
    const auto p = measure_probabilities(m, ComplexVector{h, h});
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[1], 0.5, 1e-12);
}

TEST(MeasureProbabilities, Errors)
{
    const auto m = projective_qubit();
    try {
        measure_probabilities(m, ComplexVector{1.0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnitVector);
    }
    try {
        measure_probabilities(m, ComplexVector{1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(MeasureProbabilities, SumMatchesTotalQuadraticForm)
{
    PortableRng rng(6);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = random_povm(2 + seed % 5, 3 + seed % 7, seed);
        const auto x = random_unit_vector(m.dim_h(), rng);
        const auto p = measure_probabilities(m, x);
        double sum = 0.0;
        for (double v : p) {
            EXPECT_GE(v, 0.0);
            sum += v;
        }
        EXPECT_NEAR(sum, oracle::quadratic_form(m.total(), x, x).real(), 1e-11);
    }
}

TEST(PovmProperties, AdditivityAndMonotonicity)
{
    PortableRng rng(70);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto m = random_povm(2 + seed % 4, 4 + seed % 6, 500 + seed);
        const double tol = 1e-12 * (1.0 + frobenius_norm(m.total()));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::size_t> e, f, ef, sub;
            for (std::size_t t = 0; t < m.size(); ++t) {
                switch (rng.below(3)) {
                case 0: e.push_back(t); ef.push_back(t); break;
                case 1: f.push_back(t); ef.push_back(t); break;
                default: break;
                }
            }
            EXPECT_LE(frobenius_norm(m.evaluate(e) + m.evaluate(f) - m.evaluate(ef)), tol);
            // E ⊆ E∪F ⇒ ⟨M(E)x,x⟩ ≤ ⟨M(E∪F)x,x⟩.
            const auto x = random_unit_vector(m.dim_h(), rng);
            const double small = oracle::quadratic_form(m.evaluate(e), x, x).real();
            const double big = oracle::quadratic_form(m.evaluate(ef), x, x).real();
            EXPECT_LE(small, big + 1e-12);
        }
    }
}
