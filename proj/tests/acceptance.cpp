// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <framekit/framekit.hpp>

#include "oracles.hpp"

using namespace framekit;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Recorder {
public:
    void require(bool ok, const std::string& what)
    {
        if (!ok && outcome_.passed) {
            outcome_.detail = what;
        }
        outcome_.passed = outcome_.passed && ok;
    }

    void note(const std::string& s)
    {
        if (outcome_.passed) {
            outcome_.detail = s;
        }
    }

    Outcome result() const { return outcome_; }

private:
    Outcome outcome_;
};

std::string fmt(const char* f, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ReconstructionConfig fixed_steps(std::size_t n)
{
    ReconstructionConfig cfg;
    cfg.max_iters = n;
    cfg.target_error = 1e-300;
    return cfg;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1. Frame-algorithm rate.
Outcome frame_algorithm_rate()
{
    Recorder r;
    const auto t0 = std::chrono::steady_clock::now();
    PortableRng rng(2024);
    double worst = -INFINITY;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = from_vector_frame(random_vector_frame(8, 12, seed));
        const auto x = random_vector(8, rng);
        const auto trace = frame_algorithm(f, analysis(f, x), fixed_steps(50), std::span<const Complex>(x));
        const double rate = f.bounds().rate();
        for (std::size_t n = 0; n <= 50; ++n) {
            const double excess = trace.actual_errors[n] - std::pow(rate, double(n)) * norm(x);
            worst = std::max(worst, excess);
            r.require(excess <= 1e-9, "random frame " + std::to_string(seed) + " exceeds the bound at n=" + std::to_string(n));
        }
    }
    const auto f = from_vector_frame({2, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}});
    const ComplexVector x{0.0, 1.0};
    const auto trace = frame_algorithm(f, analysis(f, x), fixed_steps(50), std::span<const Complex>(x));
    double e2_dev = 0.0;
    for (std::size_t n = 0; n <= 50; ++n) {
        const double e2 = std::abs(x[1] - trace.iterates[n][1]);
        e2_dev = std::max(e2_dev, std::abs(e2 - std::pow(1.0 / 3.0, double(n))));
        r.require(trace.actual_errors[n] <= std::pow(1.0 / 3.0, double(n)) + 1e-9, "doubled-basis bound");
    }
    r.require(e2_dev <= 1e-12, "e2 component deviates from (1/3)^n");
    const double secs = seconds_since(t0);
    r.require(secs < 5.0, "runtime " + fmt("%.2f s", secs));
    r.note("max excess " + fmt("%.2e", worst) + ", (1/3)^n deviation " + fmt("%.2e", e2_dev) + ", " + fmt("%.3f s", secs));
    return r.result();
}

// 2. Tight-frame one-step recovery.
Outcome tight_frame_one_step()
{
    Recorder r;
    std::vector<std::pair<std::string, OperatorValuedFrame>> frames;
    frames.emplace_back("equiangular triple", from_vector_frame({2, oracle::equiangular_triple()}));
    const std::vector<double> w(8, 1.0 / 8.0);
    frames.emplace_back("fourier n=8", discretize_continuous(oracle::fourier_characters(8), w));
    // Columns of a random unitary together with the standard basis: S = 2I.
    PortableRng rng(77);
    const auto u = hermitian_eigen(hermitian_part(random_matrix(5, 5, rng))).eigenvectors;
    VectorFrame two_bases{5, {}};
    for (std::size_t k = 0; k < 5; ++k) {
        ComplexVector col(5), e(5, Complex{});
        for (std::size_t i = 0; i < 5; ++i) {
            col[i] = u(i, k);
        }
        e[k] = 1.0;
        two_bases.vectors.push_back(col);
        two_bases.vectors.push_back(e);
    }
    frames.emplace_back("two orthonormal bases", from_vector_frame(two_bases));

    double worst = 0.0;
    for (const auto& [name, f] : frames) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto x = random_vector(f.dim_h(), rng);
            const auto trace = frame_algorithm(f, analysis(f, x), fixed_steps(1));
            const double rel = norm(subtract(trace.iterates[1], x)) / norm(x);
            worst = std::max(worst, rel);
            r.require(rel <= 1e-11, name + " first iterate error " + fmt("%.2e", rel));
        }
    }
    r.note("worst relative error " + fmt("%.2e", worst));
    return r.result();
}

// 3. Gives-rise identity over all 64 events of a 6-atom OVF.
Outcome gives_rise_identity()
{
    Recorder r;
    const auto f = random_ovf(4, 6, 3, 606);
    const auto m = ovf_to_povm(f);
    PortableRng rng(606);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_vector(4, rng);
        const auto y = random_vector(4, rng);
        for (unsigned mask = 0; mask < 64; ++mask) {
            std::vector<std::size_t> e;
            Complex rhs{};
            for (std::size_t t = 0; t < 6; ++t) {
                if (mask >> t & 1U) {
                    e.push_back(t);
                    rhs += f.space().weight(t) * inner(f.block(t) * x, f.block(t) * y);
                }
            }
            const double d = std::abs(oracle::quadratic_form(m.evaluate(e), x, y) - rhs);
            worst = std::max(worst, d);
        }
    }
    r.require(worst <= 1e-12, "max deviation " + fmt("%.2e", worst));
    r.note("max deviation " + fmt("%.2e", worst) + " over 64 events x 20 pairs");
    return r.result();
}

// 4. Reintegration over all 2^10 events.
Outcome reintegration()
{
    Recorder r;
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = random_povm(4, 10, 1010);
    r.require(is_framed(m).framed, "POVM not framed");
    const double tol = 1e-10 * (1.0 + frobenius_norm(m.total()));
    double worst = 0.0;
    for (const auto& rule : {ReferenceMeasureRule::trace(), ReferenceMeasureRule::dyadic_standard_basis(4)}) {
        const auto d = decompose(m, rule);
        const auto rep = check_reintegration(m, d);
        r.require(rep.exhaustive && rep.events_checked == 1024, "not all 1024 events checked");
        worst = std::max(worst, rep.max_residual);
    }
    r.require(worst <= tol, "residual " + fmt("%.2e", worst));
    const double secs = seconds_since(t0);
    r.require(secs < 2.0, "runtime " + fmt("%.2f s", secs));
    r.note("max residual " + fmt("%.2e", worst) + " (tol " + fmt("%.2e", tol) + "), " + fmt("%.3f s", secs));
    return r.result();
}

// 5. Uniqueness across reference-measure rules, plus the exact scaling pair.
Outcome uniqueness()
{
    Recorder r;
    double worst = 0.0;
    double worst_scaled = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t dim = 2 + seed % 7;
        const std::size_t atoms = 1 + (seed * 7) % 16;
        const auto m = random_povm(dim, atoms, 5000 + seed);
        const auto d1 = decompose(m, ReferenceMeasureRule::trace());
        const auto d2 = decompose(m, ReferenceMeasureRule::dyadic_standard_basis(dim));
        const auto rep = verify_uniqueness(d1, d2);
        worst = std::max(worst, rep.max_residual);

        std::vector<ComplexMatrix> halves;
        for (const auto& q : d1.densities()) {
            halves.push_back(0.5 * q);
        }
        const Decomposition scaled(d1.measure().scaled(2.0), dim, halves);
        worst_scaled = std::max(worst_scaled, verify_uniqueness(d1, scaled).max_residual);
    }
    r.require(worst <= 1e-10, "trace vs dyadic residual " + fmt("%.2e", worst));
    r.require(worst_scaled <= 1e-15, "scaled pair residual " + fmt("%.2e", worst_scaled));
    r.note("trace vs dyadic " + fmt("%.2e", worst) + ", scaled pair " + fmt("%.2e", worst_scaled));
    return r.result();
}

// 6. Frame → POVM → decomposition → OVF closure.
Outcome round_trip_closure()
{
    Recorder r;
    double op = 0.0, bounds = 0.0, equiv = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t dim = 2 + seed % 7;
        const auto f = random_ovf(dim, dim + 1 + seed % 6, 1 + seed % 3, 7000 + seed);
        const auto g = decomposition_to_ovf(decompose(ovf_to_povm(f)));
        op = std::max(op, frobenius_norm(frame_operator(g) - frame_operator(f)) / frobenius_norm(frame_operator(f)));
        bounds = std::max({bounds, relative(g.bounds().lower, f.bounds().lower), relative(g.bounds().upper, f.bounds().upper)});
        equiv = std::max(equiv, verify_ovf_equivalence(f, g).max_residual);
    }
    r.require(op <= 1e-9, "frame operator " + fmt("%.2e", op));
    r.require(bounds <= 1e-9, "frame bounds " + fmt("%.2e", bounds));
    r.require(equiv <= 1e-10, "OVF equivalence " + fmt("%.2e", equiv));
    r.note("operator " + fmt("%.2e", op) + ", bounds " + fmt("%.2e", bounds) + ", equivalence " + fmt("%.2e", equiv));
    return r.result();
}

// 7. POVM axioms hold for constructed POVMs and corruption is classified.
Outcome povm_axioms()
{
    Recorder r;
    double herm = 0.0, lam = INFINITY, add = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Povm m = seed % 2 == 0 ? random_povm(2 + seed % 6, 2 + seed % 10, seed)
                                     : ovf_to_povm(random_ovf(2 + seed % 6, 8, 2, seed));
        const auto rep = validate(m);
        r.require(rep.passed(), "constructed POVM failed validation");
        for (double v : rep.hermitian_residuals) herm = std::max(herm, v);
        for (double v : rep.min_eigenvalues) lam = std::min(lam, v);
        add = std::max(add, rep.additivity_residual);
    }
    r.require(herm <= 1e-10, "hermiticity " + fmt("%.2e", herm));
    r.require(lam >= -1e-10, "min eigenvalue " + fmt("%.2e", lam));
    r.require(add <= 1e-12, "additivity " + fmt("%.2e", add));

    const Povm negative({"a", "b"}, 2, {ComplexMatrix::diagonal({1.0, -1e-3}), ComplexMatrix::diagonal({0.0, 1.0})});
    const auto neg = validate(negative);
    r.require(!neg.passed() && neg.has(ValidationFailure::NotPsd), "negative eigenvalue not classified NotPsd");

    const auto base = random_povm(3, 6, 3);
    const auto broken = validate_event_map(base.atoms(), [&base](std::span<const std::size_t> e) {
        ComplexMatrix out = base.evaluate(e);
        if (!e.empty()) {
            out += 0.01 * ComplexMatrix::identity(3);
        }
        return out;
    });
    r.require(!broken.passed() && broken.has(ValidationFailure::NotAdditive), "broken additivity not classified NotAdditive");
    r.note("herm " + fmt("%.1e", herm) + ", min eig " + fmt("%.1e", lam) + ", additivity " + fmt("%.1e", add)
           + "; corruptions classified");
    return r.result();
}

// 8. Measurement normalization.
Outcome measurement_normalization()
{
    Recorder r;
    // Whiten a random POVM: M'({t}) = M(Ω)^{-1/2} M({t}) M(Ω)^{-1/2}, so M'(Ω) = I.
    const auto raw = random_povm(4, 7, 88);
    const auto inv_root = invert(psd_sqrt(raw.total()));
    std::vector<ComplexMatrix> elements;
    for (const auto& e : raw.elements()) {
        elements.push_back(hermitian_part(inv_root * e * inv_root));
    }
    const Povm m(raw.atoms(), 4, elements);
    PortableRng rng(88);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = measure_probabilities(m, random_unit_vector(4, rng));
        double sum = 0.0;
        for (double v : p) {
            r.require(v >= 0.0, "negative probability");
            sum += v;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    r.require(worst <= 1e-11, "sum deviates by " + fmt("%.2e", worst));

    const Povm qubit({"0", "1"}, 2, {ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})});
    const double h = 1.0 / std::sqrt(2.0);
    const auto p = measure_probabilities(qubit, ComplexVector{h, h});
    r.require(std::abs(p[0] - 0.5) <= 1e-12 && std::abs(p[1] - 0.5) <= 1e-12, "qubit probabilities");
    r.note("max |sum - 1| " + fmt("%.2e", worst));
    return r.result();
}

// 9. Linear-algebra substrate.
Outcome linalg_substrate()
{
    Recorder r;
    double eig_worst = 0.0, sqrt_worst = 0.0;
    for (std::size_t dim : {2u, 3u, 4u, 8u, 16u, 32u, 64u}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            PortableRng rng(dim * 1000 + seed);
            const auto h = hermitian_part(random_matrix(dim, dim, rng));
            const auto eig = hermitian_eigen(h);
            const auto back = eig.eigenvectors * ComplexMatrix::diagonal(eig.eigenvalues) * adjoint(eig.eigenvectors);
            eig_worst = std::max(eig_worst, frobenius_norm(back - h) / frobenius_norm(h));

            const auto g = random_matrix(1 + rng.below(dim), dim, rng);
            const auto a = hermitian_part(adjoint_times(g, g));
            const auto root = psd_sqrt(a);
            sqrt_worst = std::max(sqrt_worst, frobenius_norm(root * root - a) / frobenius_norm(a));
        }
    }
    r.require(eig_worst <= 1e-12, "eigen reconstruction " + fmt("%.2e", eig_worst));
    r.require(sqrt_worst <= 1e-10, "sqrt squaring " + fmt("%.2e", sqrt_worst));
    r.note("eigen " + fmt("%.2e", eig_worst) + ", sqrt " + fmt("%.2e", sqrt_worst));
    return r.result();
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 frame-algorithm rate", frame_algorithm_rate},
        {"2 tight-frame one-step recovery", tight_frame_one_step},
        {"3 gives-rise identity", gives_rise_identity},
        {"4 reintegration over all events", reintegration},
        {"5 decomposition uniqueness", uniqueness},
        {"6 round-trip closure", round_trip_closure},
        {"7 POVM axioms", povm_axioms},
        {"8 measurement normalization", measurement_normalization},
        {"9 linalg substrate", linalg_substrate},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        failures += o.passed ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
