#ifndef FRAMEKIT_TOOLS_CLI_HPP
#define FRAMEKIT_TOOLS_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <framekit/framekit.hpp>
#include <framekit/io.hpp>

namespace framekit::cli {

using io::json;

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = {"bounds",     "analyze",   "reconstruct",       "to-povm",
                                                   "validate-povm", "decompose", "to-ovf", "verify-uniqueness",
                                                   "roundtrip",  "generate"};
    return names;
}

struct ExperimentConfig {
    std::string command;
    std::vector<std::string> input_paths;
    std::string output_path; // RunReport JSON; stdout when empty
    std::string emit_path;   // product of the command (POVM, decomposition, ...)
    std::string trace_path;  // reconstruct only: IterationTrace CSV
    std::uint64_t seed = 0;
    std::string rule = "trace";
    std::string sequence_path;
    double target_error = 1e-9;
    std::size_t max_iters = 10'000;
    std::map<std::string, double> tolerance_overrides;
    std::string kind = "frame"; // generate only
    std::size_t dim = 2;
    std::size_t atoms = 4;
};

struct RunOutcome {
    json report;
    int exit_code = 0;
};

inline Tolerances apply_overrides(const std::map<std::string, double>& overrides)
{
    Tolerances tol;
    for (const auto& [name, value] : overrides) {
        if (!(value > 0.0)) {
            throw Error(ErrorCode::CommandError, "tolerance '" + name + "' must be positive");
        }
        if (name == "herm") tol.herm = value;
        else if (name == "psd") tol.psd = value;
        else if (name == "eig") tol.eig = value;
        else if (name == "inv") tol.inv = value;
        else if (name == "frame") tol.frame = value;
        else if (name == "decomp") tol.decomp = value;
        else throw Error(ErrorCode::CommandError, "unknown tolerance '" + name + "'");
    }
    return tol;
}

inline json tolerances_to_json(const Tolerances& t)
{
    return json{{"herm", t.herm}, {"psd", t.psd}, {"eig", t.eig}, {"inv", t.inv}, {"frame", t.frame}, {"decomp", t.decomp}};
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class Checks {
public:
    void add(const std::string& name, double value, double tolerance, bool passed)
    {
        list_.push_back(json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"passed", passed}});
        all_ = all_ && passed;
    }

    /// Passes when value ≤ tolerance.
    void at_most(const std::string& name, double value, double tolerance)
    {
        add(name, value, tolerance, value <= tolerance);
    }

    bool all() const noexcept { return all_; }
    const json& list() const noexcept { return list_; }

private:
    json list_ = json::array();
    bool all_ = true;
};

namespace detail {

inline void require_arity(const ExperimentConfig& cfg, std::size_t lo, std::size_t hi)
{
    const std::size_t n = cfg.input_paths.size();
    if (n < lo || n > hi) {
        const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
        throw Error(ErrorCode::CommandError,
                    "'" + cfg.command + "' takes " + want + " --in file(s), got " + std::to_string(n));
    }
}

inline ReferenceMeasureRule make_rule(const ExperimentConfig& cfg, std::size_t dim_h)
{
    if (cfg.rule == "trace") {
        return ReferenceMeasureRule::trace();
    }
    if (cfg.rule == "dyadic") {
        if (cfg.sequence_path.empty()) {
            return ReferenceMeasureRule::dyadic_standard_basis(dim_h);
        }
        return ReferenceMeasureRule::dyadic(io::sequence_from_json(io::load_json(cfg.sequence_path)));
    }
    throw Error(ErrorCode::CommandError, "unknown rule '" + cfg.rule + "'");
}

inline json bounds_json(const FrameBounds& b) { return json{{"lower", b.lower}, {"upper", b.upper}}; }

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline void emit(const ExperimentConfig& cfg, const json& product)
{
    if (!cfg.emit_path.empty()) {
        io::write_json(cfg.emit_path, product);
    }
}

} // namespace detail

/**
 * Executes one command. Library errors propagate as framekit::Error; failed
 * numerical checks only clear `passed` and set exit code 1.
 */
inline RunOutcome run(const ExperimentConfig& cfg)
{
    using namespace detail;
    const auto started = std::chrono::steady_clock::now();
    const Tolerances tol = apply_overrides(cfg.tolerance_overrides);

    if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end()) {
        throw Error(ErrorCode::CommandError, "unknown command '" + cfg.command + "'");
    }

    json inputs = json::array();
    std::vector<json> docs;
    for (const auto& path : cfg.input_paths) {
        const std::string bytes = io::read_file(path);
        inputs.push_back(json{{"path", path}, {"fnv1a64", fnv1a64(bytes)}});
        docs.push_back(io::parse_json(bytes, path));
    }

    Checks checks;
    json summary = json::object();
    const std::string& cmd = cfg.command;

    if (cmd == "bounds") {
        require_arity(cfg, 1, 1);
        const auto f = io::frame_from_json(docs[0], tol);
        const FrameBounds b = f.bounds();
        summary = json{{"lower", b.lower}, {"upper", b.upper}, {"rate", b.rate()}, {"dim_h", f.dim_h()}, {"atoms", f.size()}};
        checks.add("lower_bound_positive", b.lower, tol.frame * b.upper, b.lower > tol.frame * b.upper);
        emit(cfg, bounds_json(b));
    } else if (cmd == "analyze") {
        require_arity(cfg, 2, 2);
        const auto f = io::frame_from_json(docs[0], tol);
        const ComplexVector x = io::vector_from_json(docs[1]);
        const CoefficientField c = analysis(f, x);
        const double energy = c.weighted_norm_squared();
        const double nx2 = norm(x) * norm(x);
        const double eps = 1e-10 * nx2;
        const FrameBounds b = f.bounds();
        summary = json{{"weighted_norm_squared", energy}, {"norm_squared", nx2}, {"bounds", bounds_json(b)}};
        checks.add("frame_inequality_lower", energy, b.lower * nx2 - eps, energy >= b.lower * nx2 - eps);
        checks.add("frame_inequality_upper", energy, b.upper * nx2 + eps, energy <= b.upper * nx2 + eps);
        emit(cfg, io::to_json(c));
    } else if (cmd == "reconstruct") {
        require_arity(cfg, 2, 3);
        const auto f = io::frame_from_json(docs[0], tol);
        CoefficientField c = io::coefficients_from_json(docs[1]);
        std::optional<ComplexVector> truth;
        if (docs.size() == 3) {
            truth = io::vector_from_json(docs[2]);
        }
        ReconstructionConfig rc{cfg.max_iters, cfg.target_error, std::nullopt};
        const IterationTrace trace = truth ? frame_algorithm(f, c, rc, std::span<const Complex>(*truth))
                                           : frame_algorithm(f, c, rc);
        const ComplexVector direct = reconstruct_direct(f, c, tol);
        const double direct_norm = norm(direct);
        checks.at_most("algorithm_matches_direct", norm(subtract(trace.result(), direct)),
                       cfg.target_error + 1e-9 * direct_norm);
        if (truth) {
            const double nx = norm(*truth);
            double worst = -INFINITY;
            for (std::size_t n = 0; n < trace.actual_errors.size(); ++n) {
                worst = std::max(worst, trace.actual_errors[n] - std::pow(trace.rate, double(n)) * nx);
            }
            checks.at_most("certified_rate_excess", worst, 1e-9);
            checks.at_most("direct_error", norm(subtract(direct, *truth)), 1e-9 * nx);
        }
        summary = json{{"iterations", trace.iterations()},
                       {"stop_reason", std::string(to_string(trace.stop))},
                       {"rate", trace.rate},
                       {"bounds_used", bounds_json(trace.bounds_used)},
                       {"certified", trace.certified},
                       {"final_certified_bound", trace.certified_bounds.back()},
                       {"final_residual_bound", trace.residual_bounds.back()}};
        if (!cfg.trace_path.empty()) {
            io::write_file_atomic(cfg.trace_path, io::trace_to_csv(trace));
        }
        emit(cfg, io::vector_to_json(trace.result()));
    } else if (cmd == "to-povm") {
        require_arity(cfg, 1, 1);
        const auto f = io::frame_from_json(docs[0], tol);
        const Povm m = ovf_to_povm(f);
        const ValidationReport v = validate(m, tol, cfg.seed);
        const FramedCheck framed = is_framed(m, tol);
        const ComplexMatrix& s = f.frame_operator();
        checks.add("povm_valid", double(v.issues.size()), 0.0, v.passed());
        checks.at_most("total_matches_frame_operator", frobenius_norm(m.total() - s), 1e-12 * (1.0 + frobenius_norm(s)));
        checks.add("framed", framed.bounds.lower, tol.frame * framed.bounds.upper, framed.framed);
        summary = json{{"bounds", bounds_json(framed.bounds)}, {"atoms", m.size()}};
        emit(cfg, io::to_json(m));
    } else if (cmd == "validate-povm") {
        require_arity(cfg, 1, 1);
        const Povm m = io::povm_from_json(docs[0]);
        const ValidationReport v = validate(m, tol, cfg.seed);
        const FramedCheck framed = is_framed(m, tol);
        const double herm = *std::max_element(v.hermitian_residuals.begin(), v.hermitian_residuals.end());
        const double lam = *std::min_element(v.min_eigenvalues.begin(), v.min_eigenvalues.end());
        checks.add("hermitian", herm, tol.herm, !v.has(ValidationFailure::NotHermitian));
        checks.add("psd", lam, -tol.psd, !v.has(ValidationFailure::NotPsd));
        checks.at_most("empty_is_zero", v.empty_residual, v.additivity_tolerance);
        checks.at_most("additivity", v.additivity_residual, v.additivity_tolerance);
        summary = json{{"framed", framed.framed}, {"bounds", bounds_json(framed.bounds)}, {"validation", io::to_json(v)}};
        emit(cfg, io::to_json(v));
    } else if (cmd == "decompose") {
        require_arity(cfg, 1, 1);
        const Povm m = io::povm_from_json(docs[0]);
        const Decomposition d = decompose(m, make_rule(cfg, m.dim_h()), tol);
        const ReintegrationReport r = check_reintegration(m, d, tol);
        checks.at_most("reintegration", r.max_residual, r.tolerance);
        summary = json{{"rule", cfg.rule},
                       {"atoms_kept", d.size()},
                       {"atoms_dropped", m.size() - d.size()},
                       {"events_checked", r.events_checked},
                       {"exhaustive", r.exhaustive}};
        emit(cfg, io::to_json(d));
    } else if (cmd == "to-ovf") {
        require_arity(cfg, 1, 1);
        const Decomposition d = io::decomposition_from_json(docs[0], tol);
        const OperatorValuedFrame f = decomposition_to_ovf(d, tol);
        const ComplexMatrix total = d.total();
        checks.at_most("frame_operator_matches_total", frobenius_norm(f.frame_operator() - total),
                       1e-10 * (1.0 + frobenius_norm(total)));
        summary = json{{"bounds", bounds_json(f.bounds())}, {"atoms", f.size()}};
        emit(cfg, io::to_json(f));
    } else if (cmd == "verify-uniqueness") {
        require_arity(cfg, 2, 2);
        const bool decompositions = docs[0].contains("densities") && docs[1].contains("densities");
        const UniquenessReport u =
            decompositions ? verify_uniqueness(io::decomposition_from_json(docs[0], tol),
                                               io::decomposition_from_json(docs[1], tol), tol)
                           : verify_ovf_equivalence(io::frame_from_json(docs[0], tol), io::frame_from_json(docs[1], tol), tol);
        checks.at_most("max_residual", u.max_residual, u.tolerance);
        summary = json{{"compared", decompositions ? "decompositions" : "frames"}, {"uniqueness", io::to_json(u)}};
        emit(cfg, io::to_json(u));
    } else if (cmd == "roundtrip") {
        require_arity(cfg, 1, 1);
        const auto f = io::frame_from_json(docs[0], tol);
        const Povm m = ovf_to_povm(f);
        const ValidationReport v = validate(m, tol, cfg.seed);
        checks.add("povm_valid", double(v.issues.size()), 0.0, v.passed());
        const Decomposition d = decompose(m, make_rule(cfg, m.dim_h()), tol);
        const ReintegrationReport r = check_reintegration(m, d, tol);
        checks.at_most("reintegration", r.max_residual, r.tolerance);
        const OperatorValuedFrame g = decomposition_to_ovf(d, tol);
        const ComplexMatrix& s = f.frame_operator();
        checks.at_most("frame_operator_relative", frobenius_norm(g.frame_operator() - s) / frobenius_norm(s), 1e-9);
        checks.at_most("lower_bound_relative", relative(g.bounds().lower, f.bounds().lower), 1e-9);
        checks.at_most("upper_bound_relative", relative(g.bounds().upper, f.bounds().upper), 1e-9);
        const UniquenessReport u = verify_ovf_equivalence(f, g, tol);
        checks.at_most("ovf_equivalence", u.max_residual, u.tolerance);
        const Povm back = ovf_to_povm(g);
        double reproduce = 0.0;
        for (std::size_t t = 0; t < back.size(); ++t) {
            const ComplexMatrix& original = m.element(m.index_of(back.atoms()[t]));
            reproduce = std::max(reproduce, frobenius_norm(back.element(t) - original));
        }
        checks.at_most("povm_reproduced", reproduce, 1e-10 * (1.0 + frobenius_norm(m.total())));
        summary = json{{"rule", cfg.rule},
                       {"max_residual", u.max_residual},
                       {"original_bounds", bounds_json(f.bounds())},
                       {"recovered_bounds", bounds_json(g.bounds())}};
        emit(cfg, io::to_json(g));
    } else if (cmd == "generate") {
        require_arity(cfg, 0, 0);
        if (cfg.emit_path.empty()) {
            throw Error(ErrorCode::CommandError, "'generate' needs --emit FILE");
        }
        if (cfg.kind == "frame") {
            const VectorFrame f = random_vector_frame(cfg.dim, cfg.atoms, cfg.seed, tol);
            const FrameBounds b = from_vector_frame(f, tol).bounds();
            checks.add("frame", b.lower, tol.frame * b.upper, true);
            emit(cfg, io::to_json(f));
        } else if (cfg.kind == "povm") {
            const Povm m = random_povm(cfg.dim, cfg.atoms, cfg.seed, tol);
            const ValidationReport v = validate(m, tol);
            const FramedCheck framed = is_framed(m, tol);
            checks.add("povm_valid", double(v.issues.size()), 0.0, v.passed());
            checks.add("framed", framed.bounds.lower, tol.frame * framed.bounds.upper, framed.framed);
            emit(cfg, io::to_json(m));
        } else {
            throw Error(ErrorCode::CommandError, "unknown kind '" + cfg.kind + "'");
        }
        summary = json{{"kind", cfg.kind}, {"dim", cfg.dim}, {"atoms", cfg.atoms}};
    }

    const auto elapsed =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started).count();
    RunOutcome out;
    out.report = json{{"command", cmd},
                      {"seed", cfg.seed},
                      {"inputs", inputs},
                      {"tolerances", tolerances_to_json(tol)},
                      {"checks", checks.list()},
                      {"summary", summary},
                      {"passed", checks.all()},
                      {"elapsed_ns", elapsed}};
    out.exit_code = checks.all() ? 0 : 1;
    return out;
}

/// run() plus report output; errors become exit code 2 with an error report.
inline int execute(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    RunOutcome outcome;
    try {
        outcome = run(cfg);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        outcome.report = json{{"command", cfg.command},
                              {"seed", cfg.seed},
                              {"passed", false},
                              {"error", json{{"name", std::string(to_string(e.code()))}, {"message", e.what()}}}};
        outcome.exit_code = 2;
    }
    try {
        if (cfg.output_path.empty()) {
            out << outcome.report.dump(2) << '\n';
        } else {
            io::write_json(cfg.output_path, outcome.report);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return outcome.exit_code;
}

} // namespace framekit::cli

#endif // FRAMEKIT_TOOLS_CLI_HPP
