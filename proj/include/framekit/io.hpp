#ifndef FRAMEKIT_IO_HPP
#define FRAMEKIT_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "correspondence.hpp"
#include "error.hpp"
#include "frames.hpp"
#include "linalg.hpp"
#include "povm.hpp"
#include "reconstruction.hpp"

// JSON schemas:
//   matrix         {"rows": n, "cols": m, "data": [[re, im], ...]}   row-major
//   vector         {"dim": n, "data": [[re, im], ...]}
//   OVF            {"atoms": [...], "weights": [...], "dim_h": n, "blocks": [matrix, ...]}
//   vector frame   {"dim_h": n, "vectors": [[[re, im], ...], ...]}
//   POVM           {"atoms": [...], "dim_h": n, "elements": [matrix, ...]}
//   decomposition  {"atoms": [...], "weights": [...], "dim_h": n, "densities": [matrix, ...]}
//   coefficients   {"atoms": [...], "weights": [...], "segments": [[[re, im], ...], ...]}
//   sequence       {"dim_h": n, "vectors": [[[re, im], ...], ...]}   (dyadic rule input)

namespace framekit::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::ParseError, "field '" + path + "': " + what);
}

inline const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(path.empty() ? key : path + "." + key, "missing");
    }
    return *it;
}

inline std::string join(const std::string& path, const char* key)
{
    return path.empty() ? key : path + "." + key;
}

inline std::string index(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

inline std::size_t positive_size(const json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
        fail(path, "expected a positive integer");
    }
    return j.get<std::size_t>();
}

inline double number(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

inline Complex complex_value(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected [re, im]");
    }
    const Complex z{number(j[0], path + "[0]"), number(j[1], path + "[1]")};
    if (!is_finite(z)) {
        fail(path, "non-finite value");
    }
    return z;
}

inline const json& array(const json& j, const std::string& path)
{
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    return j;
}

inline std::vector<std::string> labels(const json& j, const std::string& path)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        if (!j[i].is_string()) {
            fail(index(path, i), "expected a string");
        }
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

inline std::vector<double> numbers(const json& j, const std::string& path)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        out.push_back(number(j[i], index(path, i)));
    }
    return out;
}

// Library errors raised while assembling a parsed value are reported as
// ParseError against the file, keeping the original error name in the text.
template <typename F>
auto build(const std::string& what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) {
            throw;
        }
        throw Error(ErrorCode::ParseError, what + ": " + e.what());
    }
}

} // namespace detail

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json values_to_json(std::span<const Complex> v)
{
    json a = json::array();
    for (const Complex& z : v) {
        a.push_back(complex_to_json(z));
    }
    return a;
}

inline ComplexVector values_from_json(const json& j, const std::string& path)
{
    ComplexVector v;
    for (std::size_t i = 0; i < detail::array(j, path).size(); ++i) {
        v.push_back(detail::complex_value(j[i], detail::index(path, i)));
    }
    return v;
}

inline json to_json(const ComplexMatrix& m)
{
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", values_to_json(m.data())}};
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& path = "")
{
    const std::size_t rows = detail::positive_size(detail::field(j, "rows", path), detail::join(path, "rows"));
    const std::size_t cols = detail::positive_size(detail::field(j, "cols", path), detail::join(path, "cols"));
    const std::string data_path = detail::join(path, "data");
    ComplexVector data = values_from_json(detail::field(j, "data", path), data_path);
    if (data.size() != rows * cols) {
        detail::fail(data_path, "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(data.size()));
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

inline json vector_to_json(std::span<const Complex> v) { return json{{"dim", v.size()}, {"data", values_to_json(v)}}; }

inline ComplexVector vector_from_json(const json& j, const std::string& path = "")
{
    const std::size_t dim = detail::positive_size(detail::field(j, "dim", path), detail::join(path, "dim"));
    ComplexVector v = values_from_json(detail::field(j, "data", path), detail::join(path, "data"));
    if (v.size() != dim) {
        detail::fail(detail::join(path, "data"), "length differs from dim");
    }
    return v;
}

inline json to_json(const OperatorValuedFrame& f)
{
    json blocks = json::array();
    for (const auto& b : f.blocks()) {
        blocks.push_back(to_json(b));
    }
    return json{{"atoms", f.space().atoms()}, {"weights", f.space().weights()}, {"dim_h", f.dim_h()}, {"blocks", blocks}};
}

inline OperatorValuedFrame ovf_from_json(const json& j, const Tolerances& tol = {})
{
    auto atoms = detail::labels(detail::field(j, "atoms", ""), "atoms");
    auto weights = detail::numbers(detail::field(j, "weights", ""), "weights");
    const std::size_t dim = detail::positive_size(detail::field(j, "dim_h", ""), "dim_h");
    const json& jb = detail::array(detail::field(j, "blocks", ""), "blocks");
    std::vector<ComplexMatrix> blocks;
    for (std::size_t i = 0; i < jb.size(); ++i) {
        blocks.push_back(matrix_from_json(jb[i], detail::index("blocks", i)));
    }
    return detail::build("operator-valued frame", [&] {
        return OperatorValuedFrame(AtomicMeasureSpace(std::move(atoms), std::move(weights)), dim, std::move(blocks), tol);
    });
}

inline json to_json(const VectorFrame& f)
{
    json vectors = json::array();
    for (const auto& v : f.vectors) {
        vectors.push_back(values_to_json(v));
    }
    return json{{"dim_h", f.dim_h}, {"vectors", vectors}};
}

inline VectorFrame vector_frame_from_json(const json& j)
{
    VectorFrame f;
    f.dim_h = detail::positive_size(detail::field(j, "dim_h", ""), "dim_h");
    const json& jv = detail::array(detail::field(j, "vectors", ""), "vectors");
    for (std::size_t i = 0; i < jv.size(); ++i) {
        f.vectors.push_back(values_from_json(jv[i], detail::index("vectors", i)));
        if (f.vectors.back().size() != f.dim_h) {
            detail::fail(detail::index("vectors", i), "length differs from dim_h");
        }
    }
    return f;
}

/// Accepts either the OVF schema or the vector-frame schema.
inline OperatorValuedFrame frame_from_json(const json& j, const Tolerances& tol = {})
{
    if (j.is_object() && j.contains("vectors")) {
        const VectorFrame f = vector_frame_from_json(j);
        return detail::build("vector frame", [&] { return from_vector_frame(f, tol); });
    }
    return ovf_from_json(j, tol);
}

inline json to_json(const Povm& m)
{
    json elements = json::array();
    for (const auto& e : m.elements()) {
        elements.push_back(to_json(e));
    }
    return json{{"atoms", m.atoms()}, {"dim_h", m.dim_h()}, {"elements", elements}};
}

inline Povm povm_from_json(const json& j)
{
    auto atoms = detail::labels(detail::field(j, "atoms", ""), "atoms");
    const std::size_t dim = detail::positive_size(detail::field(j, "dim_h", ""), "dim_h");
    const json& je = detail::array(detail::field(j, "elements", ""), "elements");
    std::vector<ComplexMatrix> elements;
    for (std::size_t i = 0; i < je.size(); ++i) {
        elements.push_back(matrix_from_json(je[i], detail::index("elements", i)));
    }
    return detail::build("POVM", [&] { return Povm(std::move(atoms), dim, std::move(elements)); });
}

inline json to_json(const Decomposition& d)
{
    json densities = json::array();
    for (const auto& q : d.densities()) {
        densities.push_back(to_json(q));
    }
    return json{{"atoms", d.measure().atoms()},
                {"weights", d.measure().weights()},
                {"dim_h", d.dim_h()},
                {"densities", densities}};
}

inline Decomposition decomposition_from_json(const json& j, const Tolerances& tol = {})
{
    auto atoms = detail::labels(detail::field(j, "atoms", ""), "atoms");
    auto weights = detail::numbers(detail::field(j, "weights", ""), "weights");
    const std::size_t dim = detail::positive_size(detail::field(j, "dim_h", ""), "dim_h");
    const json& jd = detail::array(detail::field(j, "densities", ""), "densities");
    std::vector<ComplexMatrix> densities;
    for (std::size_t i = 0; i < jd.size(); ++i) {
        densities.push_back(matrix_from_json(jd[i], detail::index("densities", i)));
    }
    return detail::build("decomposition", [&] {
        return Decomposition(AtomicMeasureSpace(std::move(atoms), std::move(weights)), dim, std::move(densities), tol);
    });
}

inline json to_json(const CoefficientField& c)
{
    json segments = json::array();
    for (const auto& s : c.segments) {
        segments.push_back(values_to_json(s));
    }
    return json{{"atoms", c.space.atoms()}, {"weights", c.space.weights()}, {"segments", segments}};
}

inline CoefficientField coefficients_from_json(const json& j)
{
    auto atoms = detail::labels(detail::field(j, "atoms", ""), "atoms");
    auto weights = detail::numbers(detail::field(j, "weights", ""), "weights");
    const json& js = detail::array(detail::field(j, "segments", ""), "segments");
    CoefficientField c;
    for (std::size_t i = 0; i < js.size(); ++i) {
        c.segments.push_back(values_from_json(js[i], detail::index("segments", i)));
    }
    c.space = detail::build("coefficient field", [&] { return AtomicMeasureSpace(std::move(atoms), std::move(weights)); });
    if (c.segments.size() != c.space.size()) {
        detail::fail("segments", "one segment per atom expected");
    }
    return c;
}

inline std::vector<ComplexVector> sequence_from_json(const json& j) { return vector_frame_from_json(j).vectors; }

inline json to_json(const ValidationReport& r)
{
    json issues = json::array();
    for (const auto& i : r.issues) {
        issues.push_back(json{{"kind", std::string(to_string(i.kind))},
                              {"atom", i.atom},
                              {"value", i.value},
                              {"tolerance", i.tolerance}});
    }
    return json{{"passed", r.passed()},
                {"atoms", r.atoms},
                {"hermitian_residuals", r.hermitian_residuals},
                {"min_eigenvalues", r.min_eigenvalues},
                {"empty_residual", r.empty_residual},
                {"additivity_residual", r.additivity_residual},
                {"additivity_tolerance", r.additivity_tolerance},
                {"pairs_checked", r.pairs_checked},
                {"seed", r.seed},
                {"issues", issues}};
}

inline json to_json(const UniquenessReport& r)
{
    json ratios = json::array();
    for (const auto& [a, b] : r.radon_nikodym_ratios) {
        ratios.push_back(json::array({a, b}));
    }
    return json{{"passed", r.passed()},
                {"atoms", r.atoms},
                {"per_atom_residuals", r.per_atom_residuals},
                {"radon_nikodym_ratios", ratios},
                {"max_residual", r.max_residual},
                {"tolerance", r.tolerance}};
}

/// iter,certified_bound,actual_error,elapsed_ns, with 17 significant digits.
inline std::string trace_to_csv(const IterationTrace& trace)
{
    std::ostringstream out;
    out.precision(17);
    out << "iter,certified_bound,actual_error,elapsed_ns\n";
    for (std::size_t n = 0; n < trace.certified_bounds.size(); ++n) {
        out << n << ',' << trace.certified_bounds[n] << ',';
        if (n < trace.actual_errors.size()) {
            out << trace.actual_errors[n];
        }
        out << ',' << trace.elapsed_ns[n] << '\n';
    }
    return out.str();
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json parse_json(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, source + ": " + e.what());
    }
}

inline json load_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

/// Writes to a sibling temporary and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
        }
        out << content;
        if (!out.flush()) {
            throw Error(ErrorCode::IoError, "write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot rename onto '" + path.string() + "'");
    }
}

inline void write_json(const std::filesystem::path& path, const json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

} // namespace framekit::io

#endif // FRAMEKIT_IO_HPP
