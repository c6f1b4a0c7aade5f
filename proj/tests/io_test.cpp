#include <gtest/gtest.h>

#include <filesystem>

#include <framekit/framekit.hpp>
#include <framekit/io.hpp>

using namespace framekit;
using io::json;

namespace {

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::IoError;
}

} // namespace

TEST(Json, MatrixSchema)
{
    const auto m = ComplexMatrix::from_rows({{1.0, Complex(0, 1)}, {Complex(0, -1), 2.0}});
    const json j = io::to_json(m);
    EXPECT_EQ(j["rows"], 2);
    EXPECT_EQ(j["cols"], 2);
    EXPECT_EQ(j["data"][1], json::array({0.0, 1.0}));
    EXPECT_EQ(io::matrix_from_json(j), m);
}

// Every schema survives a dump/parse cycle bit-exactly.
TEST(Json, LosslessRoundTripOfRandomValues)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f = random_ovf(3, 5, 2, seed);
        const auto f2 = io::ovf_from_json(json::parse(io::to_json(f).dump()));
        EXPECT_EQ(f2.blocks(), f.blocks());
        EXPECT_EQ(f2.space(), f.space());

        const auto m = random_povm(3, 4, seed);
        EXPECT_EQ(io::povm_from_json(json::parse(io::to_json(m).dump())).elements(), m.elements());

        const auto d = decompose(m, ReferenceMeasureRule::dyadic_standard_basis(3));
        const auto d2 = io::decomposition_from_json(json::parse(io::to_json(d).dump()));
        EXPECT_EQ(d2.densities(), d.densities());
        EXPECT_EQ(d2.measure(), d.measure());

        PortableRng rng(seed);
        const auto c = analysis(f, random_vector(3, rng));
        const auto c2 = io::coefficients_from_json(json::parse(io::to_json(c).dump()));
        EXPECT_EQ(c2.segments, c.segments);
        EXPECT_EQ(c2.space, c.space);
    }
}

TEST(Json, VectorFrameIsAcceptedWhereverAFrameIs)
{
    const json j = json::parse(R"({"dim_h": 2, "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]})");
    const auto f = io::frame_from_json(j);
    EXPECT_EQ(f.frame_operator(), ComplexMatrix::identity(2));
}

TEST(Json, ParseErrorsNameTheField)
{
    const json missing = json::parse(R"({"atoms": ["a"], "dim_h": 1})");
    try {
        io::povm_from_json(missing);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("elements"), std::string::npos);
    }
    const json short_data = json::parse(R"({"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0]]})");
    EXPECT_EQ(code_of([&] { io::matrix_from_json(short_data, "elements[0]"); }), ErrorCode::ParseError);
    const json bad_entry = json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})");
    EXPECT_EQ(code_of([&] { io::matrix_from_json(bad_entry); }), ErrorCode::ParseError);
    const json not_frame = json::parse(R"({"dim_h": 2, "vectors": [[[1,0],[0,0]]]})");
    try {
        io::frame_from_json(not_frame);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("NotAFrame"), std::string::npos);
    }
    try {
        io::parse_json("{\n  \"rows\": 1,\n  oops\n}", "input.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Csv, TraceColumns)
{
    const auto f = from_vector_frame({2, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}});
    const ComplexVector x{0.0, 1.0};
    ReconstructionConfig cfg;
    cfg.max_iters = 2;
    const auto with_truth = io::trace_to_csv(frame_algorithm(f, analysis(f, x), cfg, std::span<const Complex>(x)));
    EXPECT_EQ(with_truth.substr(0, with_truth.find('\n')), "iter,certified_bound,actual_error,elapsed_ns");
    EXPECT_NE(with_truth.find("\n1,"), std::string::npos);
    EXPECT_NE(with_truth.find(",0.33333333333333331,"), std::string::npos);

    const auto without = io::trace_to_csv(frame_algorithm(f, analysis(f, x), cfg));
    EXPECT_NE(without.find("\n0,"), std::string::npos);
    const auto line = without.substr(without.find("\n1,") + 1);
    // actual_error column left blank
    EXPECT_NE(line.find(",,"), std::string::npos);
}

TEST(Files, AtomicWriteLeavesNoTemporary)
{
    const auto dir = std::filesystem::temp_directory_path() / "framekit_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    io::write_json(path, json{{"a", 1}});
    EXPECT_TRUE(std::filesystem::exists(path));
    EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
    EXPECT_EQ(io::load_json(path)["a"], 1);
    EXPECT_EQ(code_of([&] { io::read_file(dir / "missing.json"); }), ErrorCode::IoError);
    std::filesystem::remove_all(dir);
}
