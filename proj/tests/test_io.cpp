#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "qsep/criteria.hpp"
#include "qsep/errors.hpp"
#include "qsep/io.hpp"
#include "test_helpers.hpp"

using namespace qsep;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("qsep_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("density matrices round trip bit-exactly") {
    TempDir tmp;
    std::mt19937_64 rng(3);
    const BipartiteState st(2, 3, random_density(6, rng), true);
    const std::string p = tmp.file("rho.json");
    save_density(p, st);
    const MatrixFile f = load_matrix(p);
    CHECK(f.kind == "density");
    REQUIRE(f.state.has_value());
    CHECK(f.state->dA() == 2);
    CHECK(f.state->dB() == 3);
    CHECK(frobenius_distance(f.state->matrix(), st.matrix()) == 0.0);
    CHECK(f.state->normalized());
}

TEST_CASE("vectors round trip and promote to projectors") {
    TempDir tmp;
    const PureState raw = maximally_entangled(3, false);
    const std::string p = tmp.file("vec.json");
    save_vector(p, raw, {3, 3});
    const MatrixFile f = load_matrix(p);
    CHECK(f.kind == "vector");
    REQUIRE(f.pure.has_value());
    CHECK_FALSE(f.pure->normalized());
    REQUIRE(f.state.has_value());
    CHECK_FALSE(f.state->normalized());  // trace 3 projector
    CHECK(f.state->dim() == 9);
    CHECK(f.state->matrix()(0, 4) == Complex(1.0));

    // plain vector without a split stays a vector only
    save_vector(tmp.file("plain.json"), maximally_entangled(2, true), {4});
    const MatrixFile g = load_matrix(tmp.file("plain.json"));
    CHECK(g.pure.has_value());
    CHECK_FALSE(g.state.has_value());
}

TEST_CASE("bases and decompositions round trip") {
    TempDir tmp;
    const std::string bp = tmp.file("basis.json");
    save_basis(bp, qutrit_reduction_basis());
    const std::vector<ComplexVector> b = load_basis(bp);
    REQUIRE(b.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(inner(b[i], qutrit_reduction_basis()[i]) - 1.0) < 1e-15);

    std::mt19937_64 rng(5);
    auto [dec, rho] = random_separable(2, 3, 4, rng);
    const std::string dp = tmp.file("dec.json");
    save_decomposition(dp, dec);
    const SeparableDecomposition loaded = load_decomposition(dp);
    CHECK(loaded.terms().size() == 4);
    CHECK(frobenius_distance(assemble(loaded).matrix(), rho.matrix()) < 1e-12);
}

TEST_CASE("parse failures raise ParseError with the offending path") {
    TempDir tmp;
    const std::string p = tmp.file("bad.json");
    write_file(p, "{ not json");
    CHECK_THROWS_AS(load_matrix(p), ParseError);
    write_file(p, "[1,2,3]");
    CHECK_THROWS_AS(load_matrix(p), ParseError);
    write_file(p, R"({"kind":"density","dims":[2,2],"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]})");
    CHECK_THROWS_AS(load_matrix(p), ParseError);  // 2x2 rows for a 4x4 matrix
    write_file(p, R"({"kind":"woble","dims":[2],"re":[],"im":[]})");
    CHECK_THROWS_AS(load_matrix(p), ParseError);
    write_file(p, R"({"kind":"density","dims":[2,0],"re":[],"im":[]})");
    CHECK_THROWS_AS(load_matrix(p), ParseError);
    CHECK_THROWS_AS(load_matrix(tmp.file("absent.json")), ParseError);
    CHECK_THROWS_AS(load_basis(p), ParseError);
    CHECK_THROWS_AS(load_decomposition(p), ParseError);
}

TEST_CASE("invalid states in well-formed files surface as invariant violations") {
    TempDir tmp;
    const std::string p = tmp.file("nonpsd.json");
    write_file(p, R"({"kind":"density","dims":[1,2],
        "re":[[1.5,0],[0,-0.5]],"im":[[0,0],[0,0]]})");
    CHECK_THROWS_WITH_AS(load_matrix(p), doctest::Contains("positivity"),
                         InvariantViolation);
    const std::string q = tmp.file("nonherm.json");
    write_file(q, R"({"kind":"density","dims":[1,2],
        "re":[[0.5,0.2],[0,0.5]],"im":[[0,0],[0,0]]})");
    CHECK_THROWS_WITH_AS(load_matrix(q), doctest::Contains("hermiticity"),
                         InvariantViolation);
}

TEST_CASE("digest is content addressed") {
    TempDir tmp;
    write_file(tmp.file("a.json"), "hello");
    write_file(tmp.file("b.json"), "hello");
    write_file(tmp.file("c.json"), "hellp");
    CHECK(file_digest(tmp.file("a.json")) == file_digest(tmp.file("b.json")));
    CHECK(file_digest(tmp.file("a.json")) != file_digest(tmp.file("c.json")));
    CHECK(file_digest(tmp.file("a.json")).size() == 16);
}

TEST_CASE("report serialization") {
    VerdictReport r;
    r.tool_version = "0.0.0";
    r.command = "check demo";
    r.criterion = "ppt";
    r.outcome = "entangled";
    r.details = "negative eigenvalue";
    r.seed_used = true;
    r.seed = 42;
    r.diagnostics = {{"pt_min_eigenvalue", -0.5}};
    const std::string j = report_json(r);
    CHECK(j.find("\"criterion\": \"ppt\"") != std::string::npos);
    CHECK(j.find("\"seed\": 42") != std::string::npos);
    CHECK(j.find("pt_min_eigenvalue") != std::string::npos);
    TempDir tmp;
    write_report(tmp.file("r.json"), r);
    CHECK(file_digest(tmp.file("r.json")).size() == 16);
}
