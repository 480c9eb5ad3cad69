#include "numrange/cli.hpp"

#include "numrange/generators.hpp"
#include "numrange/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace numrange;

namespace {

std::string fixture(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("document parsing") {
    SUBCASE("the worked diagonal pair round-trips") {
        const std::string text =
            R"({"alpha":[0,0],"beta":[0,0],)"
            R"("C":[[[4,0],[-0.5,0]],[[-2,0],[0.5,0]]],)"
            R"("D":[[[1,0],[1,0]],[[1,0],[2,0]]]})";
        const BlockMatrix a = parse_document(text);
        const BlockMatrix want = worked_diagonal_pair();
        CHECK(a.n() == 4);
        CHECK(a.k() == 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(a.c_block()(i, j) == want.c_block()(i, j));
                CHECK(a.d_block()(i, j) == want.d_block()(i, j));
            }
    }
    SUBCASE("scalar blocks parse as complex pairs") {
        const std::string text =
            R"({"alpha":[1,2],"beta":[-1,-2],"C":[[[0,0]]],"D":[[[0,0]]]})";
        const BlockMatrix a = parse_document(text);
        CHECK(a.alpha() == Complex{1.0, 2.0});
        CHECK(a.beta() == Complex{-1.0, -2.0});
    }
    SUBCASE("mismatched blocks carry the offending path") {
        const std::string text =
            R"({"alpha":[0,0],"beta":[0,0],)"
            R"("C":[[[1,0],[0,0]],[[0,0],[1,0]]],)"
            R"("D":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]})";
        try {
            parse_document(text);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.path() == "/D");
        }
    }
    SUBCASE("malformed JSON") {
        CHECK_THROWS_AS(parse_document("{not json"), ParseError);
    }
    SUBCASE("missing fields and bad entries") {
        CHECK_THROWS_AS(parse_document(R"({"alpha":[0,0]})"), ValidationError);
        CHECK_THROWS_AS(parse_document(R"({"alpha":[0],"beta":[0,0],"C":[[[0,0]]],"D":[[[0,0]]]})"),
                        ValidationError);
        CHECK_THROWS_AS(
            parse_document(R"({"alpha":[0,0],"beta":[0,0],"C":[[["x",0]]],"D":[[[0,0]]]})"),
            ValidationError);
    }
}

TEST_CASE("number formatting is plain and deterministic") {
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(0.0) == "0");
    // 17 significant digits round-trip
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("boundary subcommand") {
    SUBCASE("row count is samples plus the two member points") {
        const auto r = invoke({"boundary", fixture("example36.json"), "--samples", "8"});
        CHECK(r.code == 0);
        CHECK(count_lines(r.out) == 10);
        CHECK(r.out.find('\r') == std::string::npos);
    }
    SUBCASE("output bytes are identical across runs") {
        const auto r1 = invoke({"boundary", fixture("example33.json"), "--samples", "64"});
        const auto r2 = invoke({"boundary", fixture("example33.json"), "--samples", "64"});
        CHECK(r1.out == r2.out);
        CHECK(!r1.out.empty());
    }
    SUBCASE("json format") {
        const auto r =
            invoke({"boundary", fixture("example33.json"), "--samples", "4", "--format", "json"});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"support\"") != std::string::npos);
    }
    SUBCASE("too few samples is a usage error") {
        const auto r = invoke({"boundary", fixture("example33.json"), "--samples", "2"});
        CHECK(r.code == 2);
    }
}

TEST_CASE("analyze and predict subcommands") {
    SUBCASE("worked diagonal pair") {
        const auto r = invoke({"analyze", fixture("example33.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"TheoremTri\"") != std::string::npos);
        CHECK(r.out.find("\"pairs\"") != std::string::npos);
    }
    SUBCASE("off-center pair predicts nothing but exits cleanly") {
        const auto r = invoke({"predict", fixture("yeh.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"NoneDetected\"") != std::string::npos);
        CHECK(r.out.find("\"ellipses\": []") != std::string::npos);
    }
    SUBCASE("skew-hermitian pair reports two non-nested ellipses") {
        const auto r = invoke({"predict", fixture("cor33.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"NonNested\"") != std::string::npos);
        CHECK(r.out.find("\"m\": 2") != std::string::npos);
        CHECK(r.out.find("\"flat_portions\": 4") != std::string::npos);
    }
}

TEST_CASE("verify subcommand") {
    SUBCASE("classified fixture passes") {
        const auto r = invoke({"verify", fixture("example33.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"TheoremTri\"") != std::string::npos);
        CHECK(r.out.find("\"passed\": true") != std::string::npos);
    }
    SUBCASE("undetected fixture still passes the sampler checks") {
        const auto r = invoke({"verify", fixture("yeh2.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"NoneDetected\"") != std::string::npos);
        CHECK(r.out.find("\"passed\": true") != std::string::npos);
    }
}

TEST_CASE("render subcommand writes valid svg") {
    const auto path =
        (std::filesystem::temp_directory_path() / "numrange_render_test.svg").string();
    const auto r = invoke({"render", fixture("cor33.json"), "--out", path, "--samples", "90"});
    CHECK(r.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string svg = buf.str();
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"analyze", fixture("does_not_exist.json")}).code == 3);
    const auto bad = (std::filesystem::temp_directory_path() / "numrange_bad.json").string();
    {
        std::ofstream out(bad);
        out << "{broken";
    }
    CHECK(invoke({"analyze", bad}).code == 3);
    std::filesystem::remove(bad);
    CHECK(invoke({"--help"}).code == 0);
}
