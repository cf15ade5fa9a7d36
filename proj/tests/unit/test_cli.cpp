#include "helpers.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ihom;
using testing::code_of;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::vector<nlohmann::json> records;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("ihom_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout", err = scratch_dir() / "stderr";
    const std::string cmd = std::string(IHOM_CLI) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::istringstream lines(slurp(out));
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) r.records.push_back(nlohmann::json::parse(line));
    r.err = slurp(err);
    return r;
}

std::string corpus_file(const std::string& name) { return std::string(IHOM_CORPUS_DIR) + "/" + name + ".json"; }

const char* kSegment = R"({
  "format": 1,
  "name": "segment",
  "formal_dim": 1,
  "simplices": [[0, 1]],
  "coordinates": {"0": ["0"], "1": ["3/0"]}
})";

}  // namespace

TEST_CASE("documents round trip through the canonical form", "[cli]") {
    for (const auto& doc : testing::corpus_docs()) {
        INFO(doc.name);
        const std::string text = serialize_document(doc);
        CHECK(text.back() == '\n');
        const ComplexDocument back = parse_document(text);
        CHECK(serialize_document(back) == text);
        CHECK(back.name == doc.name);
        const FilteredComplex X = document_complex(doc);
        const FilteredComplex Y = document_complex(document_from_complex(X, doc.name));
        REQUIRE(X.num_simplices() == Y.num_simplices());
        for (SimplexId s = 0; s < X.num_simplices(); ++s) CHECK(X.filtration(s) == Y.filtration(s));
    }
}

TEST_CASE("document errors", "[cli]") {
    try {
        parse_document(kSegment);
        FAIL("accepted a zero denominator");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        const std::string msg = e.what();
        CHECK(msg.find("line 6") != std::string::npos);
        CHECK(msg.find("column") != std::string::npos);
    }
    CHECK(code_of([] { parse_document("{\"format\": 1,"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_document(R"({"format": 1, "name": "x", "formal_dim": 1, "simplices": [[0, 1]], "colour": 3})"); }) ==
          ErrorCode::ParseError);

    const ComplexDocument& doc = testing::corpus_doc("pinched_torus");
    const FilteredComplex X = document_complex(doc);
    CHECK(code_of([&] { parse_perversity("s99:0", X, &doc); }) == ErrorCode::ValidationError);
    CHECK(code_of([&] { parse_perversity("nonsense", X, &doc); }) == ErrorCode::ValidationError);
    CHECK(code_of([&] { parse_perversity("k:x", X, &doc); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_ring("Zp:4"); }) == ErrorCode::ValidationError);
    CHECK(parse_ring("Zp:5").p == 5);
}

TEST_CASE("command line exit codes", "[cli]") {
    SECTION("compute prints a betti table") {
        const Run r = run_cli("compute --complex " + corpus_file("pinched_torus") +
                              " --perversity t --notion gm --ring Z --level 1");
        REQUIRE(r.status == 0);
        REQUIRE(r.records.size() >= 3);
        CHECK(r.records.front()["record"] == "header");
        CHECK(r.records.back()["record"] == "summary");
        CHECK(r.records.back()["pass"] == true);
        std::vector<std::size_t> betti;
        for (const auto& rec : r.records)
            if (rec["record"] == "homology") betti.push_back(rec["betti"].get<std::size_t>());
        // In dimension two t and 0 coincide; the answer is the homology of the normalization, a sphere.
        CHECK(betti == std::vector<std::size_t>{1, 0, 1});
    }
    SECTION("malformed rational") {
        const Run r = run_cli("compute --complex " + write_file("bad.json", kSegment).string());
        CHECK(r.status == 2);
        CHECK(r.err.find("line 6") != std::string::npos);
    }
    SECTION("unknown stratum in the perversity") {
        const Run r = run_cli("compute --complex " + corpus_file("pinched_torus") + " --perversity s99:0");
        CHECK(r.status == 3);
        CHECK(r.records.empty());
    }
    SECTION("invalid complex") {
        const Run r = run_cli("compute --complex " +
                              write_file("flat.json", R"({"format": 1, "name": "flat", "formal_dim": 1,
                                  "simplices": [[0, 1]], "filtration": {"vertex": {"0": 0, "1": 0}}})")
                                  .string());
        CHECK(r.status == 3);
        CHECK(r.err.find("EmptyRegularPart") != std::string::npos);
    }
    SECTION("bad arguments") {
        CHECK(run_cli("compute --complex " + corpus_file("circle") + " --level 9").status == 2);
        CHECK(run_cli("check nosuchsuite").status == 2);
        CHECK(run_cli("compute --complex " + corpus_file("circle") + " --notion both").status == 2);
    }
}

TEST_CASE("reports are deterministic", "[cli]") {
    auto strip = [](std::vector<nlohmann::json> recs) {
        for (auto& r : recs) r.erase("elapsed_ms");
        return recs;
    };
    const std::string args = "compute --complex " + corpus_file("barycentre_disc") + " --perversity t --level 2 --seed 5";
    const Run a = run_cli(args + " --report " + (scratch_dir() / "report.jsonl").string());
    const Run b = run_cli(args);
    REQUIRE(a.status == 0);
    REQUIRE(b.status == 0);
    CHECK(strip(a.records) == strip(b.records));
    std::vector<nlohmann::json> from_file;
    std::istringstream lines(slurp(scratch_dir() / "report.jsonl"));
    for (std::string line; std::getline(lines, line);) from_file.push_back(nlohmann::json::parse(line));
    CHECK(from_file == a.records);

    const Run other = run_cli("compute --complex " + corpus_file("barycentre_disc") + " --perversity 0 --level 2 --seed 5");
    CHECK(other.records.front()["inputs_digest"] != a.records.front()["inputs_digest"]);
}
