#include "ihom/document.hpp"
#include "ihom/errors.hpp"
#include "ihom/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace ihom;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, BadParse = 2, BadValidation = 3 };

int exit_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::ParseError: return BadParse;
        default: return BadValidation;
    }
}

Notion parse_notion(const std::string& s) {
    if (s == "poly") return Notion::Poly;
    if (s == "gm") return Notion::GM;
    throw Error(ErrorCode::ParseError, "notion must be poly or gm, got '" + s + "'");
}

json torsion_json(const std::vector<BigInt>& t) {
    json a = json::array();
    for (const auto& d : t) a.push_back(d.get_str());
    return a;
}

class Emitter {
public:
    explicit Emitter(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorCode::ValidationError, "cannot write report " + path);
        }
    }
    void emit(const json& rec) {
        const std::string line = rec.dump();
        std::cout << line << '\n';
        if (file_) file_ << line << '\n';
    }

private:
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intersection homology of filtered simplicial complexes"};
    app.require_subcommand(1);

    std::string complex_path, perversity = "0", notion_text = "poly", ring_text = "Z", corpus = "corpus", report;
    std::string suite;
    int level = 1;
    std::uint64_t seed = 1;

    auto* compute = app.add_subcommand("compute", "intersection homology of one complex");
    compute->add_option("--complex", complex_path, "complex document (JSON)")->required();
    compute->add_option("--perversity", perversity, "0|m|n|t, k:<v>, c2:<v>,..., s<id>:<v>,... or a named entry");
    compute->add_option("--notion", notion_text, "poly or gm");
    compute->add_option("--ring", ring_text, "Z or Zp:<p>");
    compute->add_option("--level", level, "subdivision depth")->check(CLI::Range(0, 3));
    compute->add_option("--seed", seed, "sampler seed");
    compute->add_option("--report", report, "also write the records to this file");

    auto* check = app.add_subcommand("check", "run a verification suite over the corpus");
    check->add_option("suite", suite, "cone|mv|subdivision|compare|geometry")
        ->required()
        ->check(CLI::IsMember({"cone", "mv", "subdivision", "compare", "geometry"}));
    check->add_option("--corpus", corpus, "corpus directory");
    check->add_option("--seed", seed, "sampler seed");
    check->add_option("--report", report, "also write the records to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadParse;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        Emitter out(report);
        if (*compute) {
            std::ifstream in(complex_path);
            if (!in) throw Error(ErrorCode::ParseError, "cannot read " + complex_path);
            std::stringstream ss;
            ss << in.rdbuf();
            const std::string text = ss.str();
            ComplexDocument doc;
            try {
                doc = parse_document(text);
            } catch (const Error& e) {
                std::string msg = e.what();
                throw Error(e.code(), complex_path + ": " + msg.substr(msg.find(": ") + 2));
            }
            FilteredComplex X = document_complex(doc);
            Perversity p = parse_perversity(perversity, X, &doc);
            const Notion notion = parse_notion(notion_text);
            const RingSpec ring = parse_ring(ring_text);
            out.emit({{"record", "header"},
                      {"command", "compute"},
                      {"inputs_digest", fnv1a64_hex(text + "\n" + perversity + "\n" + notion_text + "\n" + ring_text +
                                                    "\n" + std::to_string(level))},
                      {"seed", seed},
                      {"complex", doc.name},
                      {"perversity", perversity},
                      {"notion", notion_text},
                      {"ring", ring.name()},
                      {"level", level}});
            Workspace ws(X, p, seed, notion == Notion::Poly ? doc.chains : std::nullopt);
            HomologyResult h = ws.homology(notion, level, ring);
            for (std::size_t k = 0; k < h.betti.size(); ++k)
                out.emit({{"record", "homology"}, {"degree", k}, {"betti", h.betti[k]}, {"torsion", torsion_json(h.torsion[k])}});
            out.emit({{"record", "summary"}, {"pass", true}, {"homology", h.summary()}, {"elapsed_ms", elapsed()}});
            return Ok;
        }
        std::vector<std::pair<std::filesystem::path, ComplexDocument>> docs = load_corpus(corpus);
        std::string digest_input;
        for (const auto& [path, doc] : docs) digest_input += serialize_document(doc);
        out.emit({{"record", "header"},
                  {"command", "check"},
                  {"suite", suite},
                  {"inputs_digest", fnv1a64_hex(digest_input)},
                  {"seed", seed}});
        SuiteResult result = run_suite(suite, docs, seed);
        std::size_t failed = 0;
        for (const auto& c : result.checks) {
            json values = json::object();
            for (const auto& [k, v] : c.values) values[k] = v;
            out.emit({{"record", "check"}, {"suite", suite}, {"name", c.name}, {"pass", c.pass}, {"values", values}});
            failed += c.pass ? 0 : 1;
        }
        out.emit({{"record", "summary"},
                  {"pass", failed == 0},
                  {"checks", result.checks.size()},
                  {"failed", failed},
                  {"elapsed_ms", elapsed()}});
        return failed == 0 ? Ok : CheckFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadValidation;
    }
}
