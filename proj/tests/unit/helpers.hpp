#pragma once

#include "ihom/document.hpp"
#include "ihom/errors.hpp"

#include <catch_amalgamated.hpp>

#include <functional>

namespace testing {

inline ihom::FilteredComplex complex_of(std::vector<std::vector<std::int64_t>> simplices, int n,
                                        std::map<std::int64_t, int> vertex_filtration = {}) {
    ihom::RawComplex raw;
    raw.simplices = std::move(simplices);
    raw.formal_dim = n;
    raw.vertex_filtration = std::move(vertex_filtration);
    return ihom::build_complex(raw);
}

/// Boundary of a triangle on the given labels.
inline std::vector<std::vector<std::int64_t>> triangle_cycle(std::int64_t a, std::int64_t b, std::int64_t c) {
    return {{a, b}, {b, c}, {a, c}};
}

inline ihom::ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ihom::Error& e) {
        return e.code();
    }
    FAIL("expected an ihom::Error");
    return ihom::ErrorCode::ValidationError;
}

inline const ihom::ComplexDocument& corpus_doc(const std::string& name) {
    static const auto corpus = ihom::load_corpus(IHOM_CORPUS_DIR);
    for (const auto& [path, doc] : corpus)
        if (doc.name == name) return doc;
    throw std::runtime_error("missing corpus document " + name);
}

inline std::vector<ihom::ComplexDocument> corpus_docs() {
    std::vector<ihom::ComplexDocument> out;
    for (auto& [path, doc] : ihom::load_corpus(IHOM_CORPUS_DIR)) out.push_back(doc);
    return out;
}

inline ihom::Point pt(std::initializer_list<const char*> coords) {
    ihom::Point p;
    for (const char* c : coords) p.push_back(*ihom::parse_rational(c));
    return p;
}

}  // namespace testing
