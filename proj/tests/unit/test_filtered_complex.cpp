#include "helpers.hpp"
#include "oracles/oracles.hpp"

using namespace ihom;
using testing::code_of;
using testing::complex_of;

namespace {

std::size_t count_singular(const FilteredComplex& X) { return X.singular_strata().size(); }
std::size_t count_regular(const FilteredComplex& X) { return X.strata().size() - count_singular(X); }

std::vector<StratumId> stratum_labels(const FilteredComplex& X) {
    std::vector<StratumId> out;
    for (SimplexId s = 0; s < X.num_simplices(); ++s) out.push_back(X.stratum_of(s));
    return out;
}

}  // namespace

TEST_CASE("full 2-simplex is one regular stratum", "[filtered_complex]") {
    const FilteredComplex X = complex_of({{0, 1, 2}}, 2);
    CHECK(X.num_simplices() == 7);
    REQUIRE(X.strata().size() == 1);
    CHECK(X.strata()[0].regular);
    CHECK(X.singular_strata().empty());
}

TEST_CASE("cone over two points", "[filtered_complex]") {
    const FilteredComplex X = complex_of({{0, 1}, {0, 2}}, 1, {{0, 0}, {1, 1}, {2, 1}});
    CHECK(count_singular(X) == 1);
    CHECK(count_regular(X) == 2);
    const StratumId apex = X.singular_strata()[0];
    CHECK(X.strata()[apex].dim == 0);
    CHECK(X.strata()[apex].codim == 1);
    for (const auto& st : X.strata())
        if (st.regular) CHECK(st.simplices.size() == 2);  // open edge plus its free end
}

TEST_CASE("ingestion errors", "[filtered_complex]") {
    RawComplex raw;
    raw.simplices = {{0, 1}};
    raw.formal_dim = 1;
    raw.simplex_filtration = {{{0, 1}, 0}, {{0}, 0}};  // vertex 1 stays at 1
    CHECK(code_of([&] { build_complex(raw); }) == ErrorCode::NonClosedFiltration);

    CHECK(code_of([] { complex_of({{0, 1}}, 1, {{0, 0}, {1, 0}}); }) == ErrorCode::EmptyRegularPart);
    CHECK(code_of([] { complex_of({{0, 1, 2}}, 1); }) == ErrorCode::InvalidComplex);
    CHECK(code_of([] { complex_of({{0, 0}}, 1); }) == ErrorCode::InvalidComplex);
    CHECK(code_of([] { complex_of({{0, 1}}, 1, {{0, 2}}); }) == ErrorCode::InvalidComplex);
}

TEST_CASE("deterministic lexicographic ordering", "[filtered_complex]") {
    const FilteredComplex a = complex_of({{2, 1, 0}}, 2);
    const FilteredComplex b = complex_of({{1, 0}, {0, 2, 1}}, 2);
    REQUIRE(a.num_simplices() == b.num_simplices());
    for (SimplexId s = 0; s < a.num_simplices(); ++s) CHECK(a.simplex(s) == b.simplex(s));
    for (SimplexId s = 0; s + 1 < a.num_simplices(); ++s) CHECK(a.simplex(s) < a.simplex(s + 1));
}

TEST_CASE("strata examples", "[filtered_complex]") {
    SECTION("pinched torus") {
        const FilteredComplex X = document_complex(testing::corpus_doc("pinched_torus"));
        CHECK(count_singular(X) == 1);
        CHECK(count_regular(X) == 1);
        CHECK(X.strata()[X.singular_strata()[0]].simplices.size() == 1);
    }
    SECTION("two singular vertices") {
        const FilteredComplex X = complex_of({{0, 1}, {2, 3}}, 1, {{0, 0}, {2, 0}});
        CHECK(count_singular(X) == 2);
    }
    SECTION("suspension of four points") {
        const FilteredComplex S0 = complex_of({{0}, {1}, {2}, {3}}, 0);
        const FilteredComplex X = suspension_complex(S0);
        CHECK(count_singular(X) == 2);
        CHECK(count_regular(X) == 4);
    }
}

TEST_CASE("strata match the component search oracle", "[filtered_complex]") {
    for (const auto& doc : testing::corpus_docs()) {
        INFO(doc.name);
        const FilteredComplex X = document_complex(doc);
        CHECK(oracle::same_partition(stratum_labels(X), oracle::strata_components(X)));
        std::size_t total = 0;
        for (const auto& st : X.strata()) {
            total += st.simplices.size();
            for (SimplexId s : st.simplices) {
                CHECK(X.filtration(s) == st.dim);
                CHECK(X.stratum_of(s) == st.id);
            }
            CHECK(st.codim == X.formal_dim() - st.dim);
            CHECK(st.regular == (st.dim == X.formal_dim()));
        }
        CHECK(total == X.num_simplices());
    }
}

TEST_CASE("cone construction", "[filtered_complex]") {
    SECTION("cone over a point") {
        const FilteredComplex X = cone_complex(complex_of({{0}}, 0));
        CHECK(X.formal_dim() == 1);
        CHECK(X.num_simplices() == 3);
        CHECK(count_singular(X) == 1);
    }
    SECTION("cone over a circle") {
        const FilteredComplex X = cone_complex(complex_of(testing::triangle_cycle(0, 1, 2), 1));
        CHECK(X.max_simplex_dim() == 2);
        REQUIRE(count_singular(X) == 1);
        const Stratum& apex = X.strata()[X.singular_strata()[0]];
        CHECK(apex.simplices.size() == 1);
        CHECK(X.dim(apex.simplices[0]) == 0);
        CHECK(oracle::same_partition(stratum_labels(X), oracle::strata_components(X)));
    }
    SECTION("cone over a cone over a point") {
        const FilteredComplex X = cone_complex(cone_complex(complex_of({{0}}, 0)));
        CHECK(X.formal_dim() == 2);
        std::size_t codim2 = 0;
        for (StratumId s : X.singular_strata()) {
            const Stratum& st = X.strata()[s];
            if (st.codim != 2) continue;
            ++codim2;
            REQUIRE(st.simplices.size() == 1);
            CHECK(X.dim(st.simplices[0]) == 0);
        }
        CHECK(codim2 == 1);
    }
    SECTION("non-apex strata correspond to strata of the base") {
        for (const char* name : {"pinched_torus", "two_circles", "rp2"}) {
            const FilteredComplex X = document_complex(testing::corpus_doc(name));
            const FilteredComplex C = cone_complex(X);
            CHECK(C.formal_dim() == X.formal_dim() + 1);
            CHECK(C.strata().size() == X.strata().size() + 1);
            for (SimplexId s = 0; s < C.num_simplices(); ++s) CHECK(C.filtration(s) <= C.formal_dim());
        }
    }
}

TEST_CASE("formal dimension below the geometric one is rejected", "[filtered_complex]") {
    CHECK(code_of([] { complex_of({{0, 1, 2}}, 1); }) == ErrorCode::InvalidComplex);
    // A larger formal dimension is accepted: everything sits at the top value.
    const FilteredComplex X = complex_of({{0, 1}}, 3);
    CHECK(X.formal_dim() == 3);
    CHECK(X.strata().size() == 1);
}

TEST_CASE("round trip through raw form", "[filtered_complex]") {
    for (const auto& doc : testing::corpus_docs()) {
        const FilteredComplex X = document_complex(doc);
        const FilteredComplex Y = build_complex(to_raw(X));
        REQUIRE(X.num_simplices() == Y.num_simplices());
        for (SimplexId s = 0; s < X.num_simplices(); ++s) {
            CHECK(X.simplex(s) == Y.simplex(s));
            CHECK(X.filtration(s) == Y.filtration(s));
        }
        CHECK(X.coordinates() == Y.coordinates());
    }
}
