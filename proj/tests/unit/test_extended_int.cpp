#include "helpers.hpp"

#include <random>

using namespace ihom;

TEST_CASE("saturating arithmetic and total order", "[extended_int]") {
    const ExtInt ni = ExtInt::neg_inf(), pi = ExtInt::pos_inf();
    CHECK(ExtInt(3) + ExtInt(4) == ExtInt(7));
    CHECK(ExtInt(3) + pi == pi);
    CHECK(ni + ExtInt(-5) == ni);
    CHECK(-pi == ni);
    CHECK(ExtInt(2) - pi == ni);
    CHECK(ExtInt(2) - ni == pi);
    CHECK(ni < ExtInt(-1000000));
    CHECK(ExtInt(1000000) < pi);
    CHECK(ext_max(ni, ExtInt(0)) == ExtInt(0));
    CHECK(ext_min(pi, ExtInt(0)) == ExtInt(0));
}

TEST_CASE("parse and print", "[extended_int]") {
    for (const char* s : {"0", "-3", "17", "inf", "-inf"}) {
        auto v = ExtInt::parse(s);
        REQUIRE(v);
        CHECK(ExtInt::parse(v->to_string()) == v);
    }
    CHECK(ExtInt::parse("+inf") == ExtInt::pos_inf());
    CHECK_FALSE(ExtInt::parse("1.5"));
    CHECK_FALSE(ExtInt::parse(""));
    CHECK_FALSE(ExtInt::parse("infinity"));
}

TEST_CASE("dual perversity", "[extended_int]") {
    const FilteredComplex circle_cone = cone_complex(testing::complex_of(testing::triangle_cycle(0, 1, 2), 1));
    const StratumId apex = circle_cone.singular_strata().at(0);
    REQUIRE(circle_cone.strata()[apex].codim == 2);

    SECTION("zero on codim 2 dualizes to zero") {
        Perversity d = dual_perversity(gm_perversity(circle_cone, GMPreset::Zero), circle_cone);
        CHECK(d(apex) == ExtInt(0));
    }
    SECTION("top dualizes to zero everywhere") {
        const FilteredComplex X = document_complex(testing::corpus_doc("cone_torus7"));
        Perversity d = dual_perversity(gm_perversity(X, GMPreset::Top), X);
        for (const auto& v : d.values()) CHECK(v == ExtInt(0));
    }
    SECTION("+inf on codim 3 dualizes to -inf") {
        const FilteredComplex X = document_complex(testing::corpus_doc("cone_torus7"));
        const StratumId s = X.singular_strata().at(0);
        REQUIRE(X.strata()[s].codim == 3);
        Perversity d = dual_perversity(constant_perversity(X, ExtInt::pos_inf()), X);
        CHECK(d(s) == ExtInt::neg_inf());
    }
}

TEST_CASE("double dual is the identity on finite perversities", "[extended_int]") {
    std::mt19937_64 rng(7);
    for (const auto& doc : testing::corpus_docs()) {
        const FilteredComplex X = document_complex(doc);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<ExtInt> values;
            for (const auto& st : X.strata())
                values.push_back(st.regular ? ExtInt(0) : ExtInt(std::uniform_int_distribution<int>(-4, 4)(rng)));
            Perversity p(values, PerversityTag::General);
            CHECK(dual_perversity(dual_perversity(p, X), X) == p);
        }
    }
}

TEST_CASE("perversity validity", "[extended_int]") {
    const FilteredComplex X = document_complex(testing::corpus_doc("cone_torus7"));
    CHECK(perversity_valid(gm_perversity(X, GMPreset::LowerMiddle), X));
    CHECK(perversity_valid(gm_perversity(X, GMPreset::Top), X));
    std::vector<ExtInt> v(X.strata().size(), ExtInt(0));
    // Nonzero on a regular stratum is never valid.
    for (const auto& st : X.strata())
        if (st.regular) v[st.id] = 1;
    CHECK_FALSE(perversity_valid(Perversity(v, PerversityTag::General), X));
    // GM growth: codim 3 value may exceed codim 2 value by at most one.
    std::vector<ExtInt> g(X.strata().size(), ExtInt(0));
    for (const auto& st : X.strata())
        if (!st.regular) g[st.id] = 2;
    CHECK_FALSE(perversity_valid(Perversity(g, PerversityTag::GM), X));
    CHECK(perversity_valid(Perversity(g, PerversityTag::General), X));
}
