#include "helpers.hpp"
#include "ihom/allowability.hpp"

using namespace ihom;
using testing::pt;

namespace {

struct Disc {
    FilteredComplex X = document_complex(testing::corpus_doc("barycentre_disc"));
    Space space{X};
    StratumId centre = X.singular_strata().at(0);
    Perversity top = gm_perversity(X, GMPreset::Top);
    PointId v(std::int64_t label) const { return *X.vertex_of_label(label); }
};

// Square [0,1]^2 cut along x+y=1; the lower triangle and every edge and vertex are singular
// (filtration 2 of 3), the open upper triangle is regular.
FilteredComplex cut_square() {
    RawComplex raw;
    raw.simplices = {{0, 1, 2}, {1, 2, 3}};
    raw.formal_dim = 3;
    raw.simplex_filtration = {{{0, 1, 2}, 2}, {{0, 1}, 2}, {{0, 2}, 2}, {{1, 2}, 2}, {{1, 3}, 2}, {{2, 3}, 2},
                              {{0}, 2},       {{1}, 2},    {{2}, 2},    {{3}, 2}};
    raw.coordinates = {{0, pt({"0", "0"})}, {1, pt({"1", "0"})}, {2, pt({"0", "1"})}, {3, pt({"1", "1"})}};
    return build_complex(raw);
}

// Two squares side by side with the shared edge x = 1 singular (codim 1).
FilteredComplex strip() {
    RawComplex raw;
    // a=0 (0,0) b=1 (1,0) c=2 (1,1) d=3 (0,1) e=4 (2,0) f=5 (2,1)
    raw.simplices = {{0, 1, 2}, {0, 2, 3}, {1, 4, 5}, {1, 5, 2}};
    raw.formal_dim = 2;
    raw.vertex_filtration = {{1, 1}, {2, 1}};
    raw.coordinates = {{0, pt({"0", "0"})}, {1, pt({"1", "0"})}, {2, pt({"1", "1"})},
                       {3, pt({"0", "1"})}, {4, pt({"2", "0"})}, {5, pt({"2", "1"})}};
    return build_complex(raw);
}

}  // namespace

TEST_CASE("polyhedral preimage dimensions", "[allowability]") {
    Disc d;
    SECTION("missing the stratum") {
        CHECK(preimage_dim_polyhedral(d.space, {{d.v(0), d.v(1)}}, d.centre) == ExtInt::neg_inf());
    }
    SECTION("one interior singular point") {
        CHECK(preimage_dim_polyhedral(d.space, {{d.v(0), d.v(1), d.v(2)}}, d.centre) == ExtInt(0));
    }
    SECTION("crossing a singular edge") {
        const FilteredComplex X = strip();
        Space space(X);
        const StratumId S = X.singular_strata().at(0);
        const PointId p = space.intern(pt({"1/2", "1/4"}));
        const PointId q = space.intern(pt({"3/2", "1/4"}));
        const PointId r = space.intern(pt({"1", "3/4"}));
        CHECK(preimage_dim_polyhedral(space, {{p, q, r}}, S) == ExtInt(1));
        CHECK(preimage_dim_skeleton(space, {{p, q, r}}, S) == ExtInt(2));
    }
}

TEST_CASE("skeleton preimage dimensions", "[allowability]") {
    Disc d;
    CHECK(preimage_dim_skeleton(d.space, {{d.v(0), d.v(1), d.v(2)}}, d.centre) == ExtInt(2));
    CHECK(preimage_dim_skeleton(d.space, {{d.v(3), d.v(0), d.v(1)}}, d.centre) == ExtInt(0));
    CHECK(preimage_dim_skeleton(d.space, {{d.v(0), d.v(1)}}, d.centre) == ExtInt::neg_inf());

    const FilteredComplex X = strip();
    Space space(X);
    const StratumId S = X.singular_strata().at(0);
    const PointId p = space.intern(pt({"1", "1/4"}));
    const PointId q = space.intern(pt({"1", "3/4"}));
    const PointId a = *X.vertex_of_label(0);
    CHECK(preimage_dim_skeleton(space, {{p, q, a}}, S) == ExtInt(1));
    CHECK(preimage_dim_polyhedral(space, {{p, q, a}}, S) == ExtInt(1));
}

TEST_CASE("simplicial envelopes", "[allowability]") {
    Disc d;
    SECTION("empty preimage") {
        const SimplicialEnvelope e = build_envelope(d.space, {{d.v(0), d.v(1)}}, d.centre);
        CHECK(e.pieces.empty());
        CHECK(e.max_dim == ExtInt::neg_inf());
    }
    SECTION("point preimage") {
        const SimplicialEnvelope e = build_envelope(d.space, {{d.v(0), d.v(1), d.v(2)}}, d.centre);
        REQUIRE(e.pieces.size() == 1);
        CHECK(e.pieces[0].dim() == 0);
        CHECK(e.max_dim == ExtInt(0));
        // Mapped back, the piece is the barycentre.
        const GeoSimplex img = to_image(d.space, {{d.v(0), d.v(1), d.v(2)}}, e.pieces[0]);
        CHECK(img.vertices[0] == pt({"1/3", "1/3"}));
    }
    SECTION("quadrilateral piece") {
        const FilteredComplex X = cut_square();
        Space space(X);
        const StratumId S = X.singular_strata().at(0);
        const LinearSimplex s{{space.intern(pt({"0", "0"})), space.intern(pt({"3/5", "0"})), space.intern(pt({"1", "1"}))}};
        const SimplicialEnvelope e = build_envelope(space, s, S);
        CHECK(e.max_dim == ExtInt(2));
        std::size_t triangles = 0;
        for (const auto& g : e.pieces) triangles += g.dim() == 2 ? 1 : 0;
        CHECK(triangles == 2);
        CHECK(preimage_dim_polyhedral(space, s, S) == ExtInt(2));
    }
}

TEST_CASE("allowability of the motivating barycentre example", "[allowability]") {
    Disc d;
    REQUIRE(dual_perversity(d.top, d.X)(d.centre) == ExtInt(0));
    const LinearSimplex big{{d.v(0), d.v(1), d.v(2)}};
    CHECK(is_allowable(d.space, big, d.top, Notion::Poly));
    CHECK_FALSE(is_allowable(d.space, big, d.top, Notion::GM));
    // Regular image: allowable for every perversity.
    for (GMPreset g : {GMPreset::Zero, GMPreset::Top})
        for (Notion n : {Notion::Poly, Notion::GM})
            CHECK(is_allowable(d.space, {{d.v(0), d.v(1)}}, gm_perversity(d.X, g), n));
    // A segment through the centre needs an empty preimage when D p = 0.
    const PointId m = d.space.intern(pt({"1/2", "1/2"}));
    for (Notion n : {Notion::Poly, Notion::GM}) CHECK_FALSE(is_allowable(d.space, {{d.v(0), m}}, d.top, n));
    // With D p = -inf everything is allowable.
    const Perversity inf = constant_perversity(d.X, ExtInt::pos_inf());
    CHECK(is_allowable(d.space, {{d.v(0), m}}, inf, Notion::GM));
}

TEST_CASE("intersection chains", "[allowability]") {
    Disc d;
    CHECK(is_intersection_chain(d.space, Chain(2), d.top, Notion::Poly));
    const PointId m = d.space.intern(pt({"1/2", "1/2"}));
    // Allowable triangle with the edge [0, m] through the centre; nothing cancels it.
    const Chain bad = Chain::simplex({d.v(0), d.v(1), m});
    CHECK(is_allowable(d.space, {{d.v(0), d.v(1), m}}, d.top, Notion::Poly));
    CHECK_FALSE(is_intersection_chain(d.space, bad, d.top, Notion::Poly));
    // A boundary of a simplex with all faces allowable.
    const Chain eta = Chain::simplex({d.v(0), d.v(1), d.v(2)});
    CHECK(is_intersection_chain(d.space, eta.boundary(), d.top, Notion::Poly));
    CHECK(is_intersection_chain(d.space, eta, d.top, Notion::Poly));
    CHECK_FALSE(is_intersection_chain(d.space, eta, d.top, Notion::GM));
}

TEST_CASE("gm allowability implies poly allowability", "[allowability]") {
    for (const auto& doc : testing::corpus_docs()) {
        INFO(doc.name);
        const FilteredComplex X = document_complex(doc);
        for (const char* spec : {"0", "t", "k:1"}) {
            Workspace ws(X, parse_perversity(spec, X, &doc), 3, doc.chains);
            const CellComplex& K = ws.cells(Notion::GM, 1);
            std::size_t violations = 0;
            for (const auto& dim : K.cells)
                for (const auto& c : dim)
                    if (ws.oracle().allowable(c, Notion::GM) && !ws.oracle().allowable(c, Notion::Poly)) ++violations;
            CHECK(violations == 0);
        }
    }
}

TEST_CASE("images must stay inside the complex", "[allowability]") {
    Disc d;
    CHECK(testing::code_of([&] { d.space.intern(pt({"1", "1"})); }) == ErrorCode::InvalidGeometry);
    CHECK(covered_by_complex(d.space, {d.v(0), d.v(1), d.v(2)}));
    // Two edges meeting at a vertex; the chord between their ends leaves the complex.
    const FilteredComplex X = testing::complex_of({{0, 1}, {1, 2}}, 1);
    Space line(X);
    CHECK_FALSE(covered_by_complex(line, {0, 2}));
    CHECK(covered_by_complex(line, {0, 1}));
}
