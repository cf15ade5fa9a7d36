#include "helpers.hpp"
#include "ihom/geometry.hpp"
#include "oracles/oracles.hpp"

#include <random>

using namespace ihom;
using testing::pt;

namespace {

GeoSimplex triangle() { return make_simplex({pt({"0", "0"}), pt({"1", "0"}), pt({"0", "1"})}); }

Point barycentre(const GeoSimplex& S) { return centroid(S.vertices); }

// Rank of the direction vectors of several simplices together, by the dense oracle.
std::size_t joint_direction_rank(const std::vector<const GeoSimplex*>& parts) {
    std::vector<std::vector<mpq_class>> rows;
    for (const GeoSimplex* s : parts)
        for (std::size_t i = 1; i < s->vertices.size(); ++i) rows.push_back(point_sub(s->vertices[i], s->vertices[0]));
    return oracle::rank_q(rows);
}

}  // namespace

TEST_CASE("affine dimension", "[geometry]") {
    CHECK(affine_dim({}) == ExtInt::neg_inf());
    CHECK(affine_dim({pt({"1/2", "3"})}) == ExtInt(0));
    CHECK(affine_dim({pt({"0", "0"}), pt({"1", "1"}), pt({"3", "3"})}) == ExtInt(1));
    CHECK(affine_dim({pt({"0", "0"}), pt({"1", "0"}), pt({"0", "1"})}) == ExtInt(2));
    CHECK_FALSE(affinely_independent({pt({"0", "0"}), pt({"1", "1"}), pt({"2", "2"})}));
    CHECK(testing::code_of([] { make_simplex({pt({"0"}), pt({"0"})}); }) == ErrorCode::InvalidGeometry);
}

TEST_CASE("simplex intersections", "[geometry]") {
    const GeoSimplex D = triangle();
    // a, b, c collinear on the bottom edge.
    const GeoSimplex ab = make_simplex({pt({"0", "0"}), pt({"1/2", "0"})});
    const GeoSimplex bc = make_simplex({pt({"1/2", "0"}), pt({"1", "0"})});
    SECTION("idempotent") {
        Polytope P = simplex_intersection(D, D);
        CHECK(P.dim() == ExtInt(2));
        CHECK(P.vertices().size() == 3);
    }
    SECTION("collinear segments meet in their common point") {
        Polytope P = simplex_intersection(ab, bc);
        REQUIRE(P.vertices().size() == 1);
        CHECK(P.vertices()[0] == pt({"1/2", "0"}));
        CHECK(P.dim() == ExtInt(0));
        CHECK(general_position(ab, bc, D));
    }
    SECTION("overlapping collinear segments are not in general position") {
        const GeoSimplex moved = make_simplex({pt({"1/4", "0"}), pt({"1", "0"})});
        CHECK(simplex_intersection(ab, moved).dim() == ExtInt(1));
        CHECK_FALSE(general_position(ab, moved, D));
    }
    SECTION("disjoint segments") {
        const GeoSimplex far = make_simplex({pt({"0", "1/2"}), pt({"0", "1"})});
        CHECK(simplex_intersection(bc, far).empty());
        CHECK(simplex_intersection(bc, far).dim() == ExtInt::neg_inf());
        CHECK(general_position(bc, far, D));
    }
    SECTION("P = Q = Delta is in general position") { CHECK(general_position(D, D, D)); }
}

TEST_CASE("open interiors", "[geometry]") {
    const GeoSimplex D = triangle();
    CHECK(interiors_meet(D, D));
    const GeoSimplex edge = make_simplex({pt({"0", "0"}), pt({"1", "0"})});
    CHECK_FALSE(interiors_meet(edge, D));
    // Crossing diagonals of the square [0,1/2]^2 inside the triangle.
    const GeoSimplex d1 = make_simplex({pt({"0", "0"}), pt({"1/2", "1/2"})});
    const GeoSimplex d2 = make_simplex({pt({"1/2", "0"}), pt({"0", "1/2"})});
    CHECK(interiors_meet(d1, d2));
    // Touching at an endpoint only.
    const GeoSimplex d3 = make_simplex({pt({"1/2", "1/2"}), pt({"1", "0"})});
    CHECK_FALSE(interiors_meet(d1, d3));
}

TEST_CASE("strong general position", "[geometry]") {
    const GeoSimplex D = triangle();
    const Point u = barycentre(D);
    const GeoSimplex a0 = make_simplex({D.vertices[0]});
    SECTION("empty intersection") {
        const GeoSimplex T = make_simplex({pt({"1/2", "1/2"}), pt({"1", "0"})});
        CHECK(strong_general_position(u, T, a0, D));
        CHECK(strong_general_position_full(u, T, a0, D));
    }
    SECTION("the non-generic segment through the barycentre") {
        const GeoSimplex T = make_simplex({D.vertices[0], u});
        CHECK_FALSE(strong_general_position_full(u, T, a0, D));
        // Off the line a0-u the intersection collapses to a0, inside the boundary.
        CHECK(strong_general_position_full(pt({"1/3", "1/4"}), T, a0, D));
        // On the line, between a0 and u or beyond u, it is a segment of the wrong dimension.
        CHECK_FALSE(strong_general_position_full(pt({"1/4", "1/4"}), T, a0, D));
        CHECK_FALSE(strong_general_position_full(pt({"2/5", "2/5"}), T, a0, D));
    }
    SECTION("T a boundary facet containing V") {
        const GeoSimplex T = make_simplex({D.vertices[0], D.vertices[1]});
        CHECK(strong_general_position(u, T, a0, D));
        CHECK(strong_general_position_full(u, T, a0, D));
    }
    SECTION("transversal crossing") {
        // T crosses the cone from u to the edge [a1,a2] in its interior.
        const GeoSimplex V = make_simplex({D.vertices[1], D.vertices[2]});
        const GeoSimplex T = make_simplex({pt({"1/10", "1/5"}), pt({"7/10", "1/5"})});
        CHECK(strong_general_position_full(u, T, V, D));
    }
    SECTION("empty V is the apex alone") {
        const GeoSimplex empty;
        CHECK(cone_on(u, empty).vertices.size() == 1);
        const GeoSimplex T = make_simplex({pt({"0", "0"}), pt({"2/3", "1/3"})});
        // The line misses u: empty intersection.
        CHECK(strong_general_position_full(u, T, empty, D));
        // A point T equal to u: dim 0 but required 0 + (-1) + 1 - 2 = -2.
        CHECK_FALSE(strong_general_position_full(u, make_simplex({u}), empty, D));
    }
}

TEST_CASE("shortcut and full evaluation agree", "[geometry]") {
    std::mt19937_64 rng(11);
    auto rq = [&] { return Rational(std::uniform_int_distribution<int>(0, 12)(rng), 12); };
    const GeoSimplex D = triangle();
    for (int t = 0; t < 200; ++t) {
        Rational x = rq(), y = rq();
        if (x + y >= 1 || x == 0 || y == 0) continue;
        x.canonicalize();
        y.canonicalize();
        const Point u{x, y};
        const std::size_t i = static_cast<std::size_t>(t % 3), j = static_cast<std::size_t>((t / 3) % 3);
        const GeoSimplex T = make_simplex({D.vertices[i], D.vertices[(i + 1) % 3]});
        const GeoSimplex V = make_simplex({D.vertices[j]});
        CHECK(strong_general_position(u, T, V, D) == strong_general_position_full(u, T, V, D));
    }
}

TEST_CASE("general position equivalence when interiors meet", "[geometry]") {
    std::mt19937_64 rng(5);
    auto rint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::size_t tested = 0;
    for (int t = 0; t < 400 && tested < 60; ++t) {
        const int l = rint(2, 3);
        std::vector<Point> verts;
        for (int i = 0; i <= l; ++i) {
            Point p(l, Rational(0));
            if (i > 0) p[i - 1] = 1;
            verts.push_back(p);
        }
        const GeoSimplex D = make_simplex(verts);
        auto inside = [&] {
            std::vector<Rational> w;
            int total = 0;
            for (int i = 0; i <= l; ++i) {
                w.emplace_back(rint(1, 5));
                total += static_cast<int>(w.back().get_num().get_si());
            }
            for (auto& x : w) x /= total;
            return combine(verts, w);
        };
        auto random_simplex = [&](int k) {
            std::vector<Point> pts;
            do {
                pts.clear();
                for (int i = 0; i <= k; ++i) pts.push_back(inside());
            } while (!affinely_independent(pts));
            return make_simplex(pts);
        };
        const GeoSimplex P = random_simplex(rint(1, l));
        const GeoSimplex Q = random_simplex(rint(1, l));
        if (!interiors_meet(P, Q)) continue;
        ++tested;
        const ExtInt expected = ExtInt(P.dim() + Q.dim() - l);
        const bool gp = general_position(P, Q, D);
        const bool equality = simplex_intersection(P, Q).dim() == expected;
        // Transversality of the affine hulls, from the dense rank oracle.
        const bool transverse = joint_direction_rank({&P, &Q}) == static_cast<std::size_t>(l);
        CHECK(gp == equality);
        CHECK(equality == transverse);
    }
    CHECK(tested >= 30);
}

TEST_CASE("dimension of a union is the largest piece", "[geometry]") {
    const GeoSimplex D = triangle();
    const GeoSimplex a = make_simplex({pt({"0", "0"}), pt({"1/2", "0"})});
    const GeoSimplex b = make_simplex({pt({"1/4", "1/4"})});
    std::vector<Point> all = simplex_intersection(D, a).vertices();
    const auto more = simplex_intersection(D, b).vertices();
    ExtInt pieces = ext_max(simplex_intersection(D, a).dim(), simplex_intersection(D, b).dim());
    CHECK(pieces == ExtInt(1));
    // The affine hull of the union can be larger; the union law is about the pieces.
    all.insert(all.end(), more.begin(), more.end());
    CHECK(affine_dim(all) == ExtInt(2));
}

TEST_CASE("polytope triangulation covers a quadrilateral", "[geometry]") {
    // A wide triangle cuts the top corner off: (0,0), (2,0), (1,1), (0,1).
    const GeoSimplex big = make_simplex({pt({"0", "0"}), pt({"2", "0"}), pt({"0", "2"})});
    const GeoSimplex other = make_simplex({pt({"-10", "1"}), pt({"10", "1"}), pt({"0", "-10"})});
    Polytope P = simplex_intersection(big, other);
    const auto tris = P.triangulate();
    CHECK(P.dim() == ExtInt(2));
    CHECK(P.vertices().size() == 4);
    CHECK(tris.size() == 2);
}

TEST_CASE("pseudo-barycentre sampling", "[geometry]") {
    SECTION("segment with no envelopes stays within a sixth of the midpoint") {
        const GeoSimplex D = make_simplex({pt({"0", "0"}), pt({"3", "0"})});
        const std::vector<GeoSimplex> ends{make_simplex({D.vertices[0]}), make_simplex({D.vertices[1]})};
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const PseudoBarycentreChoice c = sample_pseudobarycentre(D, ends, {}, {}, seed);
            const Rational limit = squared_diameter(D.vertices) * Rational(1, 36);
            CHECK(squared_distance(c.u, barycentre(D)) < limit);
            CHECK(c.u[0] > 0);
            CHECK(c.u[0] < 3);
            CHECK(c.seed == seed);
        }
        CHECK(pb_radius_ratio(1) == Rational(1, 6));
        CHECK(pb_radius_ratio(2) == Rational(2, 15));
    }
    SECTION("an envelope point at the barycentre is avoided") {
        const GeoSimplex D = triangle();
        std::vector<GeoSimplex> faces;
        for (std::size_t i = 0; i < 3; ++i) {
            faces.push_back(make_simplex({D.vertices[i]}));
            faces.push_back(make_simplex({D.vertices[i], D.vertices[(i + 1) % 3]}));
        }
        const GeoSimplex env = make_simplex({barycentre(D)});
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const PseudoBarycentreChoice c = sample_pseudobarycentre(D, faces, {env}, {}, seed);
            CHECK(c.u != barycentre(D));
            for (const auto& B : faces) CHECK(strong_general_position_full(c.u, env, B, D));
            CHECK(pseudobarycentre_acceptable(c.u, D, faces, {env}, {}));
        }
    }
    SECTION("forbidding the whole simplex exhausts the sampler") {
        const GeoSimplex D = triangle();
        SamplerConfig cfg;
        cfg.max_attempts = 300;
        cfg.refine_every = 100;
        CHECK(testing::code_of([&] { sample_pseudobarycentre(D, {}, {}, {simplex_polytope(D)}, 1, cfg); }) ==
              ErrorCode::SamplingExhausted);
    }
    SECTION("deterministic for a fixed seed") {
        const GeoSimplex D = triangle();
        CHECK(sample_pseudobarycentre(D, {}, {}, {}, 42).u == sample_pseudobarycentre(D, {}, {}, {}, 42).u);
    }
}
