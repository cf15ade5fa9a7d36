#include "ihom/geometry.hpp"
#include "ihom/errors.hpp"
#include "ihom/lp.hpp"

#include <algorithm>
#include <random>

namespace ihom {

bool affinely_independent(const std::vector<Point>& pts) {
    return affine_dim(pts) == ExtInt(static_cast<std::int64_t>(pts.size()) - 1);
}

GeoSimplex make_simplex(std::vector<Point> pts) {
    if (!pts.empty() && !affinely_independent(pts))
        throw Error(ErrorCode::InvalidGeometry, "simplex vertices are affinely dependent");
    return GeoSimplex{std::move(pts)};
}

Polytope simplex_intersection(const GeoSimplex& P, const GeoSimplex& Q) {
    if (P.empty() || Q.empty()) return Polytope(RMat{RVec{}}, RVec{Rational(1)}, RMat{}, 0);
    const std::size_t n1 = P.vertices.size(), n2 = Q.vertices.size();
    const std::size_t m = P.vertices[0].size();
    const std::size_t n = n1 + n2;
    RMat A;
    RVec b;
    RVec row(n, Rational(0));
    for (std::size_t j = 0; j < n1; ++j) row[j] = 1;
    A.push_back(row);
    b.push_back(1);
    row.assign(n, Rational(0));
    for (std::size_t j = 0; j < n2; ++j) row[n1 + j] = 1;
    A.push_back(row);
    b.push_back(1);
    RMat E(m, RVec(n, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        row.assign(n, Rational(0));
        for (std::size_t j = 0; j < n1; ++j) row[j] = E[i][j] = P.vertices[j][i];
        for (std::size_t j = 0; j < n2; ++j) row[n1 + j] = -Q.vertices[j][i];
        A.push_back(row);
        b.push_back(0);
    }
    return Polytope(std::move(A), std::move(b), std::move(E), n);
}

bool interiors_meet(const GeoSimplex& T, const GeoSimplex& C) {
    if (T.empty() || C.empty()) return false;
    const std::size_t n1 = T.vertices.size(), n2 = C.vertices.size();
    const std::size_t m = T.vertices[0].size();
    // Variables: lambda, mu, s, slack for lambda, slack for mu.
    const std::size_t s = n1 + n2;
    const std::size_t n = 2 * (n1 + n2) + 1;
    RMat A;
    RVec b;
    RVec row(n, Rational(0));
    for (std::size_t j = 0; j < n1; ++j) row[j] = 1;
    A.push_back(row);
    b.push_back(1);
    row.assign(n, Rational(0));
    for (std::size_t j = 0; j < n2; ++j) row[n1 + j] = 1;
    A.push_back(row);
    b.push_back(1);
    for (std::size_t i = 0; i < m; ++i) {
        row.assign(n, Rational(0));
        for (std::size_t j = 0; j < n1; ++j) row[j] = T.vertices[j][i];
        for (std::size_t j = 0; j < n2; ++j) row[n1 + j] = -C.vertices[j][i];
        A.push_back(row);
        b.push_back(0);
    }
    for (std::size_t j = 0; j < n1 + n2; ++j) {
        row.assign(n, Rational(0));
        row[j] = 1;
        row[s] = -1;
        row[s + 1 + j] = -1;
        A.push_back(row);
        b.push_back(0);
    }
    RVec c(n, Rational(0));
    c[s] = 1;
    LPResult r = lp_maximize(A, b, c);
    return r.status == LPStatus::Optimal && r.value > 0;
}

bool general_position(const GeoSimplex& P, const GeoSimplex& Q, const GeoSimplex& Delta) {
    ExtInt d = simplex_intersection(P, Q).dim();
    return d <= ExtInt(P.dim()) + ExtInt(Q.dim()) - ExtInt(Delta.dim());
}

GeoSimplex cone_on(const Point& u, const GeoSimplex& V) {
    GeoSimplex c;
    c.vertices.push_back(u);
    c.vertices.insert(c.vertices.end(), V.vertices.begin(), V.vertices.end());
    return c;
}

bool inside_boundary(const std::vector<Point>& pts, const AffineFrame& delta) {
    if (pts.empty()) return true;
    auto beta = delta.coords(centroid(pts));
    if (!beta) return false;
    return std::any_of(beta->begin(), beta->end(), [](const Rational& q) { return q == 0; });
}

bool strong_general_position_full(const Point& u, const GeoSimplex& T, const GeoSimplex& V, const GeoSimplex& Delta) {
    GeoSimplex C = cone_on(u, V);
    Polytope I = simplex_intersection(T, C);
    if (I.empty()) return true;
    if (inside_boundary(I.vertices(), AffineFrame(Delta.vertices))) return true;
    if (!interiors_meet(T, C)) return false;
    return I.dim() == ExtInt(T.dim() + V.dim() + 1 - Delta.dim());
}

bool strong_general_position(const Point& u, const GeoSimplex& T, const GeoSimplex& V, const GeoSimplex& Delta) {
    // A face of Delta meets any cone either inside the boundary or as the whole cone.
    bool face = std::all_of(T.vertices.begin(), T.vertices.end(), [&](const Point& p) {
        return std::find(Delta.vertices.begin(), Delta.vertices.end(), p) != Delta.vertices.end();
    });
    if (face) return true;
    return strong_general_position_full(u, T, V, Delta);
}

Rational squared_diameter(const std::vector<Point>& pts) {
    Rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, squared_distance(pts[i], pts[j]));
    return best;
}

Rational pb_radius_ratio(std::int64_t l) {
    return Rational(static_cast<long>(l), static_cast<unsigned long>((l + 1) * (2 * l + 1)));
}

Polytope simplex_polytope(const GeoSimplex& S) {
    const std::size_t n = S.vertices.size();
    RMat E(S.vertices[0].size(), RVec(n));
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) E[i][j] = S.vertices[j][i];
    return Polytope(RMat{RVec(n, Rational(1))}, RVec{Rational(1)}, std::move(E), n);
}

bool pseudobarycentre_acceptable(const Point& u, const GeoSimplex& Delta, const std::vector<GeoSimplex>& boundary_faces,
                                 const std::vector<GeoSimplex>& envelopes, const std::vector<Polytope>& forbidden) {
    const std::int64_t l = Delta.dim();
    AffineFrame frame(Delta.vertices);
    auto beta = frame.coords(u);
    if (!beta) return false;
    if (std::any_of(beta->begin(), beta->end(), [](const Rational& q) { return q <= 0; })) return false;
    Rational r = pb_radius_ratio(l);
    if (!(squared_distance(u, centroid(Delta.vertices)) < r * r * squared_diameter(Delta.vertices))) return false;
    for (const auto& F : forbidden)
        if (F.contains(u)) return false;
    GeoSimplex none;
    for (const auto& T : envelopes) {
        if (!strong_general_position(u, T, none, Delta)) return false;
        for (const auto& B : boundary_faces)
            if (!strong_general_position(u, T, B, Delta)) return false;
    }
    return true;
}

PseudoBarycentreChoice sample_pseudobarycentre(const GeoSimplex& Delta, const std::vector<GeoSimplex>& boundary_faces,
                                               const std::vector<GeoSimplex>& envelopes,
                                               const std::vector<Polytope>& forbidden, std::uint64_t seed,
                                               const SamplerConfig& config) {
    const std::int64_t l = Delta.dim();
    if (l < 1) throw Error(ErrorCode::InvalidGeometry, "pseudo-barycentre sampling needs dimension >= 1");
    std::mt19937_64 rng(seed);
    // Half-width H of the integer box: sum |e_i| / D <= l H / D stays inside the radius.
    const std::int64_t denom_factor = (l + 1) * (2 * l + 1);
    int k = 6;
    while ((std::int64_t{1} << (k - 6)) < denom_factor) ++k;
    PseudoBarycentreChoice out;
    out.parent = Delta;
    out.seed = seed;
    for (std::uint64_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
        if (attempt > 1 && (attempt - 1) % config.refine_every == 0 && k < 60) ++k;
        const std::int64_t D = std::int64_t{1} << k;
        const std::int64_t H = std::max<std::int64_t>(1, D / denom_factor);
        std::uniform_int_distribution<std::int64_t> dist(-H, H);
        std::vector<Rational> w(Delta.vertices.size());
        Rational rest = 1;
        for (std::int64_t i = 0; i < l; ++i) {
            Rational offset(static_cast<long>(dist(rng)), static_cast<unsigned long>(D));
            offset.canonicalize();
            w[i] = Rational(1, static_cast<unsigned long>(l + 1)) + offset;
            rest -= w[i];
        }
        w[l] = rest;
        Point u = combine(Delta.vertices, w);
        if (pseudobarycentre_acceptable(u, Delta, boundary_faces, envelopes, forbidden)) {
            out.u = std::move(u);
            out.attempts = attempt;
            return out;
        }
    }
    throw Error(ErrorCode::SamplingExhausted,
                "no acceptable point after " + std::to_string(config.max_attempts) + " attempts");
}

}  // namespace ihom
