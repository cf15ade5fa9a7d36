#include "ihom/allowability.hpp"
#include "ihom/errors.hpp"

#include <algorithm>

namespace ihom {

const char* notion_name(Notion n) { return n == Notion::Poly ? "poly" : "gm"; }

std::optional<SimplexId> common_closed_cell(const Space& space, const std::vector<PointId>& pts) {
    const FilteredComplex& X = space.complex();
    Simplex U;
    for (auto p : pts) {
        const Simplex& c = X.simplex(space.carrier(p));
        U.insert(U.end(), c.begin(), c.end());
    }
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());
    return X.find(U);
}

namespace {

// Joint polytope {(lambda, mu) >= 0 : sum lambda = sum mu = 1, sum lambda_i p_i = sum mu_j q_j}
// with output lambda.
Polytope joint_piece(const Space& space, const std::vector<PointId>& pts, SimplexId cell) {
    const FilteredComplex& X = space.complex();
    const Simplex& cv = X.simplex(cell);
    const std::size_t n1 = pts.size(), n2 = cv.size(), n = n1 + n2;
    const std::size_t m = X.ambient_dim();
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
        for (std::size_t j = 0; j < n1; ++j) row[j] = space.point(pts[j])[i];
        for (std::size_t j = 0; j < n2; ++j) row[n1 + j] = -X.coordinate(cv[j])[i];
        A.push_back(row);
        b.push_back(0);
    }
    RMat E(n1, RVec(n, Rational(0)));
    for (std::size_t j = 0; j < n1; ++j) E[j][j] = 1;
    return Polytope(std::move(A), std::move(b), std::move(E), n);
}

std::vector<std::size_t> mu_coords(std::size_t n1, std::size_t n2) {
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j < n2; ++j) c.push_back(n1 + j);
    return c;
}

void record(PreimageData& d, PreimagePiece piece) {
    auto merge = [](std::map<StratumId, ExtInt>& m, StratumId s, ExtInt v) {
        auto [it, fresh] = m.emplace(s, v);
        if (!fresh) it->second = ext_max(it->second, v);
    };
    merge(d.poly_dim, piece.stratum, piece.dim);
    merge(d.skeleton_dim, piece.stratum, piece.skeleton_dim);
    d.pieces.push_back(std::move(piece));
}

void fast_preimage(const Space& space, const std::vector<PointId>& pts, const Simplex& U, PreimageData& d) {
    const FilteredComplex& X = space.complex();
    std::vector<std::uint32_t> masks;
    for (auto p : pts) {
        std::uint32_t mask = 0;
        for (auto v : X.simplex(space.carrier(p)))
            mask |= 1u << (std::lower_bound(U.begin(), U.end(), v) - U.begin());
        masks.push_back(mask);
    }
    // Only unions of carriers can be met in their interior.
    std::vector<std::uint32_t> unions{0};
    for (auto m : masks) {
        std::size_t k = unions.size();
        for (std::size_t i = 0; i < k; ++i) unions.push_back(unions[i] | m);
        std::sort(unions.begin(), unions.end());
        unions.erase(std::unique(unions.begin(), unions.end()), unions.end());
    }
    for (auto cell_mask : unions) {
        if (cell_mask == 0) continue;
        Simplex cell;
        for (std::size_t i = 0; i < U.size(); ++i)
            if (cell_mask & (1u << i)) cell.push_back(U[i]);
        SimplexId cid = *X.find(cell);
        const Stratum& st = X.strata()[X.stratum_of(cid)];
        if (st.regular) continue;
        PreimagePiece piece;
        piece.stratum = st.id;
        piece.cell = cid;
        for (std::size_t i = 0; i < masks.size(); ++i)
            if ((masks[i] & ~cell_mask) == 0) piece.face.push_back(i);
        piece.dim = ExtInt(static_cast<std::int64_t>(piece.face.size()) - 1);
        piece.skeleton_dim = piece.dim;
        record(d, std::move(piece));
    }
}

void geometric_preimage(const Space& space, const std::vector<PointId>& pts, PreimageData& d) {
    const FilteredComplex& X = space.complex();
    for (const auto& st : X.strata()) {
        if (st.regular) continue;
        for (SimplexId cid : st.simplices) {
            Polytope P = joint_piece(space, pts, cid);
            if (!P.strictly_positive_on(mu_coords(pts.size(), X.simplex(cid).size()))) continue;
            PreimagePiece piece;
            piece.stratum = st.id;
            piece.cell = cid;
            piece.dim = P.dim();
            std::vector<bool> support(pts.size(), false);
            for (const auto& z : P.param_vertices())
                for (std::size_t i = 0; i < pts.size(); ++i)
                    if (z[i] != 0) support[i] = true;
            piece.skeleton_dim = ExtInt(static_cast<std::int64_t>(std::count(support.begin(), support.end(), true)) - 1);
            piece.polytope = std::move(P);
            record(d, std::move(piece));
        }
    }
}

Rational abs_det(RMat m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        std::swap(m[p], m[c]);
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return abs(det);
}

}  // namespace

PreimageData compute_preimage(const Space& space, const std::vector<PointId>& pts, bool force_geometric) {
    PreimageData d;
    if (pts.empty()) return d;
    if (!force_geometric) {
        if (auto cell = common_closed_cell(space, pts)) {
            fast_preimage(space, pts, space.complex().simplex(*cell), d);
            return d;
        }
    }
    geometric_preimage(space, pts, d);
    return d;
}

ExtInt preimage_dim_polyhedral(const Space& space, const LinearSimplex& s, StratumId S) {
    auto d = compute_preimage(space, s.points);
    auto it = d.poly_dim.find(S);
    return it == d.poly_dim.end() ? ExtInt::neg_inf() : it->second;
}

ExtInt preimage_dim_skeleton(const Space& space, const LinearSimplex& s, StratumId S) {
    auto d = compute_preimage(space, s.points);
    auto it = d.skeleton_dim.find(S);
    return it == d.skeleton_dim.end() ? ExtInt::neg_inf() : it->second;
}

bool covered_by_complex(const Space& space, const std::vector<PointId>& pts) {
    if (pts.size() <= 1 || common_closed_cell(space, pts)) return true;
    const FilteredComplex& X = space.complex();
    const std::size_t l = pts.size() - 1;
    Rational total = 0;
    for (SimplexId cid = 0; cid < X.num_simplices(); ++cid) {
        Polytope P = joint_piece(space, pts, cid);
        if (!P.strictly_positive_on(mu_coords(pts.size(), X.simplex(cid).size()))) continue;
        if (P.dim() != ExtInt(static_cast<std::int64_t>(l))) continue;
        const auto& vs = P.vertices();
        for (const auto& simplex : P.triangulate()) {
            RMat m;
            for (std::size_t k = 1; k < simplex.size(); ++k) {
                RVec row(l);
                for (std::size_t i = 0; i < l; ++i) row[i] = vs[simplex[k]][i] - vs[simplex[0]][i];
                m.push_back(std::move(row));
            }
            total += abs_det(std::move(m));
        }
    }
    return total == 1;
}

SimplicialEnvelope build_envelope(const Space& space, const LinearSimplex& s, StratumId S) {
    SimplicialEnvelope env;
    env.stratum = S;
    const std::size_t n = s.points.size();
    for (const auto& piece : compute_preimage(space, s.points).pieces) {
        if (piece.stratum != S) continue;
        env.max_dim = ext_max(env.max_dim, piece.dim);
        if (!piece.polytope) {
            GeoSimplex g;
            for (auto i : piece.face) {
                Point e(n, Rational(0));
                e[i] = 1;
                g.vertices.push_back(e);
            }
            env.pieces.push_back(std::move(g));
            continue;
        }
        const auto& vs = piece.polytope->vertices();
        for (const auto& simplex : piece.polytope->triangulate()) {
            GeoSimplex g;
            for (auto i : simplex) g.vertices.push_back(vs[i]);
            env.pieces.push_back(std::move(g));
        }
    }
    return env;
}

GeoSimplex to_image(const Space& space, const LinearSimplex& s, const GeoSimplex& domain_simplex) {
    std::vector<Point> image;
    for (auto p : s.points) image.push_back(space.point(p));
    GeoSimplex g;
    for (const auto& lambda : domain_simplex.vertices) g.vertices.push_back(combine(image, lambda));
    return g;
}

std::vector<GeoSimplex> image_envelopes(const Space& space, const LinearSimplex& s) {
    std::vector<GeoSimplex> out;
    std::vector<StratumId> met;
    for (const auto& piece : compute_preimage(space, s.points).pieces) met.push_back(piece.stratum);
    std::sort(met.begin(), met.end());
    met.erase(std::unique(met.begin(), met.end()), met.end());
    for (StratumId S : met)
        for (const auto& g : build_envelope(space, s, S).pieces) out.push_back(to_image(space, s, g));
    return out;
}

AllowabilityOracle::AllowabilityOracle(const Space& space, Perversity p)
    : space_(&space), p_(std::move(p)), dual_(dual_perversity(p_, space.complex())) {}

const PreimageData& AllowabilityOracle::preimage(const std::vector<PointId>& pts) {
    std::vector<PointId> key = pts;
    std::sort(key.begin(), key.end());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, compute_preimage(*space_, key)).first->second;
}

ExtInt AllowabilityOracle::bound(std::int64_t l, StratumId S) const { return ExtInt(l) - ExtInt(2) - dual_(S); }

bool AllowabilityOracle::allowable(const std::vector<PointId>& pts, Notion notion) {
    const PreimageData& d = preimage(pts);
    const auto& dims = notion == Notion::Poly ? d.poly_dim : d.skeleton_dim;
    const std::int64_t l = static_cast<std::int64_t>(pts.size()) - 1;
    for (const auto& [S, dim] : dims)
        if (!(dim <= bound(l, S))) return false;
    return true;
}

bool AllowabilityOracle::intersection_chain(const Chain& xi, Notion notion) {
    for (const auto& [k, c] : xi.terms())
        if (!allowable(k, notion)) return false;
    const Chain boundary = xi.boundary();
    for (const auto& [k, c] : boundary.terms())
        if (!allowable(k, notion)) return false;
    return true;
}

bool is_allowable(const Space& space, const LinearSimplex& s, const Perversity& p, Notion notion) {
    AllowabilityOracle oracle(space, p);
    return oracle.allowable(s.points, notion);
}

bool is_intersection_chain(const Space& space, const Chain& xi, const Perversity& p, Notion notion) {
    AllowabilityOracle oracle(space, p);
    return oracle.intersection_chain(xi, notion);
}

}  // namespace ihom
