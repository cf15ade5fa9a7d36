#include "ihom/subdivision.hpp"
#include "ihom/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ihom {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_text(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<PointId> sorted(std::vector<PointId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::vector<PointId>> facets_of(const std::vector<PointId>& sigma) {
    std::vector<std::vector<PointId>> out;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        auto f = sigma;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

PseudoBarycentricSystem::PseudoBarycentricSystem(Space& space, std::optional<Perversity> p, std::uint64_t seed,
                                                 SamplerConfig config)
    : space_(&space), p_(std::move(p)), seed_(seed), config_(config) {
    if (p_) oracle_.emplace(space, *p_);
    stats_.worst_pb4_slack_sq = 0;
}

GeoSimplex PseudoBarycentricSystem::geo(const std::vector<PointId>& pts) const {
    GeoSimplex g;
    for (auto p : pts) g.vertices.push_back(space_->point(p));
    return g;
}

const SystemEntry& PseudoBarycentricSystem::build(const std::vector<PointId>& sigma_in) {
    std::vector<PointId> sigma = sorted(sigma_in);
    if (auto it = memo_.find(sigma); it != memo_.end()) return it->second;
    SystemEntry entry;
    if (sigma.size() == 1) {
        entry.u = sigma[0];
        entry.flags = {{sigma[0]}};
        entry.pb4_ratio_sq = 0;
        ++stats_.systems;
        return memo_.emplace(sigma, std::move(entry)).first->second;
    }
    GeoSimplex Delta = geo(sigma);
    if (!affinely_independent(Delta.vertices))
        throw Error(ErrorCode::InvalidGeometry, "cannot subdivide a degenerate simplex");
    const std::int64_t l = Delta.dim();

    std::vector<std::vector<PointId>> facet_flags;
    for (const auto& tau : facets_of(sigma)) {
        const SystemEntry& sub = build(tau);
        facet_flags.insert(facet_flags.end(), sub.flags.begin(), sub.flags.end());
    }
    std::set<std::vector<PointId>> faces;
    for (const auto& f : facet_flags) {
        const std::size_t k = f.size();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<PointId> face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) face.push_back(f[i]);
            faces.insert(sorted(face));
        }
    }
    std::vector<GeoSimplex> boundary;
    for (const auto& f : faces) boundary.push_back(geo(f));

    LinearSimplex ls{sigma};
    std::vector<GeoSimplex> envelopes = image_envelopes(*space_, ls);
    std::vector<Polytope> forbidden;
    if (oracle_ && oracle_->allowable(sigma, Notion::Poly)) {
        entry.theta_applied = true;
        ++stats_.theta_systems;
        for (const auto& piece : compute_preimage(*space_, sigma).pieces) {
            if (oracle_->dual()(piece.stratum) < ExtInt(-1)) continue;
            if (!piece.polytope) {
                std::vector<Point> pts;
                for (auto i : piece.face) pts.push_back(space_->point(sigma[i]));
                forbidden.push_back(simplex_polytope(GeoSimplex{pts}));
                continue;
            }
            const Polytope& P = *piece.polytope;
            const std::size_t m = space_->complex().ambient_dim();
            RMat E(m, RVec(P.nvars(), Rational(0)));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < P.nvars(); ++j)
                    for (std::size_t k = 0; k < sigma.size(); ++k)
                        if (P.E()[k][j] != 0) E[i][j] += space_->point(sigma[k])[i] * P.E()[k][j];
            forbidden.emplace_back(P.A(), P.b(), std::move(E), P.nvars());
        }
    }

    std::uint64_t h = seed_;
    for (const auto& p : Delta.vertices)
        for (const auto& q : p) h = hash_text(mix(h, 1), q.get_str());
    PseudoBarycentreChoice choice = sample_pseudobarycentre(Delta, boundary, envelopes, forbidden, h, config_);
    auto cell = common_closed_cell(*space_, sigma);
    entry.u = cell ? space_->intern_in(choice.u, *cell) : space_->intern(choice.u);
    entry.attempts = choice.attempts;
    for (const auto& f : facet_flags) {
        auto flag = f;
        flag.push_back(entry.u);
        entry.flags.push_back(std::move(flag));
    }

    // PB4 per cell, exact.
    Rational diam_sq = squared_diameter(Delta.vertices);
    Rational bound(2 * l, 2 * l + 1);
    bound.canonicalize();
    Rational bound_sq = bound * bound;
    entry.pb4_ratio_sq = 0;
    for (const auto& f : entry.flags) {
        Rational r = squared_diameter(geo(f).vertices) / diam_sq;
        entry.pb4_ratio_sq = std::max(entry.pb4_ratio_sq, r);
        ++stats_.pb4_cells;
        stats_.worst_pb4_slack_sq = std::max(stats_.worst_pb4_slack_sq, Rational(r / bound_sq));
    }
    if (entry.pb4_ratio_sq > bound_sq) throw Error(ErrorCode::InvariantViolation, "PB4 diameter bound violated");
    ++stats_.systems;
    stats_.max_attempts = std::max(stats_.max_attempts, entry.attempts);
    return memo_.emplace(sigma, std::move(entry)).first->second;
}

std::string PseudoBarycentricSystem::validate(const std::vector<PointId>& sigma_in) {
    std::vector<PointId> sigma = sorted(sigma_in);
    auto it = memo_.find(sigma);
    if (it == memo_.end()) return "not built";
    const SystemEntry& e = it->second;
    if (sigma.size() == 1) return e.u == sigma[0] && e.flags.size() == 1 ? "" : "PB1: vertex system";
    GeoSimplex Delta = geo(sigma);
    AffineFrame frame(Delta.vertices);
    auto beta = frame.coords(space_->point(e.u));
    if (!beta || std::any_of(beta->begin(), beta->end(), [](const Rational& q) { return q <= 0; }))
        return "PB1: pseudo-barycentre not interior";
    std::size_t expected = 0;
    std::vector<GeoSimplex> boundary;
    std::set<std::vector<PointId>> faces;
    for (const auto& tau : facets_of(sigma)) {
        auto sub = memo_.find(tau);
        if (sub == memo_.end()) return "PB2: face system missing";
        expected += sub->second.flags.size();
        for (const auto& f : sub->second.flags) {
            auto flag = f;
            flag.push_back(e.u);
            if (std::find(e.flags.begin(), e.flags.end(), flag) == e.flags.end()) return "PB3: cone cell missing";
            for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
                std::vector<PointId> face;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (mask & (1u << i)) face.push_back(f[i]);
                faces.insert(sorted(face));
            }
        }
    }
    if (expected != e.flags.size()) return "PB3: extra cells";
    for (const auto& f : faces) boundary.push_back(geo(f));
    const std::int64_t l = Delta.dim();
    Rational bound(2 * l, 2 * l + 1);
    bound.canonicalize();
    Rational diam_sq = squared_diameter(Delta.vertices);
    for (const auto& f : e.flags)
        if (squared_diameter(geo(f).vertices) > bound * bound * diam_sq) return "PB4: cell too large";
    std::vector<GeoSimplex> envelopes = image_envelopes(*space_, LinearSimplex{sigma});
    GeoSimplex none;
    for (const auto& T : envelopes) {
        if (!strong_general_position(space_->point(e.u), T, none, Delta)) return "PB5: envelope meets u badly";
        for (const auto& B : boundary)
            if (!strong_general_position(space_->point(e.u), T, B, Delta)) return "PB5: strong general position fails";
    }
    return "";
}

const Chain& PseudoBarycentricSystem::sd_simplex(const SimplexKey& key) {
    if (auto it = sd_memo_.find(key); it != sd_memo_.end()) return it->second;
    Chain out;
    if (key.size() == 1) {
        out = Chain::simplex(key);
    } else {
        PointId u = build(key).u;
        Chain b = Chain::simplex(key).boundary();
        out = sd(b).cone(u);
    }
    return sd_memo_.emplace(key, std::move(out)).first->second;
}

Chain PseudoBarycentricSystem::sd(const Chain& xi) {
    Chain out(xi.degree());
    for (const auto& [k, c] : xi.terms()) out += sd_simplex(k).scaled(c);
    return out;
}

const Chain& PseudoBarycentricSystem::T_simplex(const SimplexKey& key) {
    if (auto it = T_memo_.find(key); it != T_memo_.end()) return it->second;
    Chain out(static_cast<int>(key.size()));
    if (key.size() > 1) {
        PointId u = build(key).u;
        Chain s = Chain::simplex(key);
        out = (s - homotopy_T(s.boundary())).cone(u);
    }
    return T_memo_.emplace(key, std::move(out)).first->second;
}

Chain PseudoBarycentricSystem::homotopy_T(const Chain& xi) {
    Chain out(xi.degree() + 1);
    for (const auto& [k, c] : xi.terms()) out += T_simplex(k).scaled(c);
    return out;
}

std::vector<std::vector<PointId>> PseudoBarycentricSystem::subdivide(const std::vector<PointId>& sigma, int levels) {
    std::vector<std::vector<PointId>> cells{sorted(sigma)};
    for (int r = 0; r < levels; ++r) {
        std::vector<std::vector<PointId>> next;
        for (const auto& c : cells)
            for (const auto& f : build(c).flags) next.push_back(sorted(f));
        cells = std::move(next);
    }
    return cells;
}

namespace {

void prism_cells(PseudoBarycentricSystem& system, const std::vector<PointId>& sigma,
                 std::vector<std::vector<PrismVertex>>& out) {
    if (sigma.size() == 1) {
        out.push_back({PrismVertex{sigma[0], 0}, PrismVertex{sigma[0], 1}});
        return;
    }
    PointId u = system.build(sigma).u;
    for (const auto& tau : facets_of(sigma)) {
        std::vector<std::vector<PrismVertex>> sub;
        prism_cells(system, tau, sub);
        for (auto& c : sub) {
            std::vector<PrismVertex> cell{PrismVertex{u, 1}};
            cell.insert(cell.end(), c.begin(), c.end());
            out.push_back(std::move(cell));
        }
    }
    std::vector<PrismVertex> base{PrismVertex{u, 1}};
    for (auto p : sigma) base.push_back(PrismVertex{p, 0});
    out.push_back(std::move(base));
}

Rational det(RMat m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

// Vertices of the convex hull of a small point set, as point ids.
std::vector<PointId> extreme_points(const Space& space, std::vector<PointId> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<PointId> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Point> others;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(space.point(pts[j]));
        if (others.empty()) {
            out.push_back(pts[i]);
            continue;
        }
        const std::size_t n = others.size();
        RMat E(others[0].size(), RVec(n));
        for (std::size_t r = 0; r < E.size(); ++r)
            for (std::size_t c = 0; c < n; ++c) E[r][c] = others[c][r];
        Polytope hull(RMat{RVec(n, Rational(1))}, RVec{Rational(1)}, std::move(E), n);
        if (!hull.contains(space.point(pts[i]))) out.push_back(pts[i]);
    }
    return out;
}

// Projections allowed by the recursive construction: Delta itself, or u_sigma joined to an allowed projection of a facet.
void projection_family(PseudoBarycentricSystem& system, const std::vector<PointId>& sigma,
                       std::set<std::vector<PointId>>& out) {
    out.insert(sigma);
    if (sigma.size() == 1) return;
    PointId u = system.build(sigma).u;
    for (const auto& tau : facets_of(sigma)) {
        std::set<std::vector<PointId>> sub;
        projection_family(system, tau, sub);
        for (auto s : sub) {
            s.push_back(u);
            out.insert(sorted(s));
        }
    }
}

}  // namespace

std::string validate_prism(PseudoBarycentricSystem& system, const PrismTriangulation& prism) {
    Space& space = system.space();
    const auto& sigma = prism.sigma;
    const std::size_t l = sigma.size() - 1;
    if (l == 0) return prism.cells.size() == 1 ? "" : "PB6: vertex prism must be one cell";
    std::vector<Point> dverts;
    for (auto p : sigma) dverts.push_back(space.point(p));
    AffineFrame frame(dverts);
    auto coords = [&](const PrismVertex& v) {
        RVec beta = *frame.coords(space.point(v.point));
        RVec x(beta.begin() + 1, beta.end());
        x.push_back(v.t);
        return x;
    };
    Rational volume = 0;
    Chain total;
    for (const auto& cell : prism.cells) {
        if (cell.size() != l + 2) return "prism cell has the wrong dimension";
        RMat m;
        RVec x0 = coords(cell[0]);
        for (std::size_t k = 1; k < cell.size(); ++k) {
            RVec xk = coords(cell[k]);
            for (std::size_t i = 0; i < xk.size(); ++i) xk[i] -= x0[i];
            m.push_back(std::move(xk));
        }
        Rational d = det(std::move(m));
        if (d == 0) return "degenerate prism cell";
        volume += abs(d);
        std::vector<PointId> ids;
        for (const auto& v : cell) ids.push_back(2 * v.point + static_cast<PointId>(v.t));
        total.add(ids, d > 0 ? 1 : -1);
    }
    if (volume != Rational(static_cast<long>(l + 1))) return "prism cells do not fill the prism";
    const Chain boundary = total.boundary();
    for (const auto& [face, c] : boundary.terms()) {
        if (c != 1 && c != -1) return "prism boundary has multiplicity";
        bool bottom = true, top = true;
        std::vector<bool> zero(l + 1, true);
        for (auto id : face) {
            int t = static_cast<int>(id % 2);
            (t == 0 ? top : bottom) = false;
            RVec beta = *frame.coords(space.point(id / 2));
            for (std::size_t i = 0; i <= l; ++i)
                if (beta[i] != 0) zero[i] = false;
        }
        if (!bottom && !top && std::none_of(zero.begin(), zero.end(), [](bool b) { return b; }))
            return "interior face left unmatched";
    }
    // PB7: faces over each facet reproduce the facet prism.
    for (std::size_t i = 0; i <= l; ++i) {
        std::vector<PointId> tau = sigma;
        tau.erase(tau.begin() + static_cast<std::ptrdiff_t>(i));
        std::set<std::vector<PrismVertex>> expected, found;
        std::vector<std::vector<PrismVertex>> sub;
        prism_cells(system, tau, sub);
        for (auto c : sub) {
            std::sort(c.begin(), c.end());
            expected.insert(c);
        }
        for (const auto& cell : prism.cells)
            for (std::size_t k = 0; k < cell.size(); ++k) {
                std::vector<PrismVertex> f = cell;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
                bool inside = std::all_of(f.begin(), f.end(), [&](const PrismVertex& v) {
                    return (*frame.coords(space.point(v.point)))[i] == 0;
                });
                if (!inside) continue;
                std::sort(f.begin(), f.end());
                found.insert(f);
            }
        if (found != expected) return "PB7: facet prism mismatch";
    }
    // PB9: every cell of B_sigma and Delta itself occur as projections; all projections come from the cone recursion.
    std::set<std::vector<PointId>> family, projections;
    projection_family(system, sigma, family);
    for (const auto& cell : prism.cells) {
        std::vector<PointId> pts;
        for (const auto& v : cell) pts.push_back(v.point);
        auto ext = extreme_points(space, pts);
        if (!family.count(ext)) return "PB9: projection outside the cone family";
        projections.insert(ext);
    }
    if (!projections.count(sigma)) return "PB9: Delta is not a projection";
    for (const auto& f : system.build(sigma).flags)
        if (!projections.count(sorted(f))) return "PB9: a cell of B_sigma is not a projection";
    return "";
}

PrismTriangulation build_prism(PseudoBarycentricSystem& system, const std::vector<PointId>& sigma_in) {
    PrismTriangulation prism;
    prism.sigma = sorted(sigma_in);
    prism_cells(system, prism.sigma, prism.cells);
    std::string err = validate_prism(system, prism);
    if (!err.empty()) throw Error(ErrorCode::InvariantViolation, err);
    return prism;
}

std::vector<std::vector<std::size_t>> critical_faces(AllowabilityOracle& oracle, const std::vector<PointId>& cell) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t k = cell.size();
    const std::int64_t l = static_cast<std::int64_t>(k) - 1;
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
        std::vector<std::size_t> face;
        std::vector<PointId> pts;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                face.push_back(i);
                pts.push_back(cell[i]);
            }
        const PreimageData& d = oracle.preimage(pts);
        for (const auto& [S, dim] : d.poly_dim)
            if (ExtInt(0) <= dim && dim == oracle.bound(l, S)) {
                out.push_back(face);
                break;
            }
    }
    return out;
}

BadFaceReport bad_face(AllowabilityOracle& oracle, const std::vector<PointId>& cell) {
    BadFaceReport rep;
    rep.cell = cell;
    auto crit = critical_faces(oracle, cell);
    if (crit.empty()) return rep;
    auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (const auto& M : crit) {
        if (!std::all_of(crit.begin(), crit.end(), [&](const auto& F) { return subset(M, F); })) continue;
        rep.bad_face = M;
        std::vector<PointId> pts;
        for (auto i : M) pts.push_back(cell[i]);
        const std::int64_t l = static_cast<std::int64_t>(cell.size()) - 1;
        for (const auto& [S, dim] : oracle.preimage(pts).poly_dim)
            if (ExtInt(0) <= dim && dim == oracle.bound(l, S)) {
                rep.stratum = S;
                rep.witness_dim = dim;
                rep.witness_bound = oracle.bound(l, S);
                break;
            }
        return rep;
    }
    throw Error(ErrorCode::NotMinimal, "critical faces have no minimum");
}

}  // namespace ihom
