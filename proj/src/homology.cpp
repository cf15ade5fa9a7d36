#include "ihom/homology.hpp"
#include "ihom/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ihom {

std::string RingSpec::name() const { return integers() ? "Z" : "Zp:" + std::to_string(p); }

RingSpec parse_ring(const std::string& text) {
    if (text == "Z") return {};
    if (text.rfind("Zp:", 0) == 0) {
        const std::string digits = text.substr(3);
        if (digits.empty() || digits.size() > 10 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw Error(ErrorCode::ParseError, "bad ring '" + text + "'");
        const std::uint64_t p = std::stoull(digits);
        if (!is_prime(p) || p >= (1ULL << 31))
            throw Error(ErrorCode::ValidationError, "ring modulus " + digits + " is not a prime below 2^31");
        return RingSpec{p};
    }
    throw Error(ErrorCode::ParseError, "bad ring '" + text + "' (expected Z or Zp:<p>)");
}

bool HomologyResult::same_betti(const HomologyResult& o) const {
    auto trim = [](std::vector<std::size_t> b) {
        while (!b.empty() && b.back() == 0) b.pop_back();
        return b;
    };
    return trim(betti) == trim(o.betti);
}

std::string HomologyResult::summary() const {
    std::ostringstream out;
    for (std::size_t d = 0; d < betti.size(); ++d) {
        if (d) out << ' ';
        out << 'b' << d << '=' << betti[d];
        if (d < torsion.size() && !torsion[d].empty()) {
            out << " T" << d << "=[";
            for (std::size_t i = 0; i < torsion[d].size(); ++i) out << (i ? "," : "") << torsion[d][i].get_str();
            out << ']';
        }
    }
    return out.str();
}

std::optional<std::uint32_t> CellComplex::find(const SimplexKey& k) const {
    const int d = static_cast<int>(k.size()) - 1;
    if (d < 0 || d > top_dim()) return std::nullopt;
    auto it = index[d].find(k);
    if (it == index[d].end()) return std::nullopt;
    return it->second;
}

CellComplex face_complex(const std::vector<std::vector<PointId>>& tops) {
    std::vector<std::set<SimplexKey>> by_dim;
    for (const auto& t : tops) {
        SimplexKey s = t;
        std::sort(s.begin(), s.end());
        const std::size_t k = s.size();
        if (by_dim.size() < k) by_dim.resize(k);
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            SimplexKey f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) f.push_back(s[i]);
            by_dim[f.size() - 1].insert(std::move(f));
        }
    }
    CellComplex K;
    K.cells.resize(by_dim.size());
    K.index.resize(by_dim.size());
    for (std::size_t d = 0; d < by_dim.size(); ++d)
        for (const auto& s : by_dim[d]) {
            K.index[d].emplace(s, static_cast<std::uint32_t>(K.cells[d].size()));
            K.cells[d].push_back(s);
        }
    return K;
}

HomologyResult smith_homology(const CellComplex& K, const CellMask& allowable, const RingSpec& ring,
                              const CellMask& support) {
    if (!ring.integers()) return presentation_homology(present(Fp{ring.p}, K, allowable, support));
    try {
        return presentation_homology(present(Z64{}, K, allowable, support));
    } catch (const Overflow&) {
        return presentation_homology(present(BigZ{}, K, allowable, support));
    }
}

HomologyResult smith_homology(const std::vector<BigMatrix>& boundaries, const std::vector<std::size_t>& dims,
                              const RingSpec& ring) {
    auto run = [&](auto R) {
        using Ring = decltype(R);
        Presentation<Ring> P{R, {}, {}, {}};
        P.generators.resize(dims.size());
        P.boundary.resize(dims.size());
        for (std::size_t d = 0; d < dims.size(); ++d)
            P.generators[d].resize(dims[d]);
        for (std::size_t d = 1; d < dims.size() && d < boundaries.size(); ++d) {
            const BigMatrix& M = boundaries[d];
            if (M.size() != dims[d - 1]) throw Error(ErrorCode::ValidationError, "boundary matrix shape mismatch");
            for (std::size_t j = 0; j < dims[d]; ++j) {
                SVec<Ring> col;
                for (std::size_t i = 0; i < M.size(); ++i) {
                    if (M[i].size() != dims[d]) throw Error(ErrorCode::ValidationError, "boundary matrix shape mismatch");
                    if (M[i][j] == 0) continue;
                    if (!M[i][j].fits_slong_p()) throw Overflow();
                    auto v = R.from_int(M[i][j].get_si());
                    if (!Ring::is_zero(v)) col.emplace_back(static_cast<std::uint32_t>(i), v);
                }
                P.boundary[d].push_back(std::move(col));
            }
        }
        for (std::size_t d = dims.size(); d < boundaries.size(); ++d)
            if (!boundaries[d].empty()) throw Error(ErrorCode::ValidationError, "boundary matrix shape mismatch");
        return presentation_homology(P);
    };
    if (!ring.integers()) return run(Fp{ring.p});
    try {
        return run(Z64{});
    } catch (const Overflow&) {
        return run(BigZ{});
    }
}

Workspace::Workspace(const FilteredComplex& X, const Perversity& p, std::uint64_t seed,
                     std::optional<ChainTriangulation> chains, SamplerConfig config)
    : X_(std::make_unique<FilteredComplex>(X)), p_(p) {
    if (!perversity_valid(p_, *X_)) throw Error(ErrorCode::ValidationError, "perversity does not fit the complex");
    space_ = std::make_unique<Space>(*X_);
    system_ = std::make_unique<PseudoBarycentricSystem>(*space_, p_, seed, config);
    if (chains) {
        std::vector<PointId> ids;
        for (const auto& pt : chains->points) ids.push_back(space_->intern(pt));
        for (const auto& s : chains->simplices) {
            std::vector<PointId> top;
            for (auto i : s) {
                if (i >= ids.size()) throw Error(ErrorCode::ValidationError, "chain simplex names a missing point");
                top.push_back(ids[i]);
            }
            std::sort(top.begin(), top.end());
            chain_tops_.push_back(std::move(top));
        }
        if (!chain_tops_.empty()) {
            for (SimplexId s : X_->maximal_simplices())
                if (X_->dim(s) != X_->max_simplex_dim())
                    throw Error(ErrorCode::ValidationError, "chain triangulation needs a pure complex");
            for (const auto& t : chain_tops_)
                if (!covered_by_complex(*space_, t))
                    throw Error(ErrorCode::ValidationError, "chain simplex leaves the realization");
        }
    }
}

Workspace::Key Workspace::key(Notion notion, int level) const {
    const bool on_chains = notion == Notion::Poly && !chain_tops_.empty();
    return {on_chains ? 1 : 0, level};
}

const std::vector<std::vector<PointId>>& Workspace::tops(Notion notion, int level) {
    const Key k = key(notion, level);
    if (auto it = tops_.find(k); it != tops_.end()) return it->second;
    std::vector<std::vector<PointId>> base;
    if (k.first) {
        base = chain_tops_;
    } else {
        for (SimplexId s : X_->maximal_simplices()) base.push_back(X_->simplex(s));
    }
    std::vector<std::vector<PointId>> out;
    for (const auto& t : base) {
        auto cells = system_->subdivide(t, level);
        out.insert(out.end(), cells.begin(), cells.end());
    }
    return tops_.emplace(k, std::move(out)).first->second;
}

const CellComplex& Workspace::cells(Notion notion, int level) {
    const Key k = key(notion, level);
    if (auto it = cells_.find(k); it != cells_.end()) return it->second;
    CellComplex K = face_complex(tops(notion, level));
    return cells_.emplace(k, std::move(K)).first->second;
}

const CellMask& Workspace::allowable(Notion notion, int level) {
    const Key k{key(notion, level).first * 2 + (notion == Notion::GM ? 1 : 0), level};
    if (auto it = allowable_.find(k); it != allowable_.end()) return it->second;
    const CellComplex& K = cells(notion, level);
    CellMask mask(K.cells.size());
    for (std::size_t d = 0; d < K.cells.size(); ++d)
        for (const auto& c : K.cells[d]) mask[d].push_back(oracle().allowable(c, notion));
    return allowable_.emplace(k, std::move(mask)).first->second;
}

HomologyResult Workspace::homology(Notion notion, int level, const RingSpec& ring) {
    const CellComplex& K = cells(notion, level);
    const CellMask& A = allowable(notion, level);
    HomologyResult h = smith_homology(K, A, ring);
    // Report degrees up to the formal dimension.
    const std::size_t n = static_cast<std::size_t>(std::max(X_->formal_dim(), K.top_dim())) + 1;
    h.betti.resize(n, 0);
    h.torsion.resize(n);
    return h;
}

HomologyResult compute_homology(const FilteredComplex& X, const Perversity& p, Notion notion, int level,
                                const RingSpec& ring, std::uint64_t seed,
                                const std::optional<ChainTriangulation>& chains) {
    Workspace ws(X, p, seed, chains);
    return ws.homology(notion, level, ring);
}

// ---------------------------------------------------------------- cone formula

Perversity cone_perversity(const FilteredComplex& X, const FilteredComplex& cone, const Perversity& p,
                           ExtInt dual_at_apex) {
    const int n = X.formal_dim();
    std::vector<ExtInt> values(cone.strata().size(), ExtInt(0));
    for (const Stratum& S : cone.strata()) {
        const Simplex& s = cone.simplex(S.simplices.front());
        std::vector<std::int64_t> labels;
        for (auto v : s) labels.push_back(cone.vertex_label(v));
        Simplex base;
        bool apex = false;
        for (auto l : labels) {
            auto v = X.vertex_of_label(l);
            if (!v) {
                apex = true;
                break;
            }
            base.push_back(*v);
        }
        if (apex && S.dim == 0) {
            values[S.id] = ExtInt(n + 1 - 2) - dual_at_apex;
            continue;
        }
        if (apex) {
            // A cone cell v*s of a non-apex stratum: use its base face.
            base.clear();
            for (auto l : labels)
                if (auto v = X.vertex_of_label(l)) base.push_back(*v);
        }
        std::sort(base.begin(), base.end());
        auto sid = X.find(base);
        if (!sid) throw Error(ErrorCode::InvariantViolation, "cone stratum without a base simplex");
        values[S.id] = S.regular ? ExtInt(0) : p(X.stratum_of(*sid));
    }
    return Perversity(std::move(values), PerversityTag::General);
}

ConeReport cone_formula_check(const FilteredComplex& X, const Perversity& p, ExtInt dual_at_apex, Notion notion,
                              int level, const RingSpec& ring, std::uint64_t seed) {
    ConeReport rep;
    FilteredComplex cX = cone_complex(X);
    Perversity cp = cone_perversity(X, cX, p, dual_at_apex);
    rep.dual_at_apex = dual_at_apex;
    for (const Stratum& S : cX.strata())
        if (S.dim == 0 && S.codim == cX.formal_dim()) rep.apex_value = cp(S.id);
    rep.base = compute_homology(X, p, notion, level, ring, seed);
    rep.cone = compute_homology(cX, cp, notion, level, ring, seed);
    rep.ok = true;
    for (std::size_t k = 0; k < rep.cone.betti.size(); ++k) {
        ConeDegreeCheck c;
        c.degree = k;
        c.cone_betti = rep.cone.betti[k];
        c.cone_torsion = rep.cone.torsion[k];
        if (ExtInt(static_cast<std::int64_t>(k)) <= dual_at_apex) {
            c.expected_betti = k < rep.base.betti.size() ? rep.base.betti[k] : 0;
            if (k < rep.base.torsion.size()) c.expected_torsion = rep.base.torsion[k];
        } else {
            c.expected_betti = k == 0 ? 1 : 0;
        }
        c.ok = c.expected_betti == c.cone_betti && c.expected_torsion == c.cone_torsion;
        rep.ok = rep.ok && c.ok;
        rep.degrees.push_back(std::move(c));
    }
    return rep;
}

// ---------------------------------------------------------------- Mayer-Vietoris

Cover default_cover(const FilteredComplex& X) {
    const std::size_t n = X.num_vertices();
    Cover c;
    const std::size_t u_end = (3 * n + 4) / 5;
    const std::size_t v_begin = (2 * n) / 5;
    for (VertexId v = 0; v < n; ++v) {
        if (v < u_end) c.u.push_back({X.vertex_label(v)});
        if (v >= v_begin) c.v.push_back({X.vertex_label(v)});
    }
    return c;
}

namespace {

using FpVecs = std::vector<SVec<Fp>>;

std::vector<bool> star_membership(const FilteredComplex& X, const std::vector<std::vector<std::int64_t>>& carriers) {
    std::vector<Simplex> cs;
    for (const auto& c : carriers) {
        Simplex s;
        for (auto l : c) {
            auto v = X.vertex_of_label(l);
            if (!v) throw Error(ErrorCode::CoverNotOpen, "cover names unknown vertex " + std::to_string(l));
            s.push_back(*v);
        }
        std::sort(s.begin(), s.end());
        if (!X.find(s)) throw Error(ErrorCode::CoverNotOpen, "cover carrier is not a simplex");
        cs.push_back(std::move(s));
    }
    std::vector<bool> in(X.num_simplices(), false);
    for (SimplexId t = 0; t < X.num_simplices(); ++t)
        for (const auto& s : cs)
            if (std::includes(X.simplex(t).begin(), X.simplex(t).end(), s.begin(), s.end())) {
                in[t] = true;
                break;
            }
    return in;
}

SVec<Fp> combine(const Fp& F, const std::vector<std::pair<std::uint32_t, std::uint64_t>>& coeffs,
                 const FpVecs& basis) {
    SVec<Fp> acc;
    for (const auto& [j, c] : coeffs) acc = axpby(F, Fp::one(), acc, c, basis[j]);
    return acc;
}

SVec<Fp> boundary_of(const Fp& F, const CellComplex& K, int d, const SVec<Fp>& v) {
    std::map<std::uint32_t, std::uint64_t> acc;
    for (const auto& [i, c] : v)
        for (const auto& [f, e] : cell_boundary(F, K, d, i)) acc[f] = F.add(acc[f], F.mul(c, e));
    SVec<Fp> out;
    for (const auto& [f, c] : acc)
        if (c) out.emplace_back(f, c);
    return out;
}

/// Cycles and boundaries of one presentation in cell coordinates.
struct CycleData {
    std::vector<FpVecs> Z, B;
    std::vector<std::size_t> z_rank, b_rank;
};

CycleData cycles(const Fp& F, const CellComplex& K, const Presentation<Fp>& P) {
    const std::size_t n = P.generators.size();
    CycleData c;
    c.Z.resize(n);
    c.B.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        if (d == 0) {
            c.Z[d] = P.generators[0];
        } else {
            KernelLattice<Fp> ker(F, P.boundary[d], static_cast<std::uint32_t>(P.generators[d - 1].size()));
            for (const auto& v : ker.vectors()) {
                std::vector<std::pair<std::uint32_t, std::uint64_t>> coeffs(v.begin(), v.end());
                c.Z[d].push_back(combine(F, coeffs, P.generators[d]));
            }
        }
        if (d + 1 < n)
            for (const auto& g : P.generators[d + 1]) c.B[d].push_back(boundary_of(F, K, static_cast<int>(d + 1), g));
    }
    for (std::size_t d = 0; d < n; ++d) {
        c.z_rank.push_back(span_rank(F, c.Z[d]));
        c.b_rank.push_back(span_rank(F, c.B[d]));
    }
    return c;
}

SVec<Fp> shifted(const SVec<Fp>& v, std::uint32_t by) {
    SVec<Fp> out;
    for (const auto& [i, c] : v) out.emplace_back(i + by, c);
    return out;
}

SVec<Fp> doubled(const Fp& F, const SVec<Fp>& v, std::uint32_t offset) {
    return axpby(F, Fp::one(), v, Fp::one(), shifted(v, offset));
}

}  // namespace

MVReport mayer_vietoris_check(const FilteredComplex& X, const Cover& cover, const Perversity& p, Notion notion,
                              int level, std::uint64_t seed, int max_level, std::uint64_t prime) {
    Workspace ws(X, p, seed);
    return mayer_vietoris_check(ws, cover, notion, level, max_level, prime);
}

MVReport mayer_vietoris_check(Workspace& ws, const Cover& cover, Notion notion, int level, int max_level,
                              std::uint64_t prime) {
    const FilteredComplex& X = ws.complex();
    if (cover.u.empty() || cover.v.empty()) throw Error(ErrorCode::CoverNotOpen, "cover has an empty member");
    std::vector<bool> inU = star_membership(X, cover.u);
    std::vector<bool> inV = star_membership(X, cover.v);
    for (VertexId v = 0; v < X.num_vertices(); ++v) {
        bool covered = false;
        for (const auto& list : {cover.u, cover.v})
            for (const auto& c : list)
                if (c.size() == 1 && c[0] == X.vertex_label(v)) covered = true;
        if (!covered) throw Error(ErrorCode::CoverNotOpen, "open stars miss vertex " + std::to_string(X.vertex_label(v)));
    }
    const Fp F{prime};
    MVReport rep;
    for (int r = level; r <= std::max(level, max_level); ++r) {
        rep = MVReport{};
        rep.level = r;
        const CellComplex& K = ws.cells(notion, r);
        const CellMask& A = ws.allowable(notion, r);
        CellMask mU(K.cells.size()), mV(K.cells.size()), mUV(K.cells.size());
        for (std::size_t d = 0; d < K.cells.size(); ++d)
            for (const auto& c : K.cells[d]) {
                bool u = true, v = true;
                for (auto pt : c) {
                    u = u && inU[ws.space().carrier(pt)];
                    v = v && inV[ws.space().carrier(pt)];
                }
                mU[d].push_back(u);
                mV[d].push_back(v);
                mUV[d].push_back(u && v);
            }
        auto PX = present(F, K, A);
        auto PU = present(F, K, A, mU);
        auto PV = present(F, K, A, mV);
        auto PUV = present(F, K, A, mUV);
        CycleData cX = cycles(F, K, PX), cU = cycles(F, K, PU), cV = cycles(F, K, PV), cUV = cycles(F, K, PUV);
        const std::size_t n = PX.generators.size();
        std::vector<std::size_t> hX(n), hU(n), hV(n), hUV(n), rank_i(n), rank_j(n), rank_delta(n + 1, 0);
        bool quasi = true, composite = true;
        for (std::size_t d = 0; d < n; ++d) {
            hX[d] = cX.z_rank[d] - cX.b_rank[d];
            hU[d] = cU.z_rank[d] - cU.b_rank[d];
            hV[d] = cV.z_rank[d] - cV.b_rank[d];
            hUV[d] = cUV.z_rank[d] - cUV.b_rank[d];
            const auto N = static_cast<std::uint32_t>(K.count(static_cast<int>(d)));
            // i(z) = (z, z)
            FpVecs dbl;
            for (const auto& b : cU.B[d]) dbl.push_back(b);
            for (const auto& b : cV.B[d]) dbl.push_back(shifted(b, N));
            const std::size_t dbl_rank = span_rank(F, dbl);
            FpVecs withz = dbl;
            for (const auto& z : cUV.Z[d]) withz.push_back(doubled(F, z, N));
            rank_i[d] = span_rank(F, withz) - dbl_rank;
            // j(a, b) = a - b
            FpVecs zj = cX.B[d];
            zj.insert(zj.end(), cU.Z[d].begin(), cU.Z[d].end());
            zj.insert(zj.end(), cV.Z[d].begin(), cV.Z[d].end());
            rank_j[d] = span_rank(F, zj) - cX.b_rank[d];
            // Small chains: pairs (a, b) with d(a) + d(b) = 0.
            FpVecs cols;
            const std::size_t nu = PU.generators[d].size();
            for (const auto& g : PU.generators[d]) cols.push_back(boundary_of(F, K, static_cast<int>(d), g));
            for (const auto& g : PV.generators[d]) cols.push_back(boundary_of(F, K, static_cast<int>(d), g));
            const auto rows = static_cast<std::uint32_t>(d == 0 ? 0 : K.count(static_cast<int>(d) - 1));
            KernelLattice<Fp> pairs(F, cols, rows);
            FpVecs zs, deltas;
            for (const auto& v : pairs.vectors()) {
                std::vector<std::pair<std::uint32_t, std::uint64_t>> a, b;
                for (const auto& [j, c] : v) (j < nu ? a : b).emplace_back(j < nu ? j : j - nu, c);
                SVec<Fp> av = combine(F, a, PU.generators[d]);
                SVec<Fp> bv = combine(F, b, PV.generators[d]);
                zs.push_back(axpby(F, Fp::one(), av, Fp::one(), bv));
                if (d > 0) deltas.push_back(boundary_of(F, K, static_cast<int>(d), av));
            }
            FpVecs bs = cU.B[d];
            bs.insert(bs.end(), cV.B[d].begin(), cV.B[d].end());
            const std::size_t hS = span_rank(F, zs) - span_rank(F, bs);
            FpVecs into = cX.B[d];
            into.insert(into.end(), zs.begin(), zs.end());
            const std::size_t image = span_rank(F, into) - cX.b_rank[d];
            quasi = quasi && image == hS && hS == hX[d];
            if (d > 0) {
                FpVecs dv = cUV.B[d - 1];
                dv.insert(dv.end(), deltas.begin(), deltas.end());
                rank_delta[d] = span_rank(F, dv) - cUV.b_rank[d - 1];
                // i o delta = 0
                const auto M = static_cast<std::uint32_t>(K.count(static_cast<int>(d) - 1));
                FpVecs dbl1;
                for (const auto& b : cU.B[d - 1]) dbl1.push_back(b);
                for (const auto& b : cV.B[d - 1]) dbl1.push_back(shifted(b, M));
                const std::size_t r0 = span_rank(F, dbl1);
                for (const auto& w : deltas) dbl1.push_back(doubled(F, w, M));
                composite = composite && span_rank(F, dbl1) == r0;
            }
        }
        rep.quasi_isomorphic = quasi;
        rep.compositions_vanish = composite;
        for (std::size_t d = n; d-- > 0;) {
            const std::string k = std::to_string(d);
            rep.nodes.push_back({"H" + k + "(U&V)", hUV[d], rank_delta[d + 1], rank_i[d]});
            rep.nodes.push_back({"H" + k + "(U)+H" + k + "(V)", hU[d] + hV[d], rank_i[d], rank_j[d]});
            rep.nodes.push_back({"H" + k + "(X)", hX[d], rank_j[d], rank_delta[d]});
        }
        rep.ok = quasi && composite &&
                 std::all_of(rep.nodes.begin(), rep.nodes.end(), [](const MVNode& m) { return m.exact(); });
        if (quasi) break;
    }
    return rep;
}

// ---------------------------------------------------------------- stratified maps

std::vector<StratumId> validate_stratified(const StratifiedMap& f) {
    const FilteredComplex& X = *f.source;
    const FilteredComplex& Y = *f.target;
    std::vector<std::optional<StratumId>> image(X.strata().size());
    for (SimplexId s = 0; s < X.num_simplices(); ++s) {
        Simplex t;
        for (auto v : X.simplex(s)) {
            auto it = f.vertex_map.find(X.vertex_label(v));
            if (it == f.vertex_map.end())
                throw Error(ErrorCode::NotStratified, "vertex " + std::to_string(X.vertex_label(v)) + " is not mapped");
            auto w = Y.vertex_of_label(it->second);
            if (!w) throw Error(ErrorCode::NotStratified, "image vertex " + std::to_string(it->second) + " is missing");
            t.push_back(*w);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        auto ts = Y.find(t);
        if (!ts) throw Error(ErrorCode::NotStratified, "vertex map is not simplicial");
        const StratumId S = X.stratum_of(s);
        const StratumId T = Y.stratum_of(*ts);
        if (image[S] && *image[S] != T) throw Error(ErrorCode::NotStratified, "a stratum meets two image strata");
        image[S] = T;
    }
    std::vector<StratumId> out;
    for (const Stratum& S : X.strata()) {
        const Stratum& T = Y.strata()[*image[S.id]];
        if (T.codim > S.codim)
            throw Error(ErrorCode::NotStratified, "stratum " + std::to_string(S.id) + " of codim " +
                                                      std::to_string(S.codim) + " lands in codim " +
                                                      std::to_string(T.codim));
        out.push_back(T.id);
    }
    return out;
}

void check_pullback(const StratifiedMap& f, const Perversity& p, const Perversity& q) {
    auto image = validate_stratified(f);
    Perversity Dp = dual_perversity(p, *f.source);
    Perversity Dq = dual_perversity(q, *f.target);
    for (const Stratum& S : f.source->strata())
        if (Dq(image[S.id]) > Dp(S.id))
            throw Error(ErrorCode::ValidationError, "pullback of the dual target perversity exceeds the dual source "
                                                    "perversity on stratum " + std::to_string(S.id));
}

Chain pushforward(const StratifiedMap& f, Space& source, Space& target, const Chain& xi) {
    validate_stratified(f);
    const FilteredComplex& X = *f.source;
    const FilteredComplex& Y = *f.target;
    std::map<PointId, PointId> memo;
    auto image = [&](PointId pt) {
        if (auto it = memo.find(pt); it != memo.end()) return it->second;
        SimplexId c = source.carrier(pt);
        auto lambda = source.cell_coords(source.point(pt), c);
        Point q(Y.ambient_dim(), Rational(0));
        Simplex t;
        const Simplex& cs = X.simplex(c);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            VertexId w = *Y.vertex_of_label(f.vertex_map.at(X.vertex_label(cs[i])));
            t.push_back(w);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] += (*lambda)[i] * Y.coordinate(w)[k];
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        PointId id = target.intern_in(q, *Y.find(t));
        memo.emplace(pt, id);
        return id;
    };
    Chain out(xi.degree());
    for (const auto& [key, c] : xi.terms()) {
        std::vector<PointId> tuple;
        for (auto pt : key) tuple.push_back(image(pt));
        out.add(tuple, c);
    }
    return out;
}

Chain prism_chain(int m) {
    Chain P(m + 1);
    for (int j = 0; j <= m; ++j) {
        std::vector<PointId> t;
        for (int i = 0; i <= j; ++i) t.push_back(static_cast<PointId>(i));
        for (int i = j; i <= m; ++i) t.push_back(static_cast<PointId>(m + 1 + i));
        P.add(t, j % 2 ? -1 : 1);
    }
    return P;
}

Chain prism_operator(const Chain& xi) {
    Chain out(xi.degree() + 1);
    for (const auto& [key, c] : xi.terms())
        for (std::size_t j = 0; j < key.size(); ++j) {
            std::vector<PointId> t;
            for (std::size_t i = 0; i <= j; ++i) t.push_back(2 * key[i]);
            for (std::size_t i = j; i < key.size(); ++i) t.push_back(2 * key[i] + 1);
            out.add(t, j % 2 ? -c : c);
        }
    return out;
}

Chain level_inclusion(const Chain& xi, int t) {
    Chain out(xi.degree());
    for (const auto& [key, c] : xi.terms()) {
        std::vector<PointId> s;
        for (auto v : key) s.push_back(2 * v + static_cast<PointId>(t));
        out.add(s, c);
    }
    return out;
}

// ---------------------------------------------------------------- comparison

CompareReport main_theorem_compare(const FilteredComplex& X, const Perversity& p, int max_level,
                                   const RingSpec& ring, std::uint64_t seed,
                                   const std::optional<ChainTriangulation>& chains) {
    Workspace ws(X, p, seed, chains);
    return main_theorem_compare(ws, max_level, ring);
}

CompareReport main_theorem_compare(Workspace& ws, int max_level, const RingSpec& ring) {
    CompareReport rep;
    auto run = [&](Notion notion, std::vector<HomologyResult>& out, std::optional<int>& stable) {
        out.push_back(ws.homology(notion, 0, ring));
        for (int r = 1; r <= max_level; ++r) {
            out.push_back(ws.homology(notion, r, ring));
            if (out[r] == out[r - 1]) {
                stable = r - 1;
                return;
            }
        }
    };
    run(Notion::Poly, rep.poly, rep.poly_stable);
    run(Notion::GM, rep.gm, rep.gm_stable);
    if (rep.poly_stable && rep.gm_stable) {
        const HomologyResult& a = rep.poly[*rep.poly_stable];
        const HomologyResult& b = rep.gm[*rep.gm_stable];
        rep.agree_betti = a.same_betti(b);
        rep.agree_torsion = a.torsion == b.torsion;
    }
    return rep;
}

void require_stable(const CompareReport& r) {
    if (!r.poly_stable || !r.gm_stable) throw Error(ErrorCode::NoStabilization, "no two consecutive levels agree");
}

}  // namespace ihom
