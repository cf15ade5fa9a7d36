#pragma once

#include "ihom/snf.hpp"
#include "ihom/subdivision.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ihom {

struct RingSpec {
    /// 0 means the integers.
    std::uint64_t p = 0;
    bool integers() const { return p == 0; }
    std::string name() const;
    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// "Z" or "Zp:<prime>"; throws ParseError / ValidationError.
RingSpec parse_ring(const std::string& text);

struct HomologyResult {
    std::string ring;
    std::vector<std::size_t> betti;
    /// Invariant factors greater than one, per degree, in divisibility order.
    std::vector<std::vector<BigInt>> torsion;

    friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
    bool same_betti(const HomologyResult& o) const;
    /// "b0=1 b1=0 T1=[2]" style summary.
    std::string summary() const;
};

/// Faces of all cells of one subdivision level, indexed per dimension.
struct CellComplex {
    std::vector<std::vector<SimplexKey>> cells;
    std::vector<std::map<SimplexKey, std::uint32_t>> index;

    int top_dim() const { return static_cast<int>(cells.size()) - 1; }
    std::size_t count(int d) const { return d < 0 || d > top_dim() ? 0 : cells[d].size(); }
    std::optional<std::uint32_t> find(const SimplexKey& k) const;
};

CellComplex face_complex(const std::vector<std::vector<PointId>>& tops);

/// Per dimension, per cell.
using CellMask = std::vector<std::vector<bool>>;

/// Generators of {xi : xi and its boundary allowable} and the boundary in those generators.
template <class R>
struct Presentation {
    R ring;
    /// Per degree, generators as vectors over cell indices.
    std::vector<std::vector<SVec<R>>> generators;
    /// Per degree k, columns indexed by generators of degree k over generators of degree k-1.
    std::vector<std::vector<SVec<R>>> boundary;
    /// Number of generators that are single simplices, per degree.
    std::vector<std::size_t> clean;
};

/// Boundary of cell i of dimension d as a vector over cells of dimension d-1.
template <class R>
SVec<R> cell_boundary(const R& ring, const CellComplex& K, int d, std::uint32_t i) {
    SVec<R> out;
    if (d == 0) return out;
    const SimplexKey& s = K.cells[d][i];
    for (std::size_t j = 0; j < s.size(); ++j) {
        SimplexKey f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        out.emplace_back(K.index[d - 1].at(f), ring.from_int(j % 2 ? -1 : 1));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// Kernel-pair construction. `support` restricts to a face-closed subset of cells (all cells if empty).
/// Throws InvariantViolation when the boundary fails to close up or does not square to zero.
template <class R>
Presentation<R> present(const R& ring, const CellComplex& K, const CellMask& allowable, const CellMask& support = {}) {
    Presentation<R> P{ring, {}, {}, {}};
    const int top = K.top_dim();
    auto in = [&](int d, std::uint32_t i) { return support.empty() || support[d][i]; };
    std::vector<std::vector<std::uint32_t>> clean(top + 1), dirty(top + 1);
    std::vector<std::unique_ptr<KernelLattice<R>>> lattices(top + 1);
    std::vector<std::vector<std::int64_t>> clean_pos(top + 1);
    std::vector<std::vector<std::int64_t>> row_pos(top + 1);
    for (int d = 0; d <= top; ++d) {
        clean_pos[d].assign(K.count(d), -1);
        row_pos[d].assign(K.count(d), -1);
        std::uint32_t rows = 0;
        for (std::uint32_t i = 0; i < K.count(d); ++i)
            if (in(d, i) && !allowable[d][i]) row_pos[d][i] = rows++;
    }
    P.generators.resize(top + 1);
    P.boundary.resize(top + 1);
    P.clean.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        std::vector<SVec<R>> columns;
        std::uint32_t nrows = 0;
        if (d > 0)
            for (auto r : row_pos[d - 1])
                if (r >= 0) ++nrows;
        for (std::uint32_t i = 0; i < K.count(d); ++i) {
            if (!in(d, i) || !allowable[d][i]) continue;
            SVec<R> bad;
            for (const auto& [f, c] : cell_boundary(ring, K, d, i))
                if (row_pos[d - 1][f] >= 0) bad.emplace_back(static_cast<std::uint32_t>(row_pos[d - 1][f]), c);
            if (bad.empty()) {
                clean_pos[d][i] = static_cast<std::int64_t>(clean[d].size());
                clean[d].push_back(i);
            } else {
                dirty[d].push_back(i);
                std::sort(bad.begin(), bad.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                columns.push_back(std::move(bad));
            }
        }
        lattices[d] = std::make_unique<KernelLattice<R>>(ring, columns, nrows);
        for (auto i : clean[d]) P.generators[d].push_back(SVec<R>{{i, R::one()}});
        P.clean[d] = clean[d].size();
        for (const auto& v : lattices[d]->vectors()) {
            SVec<R> g;
            for (const auto& [j, c] : v) g.emplace_back(dirty[d][j], c);
            std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            P.generators[d].push_back(std::move(g));
        }
    }
    // Boundary columns in generator coordinates.
    for (int d = 1; d <= top; ++d) {
        std::vector<std::int64_t> dirty_pos(K.count(d - 1), -1);
        for (std::size_t j = 0; j < dirty[d - 1].size(); ++j) dirty_pos[dirty[d - 1][j]] = static_cast<std::int64_t>(j);
        for (const auto& g : P.generators[d]) {
            std::map<std::uint32_t, typename R::T> acc;
            for (const auto& [i, c] : g)
                for (const auto& [f, e] : cell_boundary(ring, K, d, i)) {
                    auto& slot = acc.try_emplace(f, R::zero()).first->second;
                    slot = ring.add(slot, ring.mul(c, e));
                }
            SVec<R> col, dirty_part;
            for (const auto& [f, v] : acc) {
                if (R::is_zero(v)) continue;
                if (clean_pos[d - 1][f] >= 0) {
                    col.emplace_back(static_cast<std::uint32_t>(clean_pos[d - 1][f]), v);
                } else if (dirty_pos[f] >= 0) {
                    dirty_part.emplace_back(static_cast<std::uint32_t>(dirty_pos[f]), v);
                } else {
                    throw Error(ErrorCode::InvariantViolation, "boundary leaves the intersection complex");
                }
            }
            if (!dirty_part.empty()) {
                auto coords = lattices[d - 1]->coordinates(dirty_part);
                if (!coords) throw Error(ErrorCode::InvariantViolation, "boundary is not an intersection chain");
                const auto base = static_cast<std::uint32_t>(clean[d - 1].size());
                for (const auto& [k, c] : *coords) col.emplace_back(base + static_cast<std::uint32_t>(k), c);
            }
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            P.boundary[d].push_back(std::move(col));
        }
    }
    // dd = 0 in generator coordinates.
    for (int d = 2; d <= top; ++d)
        for (const auto& col : P.boundary[d]) {
            SVec<R> acc;
            for (const auto& [j, c] : col) acc = axpby(ring, R::one(), acc, c, P.boundary[d - 1][j]);
            if (!acc.empty()) throw Error(ErrorCode::InvariantViolation, "boundary does not square to zero");
        }
    return P;
}

template <class R>
HomologyResult presentation_homology(const Presentation<R>& P) {
    HomologyResult h;
    h.ring = P.ring.name();
    const std::size_t n = P.generators.size();
    std::vector<MatrixInvariants> inv(n + 1);
    for (std::size_t d = 1; d < n; ++d)
        inv[d] = matrix_invariants(P.ring, P.boundary[d], static_cast<std::uint32_t>(P.generators[d - 1].size()));
    for (std::size_t d = 0; d < n; ++d) {
        h.betti.push_back(P.generators[d].size() - inv[d].rank - inv[d + 1].rank);
        h.torsion.push_back(inv[d + 1].torsion);
    }
    return h;
}

/// Homology of the presentation over ring; the integer case runs in 64-bit and
/// reruns with big integers on overflow.
HomologyResult smith_homology(const CellComplex& K, const CellMask& allowable, const RingSpec& ring,
                              const CellMask& support = {});

/// Dense-matrix homology from integer boundary matrices (rows = degree k-1 generators).
HomologyResult smith_homology(const std::vector<BigMatrix>& boundaries, const std::vector<std::size_t>& dims,
                              const RingSpec& ring);

/// Optional coarser triangulation used for the polyhedral complex: points and top simplices.
struct ChainTriangulation {
    std::vector<Point> points;
    std::vector<std::vector<std::size_t>> simplices;
};

/// One filtered complex with a perversity: space, pseudo-barycentric system and oracle.
class Workspace {
public:
    Workspace(const FilteredComplex& X, const Perversity& p, std::uint64_t seed,
              std::optional<ChainTriangulation> chains = std::nullopt, SamplerConfig config = {});
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    const FilteredComplex& complex() const { return *X_; }
    Space& space() { return *space_; }
    PseudoBarycentricSystem& system() { return *system_; }
    AllowabilityOracle& oracle() { return *system_->oracle(); }
    const Perversity& perversity() const { return p_; }
    bool has_chain_triangulation() const { return !chain_tops_.empty(); }

    /// Top cells of level r over K, or over the chain triangulation for the polyhedral notion if present.
    const std::vector<std::vector<PointId>>& tops(Notion notion, int level);
    const CellComplex& cells(Notion notion, int level);
    const CellMask& allowable(Notion notion, int level);
    HomologyResult homology(Notion notion, int level, const RingSpec& ring);

private:
    using Key = std::pair<int, int>;
    Key key(Notion notion, int level) const;
    std::unique_ptr<FilteredComplex> X_;
    Perversity p_;
    std::unique_ptr<Space> space_;
    std::unique_ptr<PseudoBarycentricSystem> system_;
    std::vector<std::vector<PointId>> chain_tops_;
    std::map<Key, std::vector<std::vector<PointId>>> tops_;
    std::map<Key, CellComplex> cells_;
    std::map<Key, CellMask> allowable_;
};

/// Homology of the intersection complex at one subdivision level.
HomologyResult compute_homology(const FilteredComplex& X, const Perversity& p, Notion notion, int level,
                                const RingSpec& ring, std::uint64_t seed,
                                const std::optional<ChainTriangulation>& chains = std::nullopt);

struct ConeDegreeCheck {
    std::size_t degree = 0;
    std::size_t expected_betti = 0;
    std::size_t cone_betti = 0;
    std::vector<BigInt> expected_torsion;
    std::vector<BigInt> cone_torsion;
    bool ok = false;
};

struct ConeReport {
    ExtInt dual_at_apex;
    ExtInt apex_value;
    HomologyResult base;
    HomologyResult cone;
    std::vector<ConeDegreeCheck> degrees;
    bool ok = false;
};

/// Perversity on the cone: values of p on the lifted strata and the apex value chosen so that
/// D p(v) = dual_at_apex.
Perversity cone_perversity(const FilteredComplex& X, const FilteredComplex& cone, const Perversity& p,
                           ExtInt dual_at_apex);

ConeReport cone_formula_check(const FilteredComplex& X, const Perversity& p, ExtInt dual_at_apex, Notion notion,
                              int level, const RingSpec& ring, std::uint64_t seed);

/// An open cover by open stars of two sets of carrier simplices of X (given as vertex-label lists).
struct Cover {
    std::vector<std::vector<std::int64_t>> u;
    std::vector<std::vector<std::int64_t>> v;
};

/// U: first ceil(3n/5) vertices; V: vertices from floor(2n/5) on.
Cover default_cover(const FilteredComplex& X);

struct MVNode {
    std::string name;  // e.g. "H1(U)+H1(V)"
    std::size_t dim = 0;
    std::size_t rank_in = 0;
    std::size_t rank_out = 0;
    bool exact() const { return dim == rank_in + rank_out; }
};

struct MVReport {
    int level = 0;
    bool quasi_isomorphic = false;
    bool compositions_vanish = false;
    std::vector<MVNode> nodes;
    bool ok = false;
};

/// Exactness of the long sequence over Z/p, raising the level until the small chains
/// compute the homology of X (at most max_level).
MVReport mayer_vietoris_check(Workspace& ws, const Cover& cover, Notion notion, int level, int max_level = 3,
                              std::uint64_t prime = 1000003);
MVReport mayer_vietoris_check(const FilteredComplex& X, const Cover& cover, const Perversity& p, Notion notion,
                              int level, std::uint64_t seed, int max_level = 3, std::uint64_t prime = 1000003);

/// Simplicial vertex map between complexes, given on vertex labels.
struct StratifiedMap {
    const FilteredComplex* source = nullptr;
    const FilteredComplex* target = nullptr;
    std::map<std::int64_t, std::int64_t> vertex_map;
};

/// Image stratum of every source stratum; NotStratified when the map is not simplicial and stratified.
std::vector<StratumId> validate_stratified(const StratifiedMap& f);
/// Throws ValidationError unless Dq(S^f) <= Dp(S) for every source stratum.
void check_pullback(const StratifiedMap& f, const Perversity& p, const Perversity& q);

/// Linear extension of the vertex map applied to a chain of points of the source space.
Chain pushforward(const StratifiedMap& f, Space& source, Space& target, const Chain& xi);

/// The alternating prism sum over [e_0..e_m] x [0,1]; a_j = j, b_j = m+1+j.
Chain prism_chain(int m);
/// Prism operator on chains of vertex labels: (v, t) -> 2v + t.
Chain prism_operator(const Chain& xi);
/// v -> 2v + t.
Chain level_inclusion(const Chain& xi, int t);

struct CompareReport {
    std::vector<HomologyResult> poly;
    std::vector<HomologyResult> gm;
    std::optional<int> poly_stable;
    std::optional<int> gm_stable;
    bool agree_betti = false;
    bool agree_torsion = false;
    bool ok() const { return poly_stable && gm_stable && agree_betti; }
};

/// Stabilization per notion (level r equal to level r+1) and agreement of the stable groups.
/// Throws NoStabilization only through require_stable().
CompareReport main_theorem_compare(Workspace& ws, int max_level, const RingSpec& ring);
CompareReport main_theorem_compare(const FilteredComplex& X, const Perversity& p, int max_level,
                                   const RingSpec& ring, std::uint64_t seed,
                                   const std::optional<ChainTriangulation>& chains = std::nullopt);
void require_stable(const CompareReport& r);

}  // namespace ihom
