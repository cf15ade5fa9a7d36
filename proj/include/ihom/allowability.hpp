#pragma once

#include "ihom/chain.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ihom {

enum class Notion { Poly, GM };

const char* notion_name(Notion n);

/// Affine map from the standard simplex onto the listed points of |X|.
/// Points may repeat or be affinely dependent.
struct LinearSimplex {
    std::vector<PointId> points;
    std::int64_t dim() const { return static_cast<std::int64_t>(points.size()) - 1; }
};

/// One closed cell c of a singular stratum with c met in its interior: the piece Delta ∩ sigma^-1(c̄).
struct PreimagePiece {
    StratumId stratum = 0;
    SimplexId cell = 0;
    /// Domain vertices spanning the piece when it is a face (carrier-supported case).
    std::vector<std::size_t> face;
    /// Geometric case: the piece polytope with output in domain barycentric coordinates.
    std::optional<Polytope> polytope;
    ExtInt dim;
    /// Dimension of the smallest domain face containing the piece.
    ExtInt skeleton_dim;
};

struct PreimageData {
    std::vector<PreimagePiece> pieces;
    /// Per singular stratum that is met.
    std::map<StratumId, ExtInt> poly_dim;
    std::map<StratumId, ExtInt> skeleton_dim;
};

/// All points in one closed cell of X?  Then preimages are unions of open faces.
std::optional<SimplexId> common_closed_cell(const Space& space, const std::vector<PointId>& pts);

/// Pieces over singular strata. Uses the face structure when the simplex lies in one closed cell,
/// otherwise polytope intersections cell by cell.
PreimageData compute_preimage(const Space& space, const std::vector<PointId>& pts, bool force_geometric = false);

ExtInt preimage_dim_polyhedral(const Space& space, const LinearSimplex& s, StratumId S);
ExtInt preimage_dim_skeleton(const Space& space, const LinearSimplex& s, StratumId S);

/// The image lies in |X|: cell-by-cell pieces have total domain volume one.
bool covered_by_complex(const Space& space, const std::vector<PointId>& pts);

struct SimplicialEnvelope {
    StratumId stratum = 0;
    /// Simplices in domain barycentric coordinates.
    std::vector<GeoSimplex> pieces;
    ExtInt max_dim = ExtInt::neg_inf();
};

SimplicialEnvelope build_envelope(const Space& space, const LinearSimplex& s, StratumId S);
/// Envelope simplices of every singular stratum mapped into ambient coordinates.
std::vector<GeoSimplex> image_envelopes(const Space& space, const LinearSimplex& s);
/// Domain simplex in barycentric coordinates mapped to ambient coordinates.
GeoSimplex to_image(const Space& space, const LinearSimplex& s, const GeoSimplex& domain_simplex);

/// Allowability queries for one perversity. Caches preimage data per sorted tuple.
class AllowabilityOracle {
public:
    AllowabilityOracle(const Space& space, Perversity p);

    const Perversity& perversity() const { return p_; }
    const Perversity& dual() const { return dual_; }
    const Space& space() const { return *space_; }

    const PreimageData& preimage(const std::vector<PointId>& pts);
    /// dim Delta - 2 - Dp(S).
    ExtInt bound(std::int64_t l, StratumId S) const;
    bool allowable(const std::vector<PointId>& pts, Notion notion);
    bool intersection_chain(const Chain& xi, Notion notion);

private:
    const Space* space_;
    Perversity p_;
    Perversity dual_;
    std::map<std::vector<PointId>, PreimageData> cache_;
};

bool is_allowable(const Space& space, const LinearSimplex& s, const Perversity& p, Notion notion);
bool is_intersection_chain(const Space& space, const Chain& xi, const Perversity& p, Notion notion);

}  // namespace ihom
