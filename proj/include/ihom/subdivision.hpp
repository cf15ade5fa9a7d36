#pragma once

#include "ihom/allowability.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ihom {

/// Pseudo-barycentre and top cells of one simplex.
struct SystemEntry {
    PointId u = 0;
    /// Top cells as flags [w_0, w_1, ..., w_l = u]; complete faces are prefixes.
    std::vector<std::vector<PointId>> flags;
    std::uint64_t attempts = 0;
    /// Whether the forbidden-set constraint was applied.
    bool theta_applied = false;
    Rational pb4_ratio_sq;  // max over cells of (diam cell / diam Delta)^2
};

struct SystemStats {
    std::size_t systems = 0;
    std::size_t pb4_cells = 0;
    std::size_t theta_systems = 0;
    std::uint64_t max_attempts = 0;
    Rational worst_pb4_slack_sq;  // max of ratio^2 / bound^2 seen; stays <= 1
};

/// Memoized pseudo-barycentric subdivision over a Space. Systems are keyed by sorted
/// point ids, so faces shared between simplices get one system.
class PseudoBarycentricSystem {
public:
    PseudoBarycentricSystem(Space& space, std::optional<Perversity> p, std::uint64_t seed, SamplerConfig config = {});

    Space& space() { return *space_; }
    const std::optional<Perversity>& perversity() const { return p_; }
    /// Builds (or returns) the system of a nondegenerate simplex.
    const SystemEntry& build(const std::vector<PointId>& sigma);
    const std::map<std::vector<PointId>, SystemEntry>& entries() const { return memo_; }
    const SystemStats& stats() const { return stats_; }
    AllowabilityOracle* oracle() { return oracle_ ? &*oracle_ : nullptr; }

    Chain sd(const Chain& xi);
    Chain homotopy_T(const Chain& xi);
    /// Top cells of the r-fold subdivision, as sorted keys.
    std::vector<std::vector<PointId>> subdivide(const std::vector<PointId>& sigma, int levels);

    /// Re-checks PB1, PB3, PB4, PB5 for one built simplex; empty string when fine.
    std::string validate(const std::vector<PointId>& sigma);

private:
    const Chain& sd_simplex(const SimplexKey& key);
    const Chain& T_simplex(const SimplexKey& key);
    GeoSimplex geo(const std::vector<PointId>& pts) const;

    Space* space_;
    std::optional<Perversity> p_;
    std::optional<AllowabilityOracle> oracle_;
    std::uint64_t seed_;
    SamplerConfig config_;
    std::map<std::vector<PointId>, SystemEntry> memo_;
    std::map<SimplexKey, Chain> sd_memo_;
    std::map<SimplexKey, Chain> T_memo_;
    SystemStats stats_;
};

/// Prism vertex: a point at height 0 or 1.
struct PrismVertex {
    PointId point = 0;
    int t = 0;
    friend auto operator<=>(const PrismVertex&, const PrismVertex&) = default;
};

struct PrismTriangulation {
    std::vector<PointId> sigma;
    /// Top cells, each listed with the apex (u,1) first.
    std::vector<std::vector<PrismVertex>> cells;
};

/// Recursive cone construction; PB6-PB9 checked, InvariantViolation on failure.
PrismTriangulation build_prism(PseudoBarycentricSystem& system, const std::vector<PointId>& sigma);
/// Empty string when the prism passes every check.
std::string validate_prism(PseudoBarycentricSystem& system, const PrismTriangulation& prism);

struct BadFaceReport {
    /// Top cell in flag order.
    std::vector<PointId> cell;
    /// Bad face as a set of flag positions; always a prefix when present.
    std::optional<std::vector<std::size_t>> bad_face;
    StratumId stratum = 0;
    ExtInt witness_dim;
    ExtInt witness_bound;
};

/// Proper faces (as sorted flag positions) meeting some singular stratum in exactly the critical dimension.
std::vector<std::vector<std::size_t>> critical_faces(AllowabilityOracle& oracle, const std::vector<PointId>& cell);
/// NotMinimal when the critical set has no minimum.
BadFaceReport bad_face(AllowabilityOracle& oracle, const std::vector<PointId>& cell);

}  // namespace ihom
