#pragma once

#include "ihom/extended_int.hpp"
#include "ihom/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ihom {

using VertexId = std::uint32_t;
using SimplexId = std::uint32_t;
using StratumId = std::uint32_t;
/// Sorted internal vertex ids.
using Simplex = std::vector<VertexId>;

/// Raw ingestion data. Vertex labels are arbitrary integers.
struct RawComplex {
    std::vector<std::vector<std::int64_t>> simplices;
    /// Per-simplex values; unlisted simplices default to formal_dim.
    std::vector<std::pair<std::vector<std::int64_t>, int>> simplex_filtration;
    /// Per-vertex values; a simplex gets the max over its vertices. Used when non-empty.
    std::map<std::int64_t, int> vertex_filtration;
    int formal_dim = 0;
    /// Optional realization. Default puts vertex i at the i-th unit vector.
    std::map<std::int64_t, Point> coordinates;
};

struct Stratum {
    StratumId id = 0;
    int dim = 0;
    int codim = 0;
    std::vector<SimplexId> simplices;
    bool regular = false;
};

class FilteredComplex {
public:
    int formal_dim() const { return formal_dim_; }
    int max_simplex_dim() const { return max_dim_; }
    std::size_t num_vertices() const { return labels_.size(); }
    std::int64_t vertex_label(VertexId v) const { return labels_[v]; }
    const std::vector<std::int64_t>& vertex_labels() const { return labels_; }
    std::optional<VertexId> vertex_of_label(std::int64_t label) const;

    std::size_t num_simplices() const { return simplices_.size(); }
    const Simplex& simplex(SimplexId s) const { return simplices_[s]; }
    int dim(SimplexId s) const { return static_cast<int>(simplices_[s].size()) - 1; }
    int filtration(SimplexId s) const { return filtration_[s]; }
    std::optional<SimplexId> find(const Simplex& s) const;
    /// Codimension-one faces and cofaces.
    const std::vector<SimplexId>& facets(SimplexId s) const { return facets_[s]; }
    const std::vector<SimplexId>& cofacets(SimplexId s) const { return cofacets_[s]; }
    std::vector<SimplexId> maximal_simplices() const;
    std::vector<SimplexId> simplices_of_dim(int d) const;

    const std::vector<Stratum>& strata() const { return strata_; }
    StratumId stratum_of(SimplexId s) const { return stratum_of_[s]; }
    std::vector<StratumId> singular_strata() const;

    std::size_t ambient_dim() const { return coords_.empty() ? 0 : coords_[0].size(); }
    const Point& coordinate(VertexId v) const { return coords_[v]; }
    const std::vector<Point>& coordinates() const { return coords_; }

private:
    friend FilteredComplex build_complex(const RawComplex&);
    int formal_dim_ = 0;
    int max_dim_ = -1;
    std::vector<std::int64_t> labels_;
    std::vector<Simplex> simplices_;
    std::vector<int> filtration_;
    std::map<Simplex, SimplexId> index_;
    std::vector<std::vector<SimplexId>> facets_;
    std::vector<std::vector<SimplexId>> cofacets_;
    std::vector<Stratum> strata_;
    std::vector<StratumId> stratum_of_;
    std::vector<Point> coords_;
};

/// Face closure, validation, deterministic ordering, strata.
FilteredComplex build_complex(const RawComplex& raw);
std::vector<Stratum> compute_strata(const FilteredComplex& X);

/// Round-trips a complex back into ingestion form (per-simplex filtration, explicit coordinates).
RawComplex to_raw(const FilteredComplex& X);

/// Cone with apex at filtration 0 and every old simplex lifted by one.
FilteredComplex cone_complex(const FilteredComplex& X);
/// Two cone points, both at filtration 0.
FilteredComplex suspension_complex(const FilteredComplex& X);
/// [0,1] x X with the staircase triangulation; filtration of a prism cell is that of its projection.
FilteredComplex interval_product(const FilteredComplex& X);

enum class PerversityTag { General, Codimensional, GM };

class Perversity {
public:
    Perversity() = default;
    Perversity(std::vector<ExtInt> values, PerversityTag tag) : values_(std::move(values)), tag_(tag) {}
    const ExtInt& operator()(StratumId s) const { return values_[s]; }
    const std::vector<ExtInt>& values() const { return values_; }
    PerversityTag tag() const { return tag_; }
    friend bool operator==(const Perversity& a, const Perversity& b) { return a.values_ == b.values_; }

private:
    std::vector<ExtInt> values_;
    PerversityTag tag_ = PerversityTag::General;
};

enum class GMPreset { Zero, LowerMiddle, UpperMiddle, Top };

ExtInt top_value(const Stratum& s);
Perversity gm_perversity(const FilteredComplex& X, GMPreset preset);
/// Value depends on codim only. Regular strata get 0; codims missing from the map throw ValidationError.
Perversity codimensional_perversity(const FilteredComplex& X, const std::map<int, ExtInt>& by_codim);
Perversity constant_perversity(const FilteredComplex& X, ExtInt k);
Perversity dual_perversity(const Perversity& p, const FilteredComplex& X);
/// Regular strata vanish; GM-tagged values satisfy the GM growth conditions.
bool perversity_valid(const Perversity& p, const FilteredComplex& X);

}  // namespace ihom
