#pragma once

#include "ihom/filtered_complex.hpp"
#include "ihom/geometry.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace ihom {

using PointId = std::uint32_t;

/// Interned points of |X| with their open carrier cells.
/// Vertex v of X is point v.
class Space {
public:
    /// Validates the realization: independent simplices, pairwise meeting in common faces.
    explicit Space(const FilteredComplex& X);

    const FilteredComplex& complex() const { return *X_; }
    std::size_t num_points() const { return points_.size(); }
    const Point& point(PointId id) const { return points_[id]; }
    /// Smallest cell of X containing the point (its open carrier).
    SimplexId carrier(PointId id) const { return carriers_[id]; }

    /// Throws InvalidGeometry for points outside |X|.
    PointId intern(const Point& p);
    /// Faster when the point is known to lie in the closed cell `hint`.
    PointId intern_in(const Point& p, SimplexId hint);
    std::optional<PointId> find(const Point& p) const;

    const AffineFrame& frame(SimplexId s) const;
    /// Barycentric coordinates of p in the closed cell s, or nullopt if p is outside it.
    std::optional<RVec> cell_coords(const Point& p, SimplexId s) const;

private:
    std::optional<SimplexId> locate_in(const Point& p, SimplexId s) const;
    const FilteredComplex* X_;
    std::vector<Point> points_;
    std::vector<SimplexId> carriers_;
    std::map<Point, PointId, PointLess> ids_;
    mutable std::map<SimplexId, std::unique_ptr<AffineFrame>> frames_;
};

}  // namespace ihom
