#pragma once

#include "ihom/extended_int.hpp"
#include "ihom/rational.hpp"

#include <optional>
#include <vector>

namespace ihom {

using RVec = std::vector<Rational>;
/// Row-major dense rational matrix.
using RMat = std::vector<RVec>;

struct Echelon {
    RMat rows;                 // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;
};

Echelon rref(RMat m, std::size_t ncols);
std::size_t rank(const RMat& m, std::size_t ncols);
/// Basis of {x : m x = 0}.
std::vector<RVec> nullspace(const RMat& m, std::size_t ncols);
/// Some solution of A x = b, if one exists.
std::optional<RVec> solve(const RMat& A, const RVec& b, std::size_t ncols);
/// Rank of the difference vectors; -inf for no points.
ExtInt affine_dim(const std::vector<Point>& pts);

/// Barycentric coordinates with respect to affinely independent points.
class AffineFrame {
public:
    explicit AffineFrame(std::vector<Point> vertices);
    /// nullopt when x is off the affine hull.
    std::optional<RVec> coords(const Point& x) const;
    std::size_t size() const { return vertices_.size(); }
    const std::vector<Point>& vertices() const { return vertices_; }

private:
    std::vector<Point> vertices_;
    std::vector<std::size_t> rows_;  // ambient coordinates forming an invertible system
    RMat inverse_;                   // inverse of the chosen square difference system
};

}  // namespace ihom
