#pragma once

#include "ihom/linalg.hpp"

#include <memory>
#include <vector>

namespace ihom {

/// {z >= 0 : A z = b} viewed through a linear output map y = E z.
/// The output map is assumed injective on the polytope; every polytope
/// built here parametrizes points by barycentric weights, where it is.
class Polytope {
public:
    Polytope() = default;
    Polytope(RMat A, RVec b, RMat E, std::size_t nvars);

    std::size_t nvars() const { return nvars_; }
    std::size_t out_dim() const { return E_.size(); }
    const RMat& A() const { return A_; }
    const RVec& b() const { return b_; }
    const RMat& E() const { return E_; }

    /// Vertices in parameter space, lexicographically sorted.
    const std::vector<RVec>& param_vertices() const;
    /// Same vertices through the output map.
    const std::vector<Point>& vertices() const;
    bool empty() const { return param_vertices().empty(); }
    ExtInt dim() const;
    /// Exact LP feasibility of E z = y.
    bool contains(const Point& y) const;
    /// Is some point strictly positive in the listed parameter coordinates?
    bool strictly_positive_on(const std::vector<std::size_t>& coords) const;
    /// Pulling triangulation. Each simplex is a list of indices into vertices().
    std::vector<std::vector<std::size_t>> triangulate() const;
    Point output(const RVec& z) const;

private:
    void enumerate() const;
    std::size_t nvars_ = 0;
    RMat A_;
    RVec b_;
    RMat E_;
    mutable bool enumerated_ = false;
    mutable std::vector<RVec> zverts_;
    mutable std::vector<Point> yverts_;
};

}  // namespace ihom
