#pragma once

#include "ihom/polytope.hpp"

#include <cstdint>
#include <vector>

namespace ihom {

/// Affinely independent ordered points.
struct GeoSimplex {
    std::vector<Point> vertices;

    std::int64_t dim() const { return static_cast<std::int64_t>(vertices.size()) - 1; }
    bool empty() const { return vertices.empty(); }
};

/// Throws InvalidGeometry when the points are affinely dependent.
GeoSimplex make_simplex(std::vector<Point> pts);
bool affinely_independent(const std::vector<Point>& pts);

/// Points are sums lambda_i p_i = sum mu_j q_j with lambda, mu barycentric.
/// Parameters are (lambda, mu); the output is the ambient point.
Polytope simplex_intersection(const GeoSimplex& P, const GeoSimplex& Q);
/// Exact LP: maximize s with lambda_i >= s, mu_j >= s.
bool interiors_meet(const GeoSimplex& T, const GeoSimplex& C);
bool general_position(const GeoSimplex& P, const GeoSimplex& Q, const GeoSimplex& Delta);
/// c_u V with u prepended; c_u of the empty simplex is {u}.
GeoSimplex cone_on(const Point& u, const GeoSimplex& V);
/// Does the convex set with these vertices lie in the boundary of Delta?
bool inside_boundary(const std::vector<Point>& pts, const AffineFrame& delta);
bool strong_general_position(const Point& u, const GeoSimplex& T, const GeoSimplex& V, const GeoSimplex& Delta);
/// Full evaluation without the shortcut for envelopes spanned by vertices of Delta.
bool strong_general_position_full(const Point& u, const GeoSimplex& T, const GeoSimplex& V, const GeoSimplex& Delta);

/// Squared maximum edge length.
Rational squared_diameter(const std::vector<Point>& pts);

struct SamplerConfig {
    std::uint64_t max_attempts = 10000;
    std::uint64_t refine_every = 1000;
};

struct PseudoBarycentreChoice {
    Point u;
    GeoSimplex parent;
    std::uint64_t seed = 0;
    std::uint64_t attempts = 0;
};

/// Ball radius over diam Delta: l / ((l+1)(2l+1)).
Rational pb_radius_ratio(std::int64_t l);

/// Rejection sampling on a dyadic barycentric grid around the barycentre.
PseudoBarycentreChoice sample_pseudobarycentre(const GeoSimplex& Delta, const std::vector<GeoSimplex>& boundary_faces,
                                               const std::vector<GeoSimplex>& envelopes,
                                               const std::vector<Polytope>& forbidden, std::uint64_t seed,
                                               const SamplerConfig& config = {});

/// Checks every acceptance condition for a candidate point.
bool pseudobarycentre_acceptable(const Point& u, const GeoSimplex& Delta, const std::vector<GeoSimplex>& boundary_faces,
                                 const std::vector<GeoSimplex>& envelopes, const std::vector<Polytope>& forbidden);

/// The whole simplex as a polytope, in its own barycentric parameters.
Polytope simplex_polytope(const GeoSimplex& S);

}  // namespace ihom
