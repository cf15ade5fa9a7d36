#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace ihom {

using Rational = mpq_class;
using BigInt = mpz_class;
/// Exact point in R^m.
using Point = std::vector<Rational>;

/// Parses "p/q" or "p"; rejects zero denominators and anything else. Result is canonical.
std::optional<Rational> parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

Point point_sub(const Point& a, const Point& b);
Point point_add(const Point& a, const Point& b);
Point point_scale(const Point& a, const Rational& s);
Rational dot(const Point& a, const Point& b);
Rational squared_distance(const Point& a, const Point& b);
/// Affine combination sum w_i p_i; weights are not required to sum to one.
Point combine(const std::vector<Point>& pts, const std::vector<Rational>& w);
Point centroid(const std::vector<Point>& pts);

struct PointLess {
    bool operator()(const Point& a, const Point& b) const;
};

}  // namespace ihom
