#pragma once

#include "ihom/space.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace ihom {

/// Sorted point ids of an oriented simplex; orientation lives in the coefficient.
using SimplexKey = std::vector<PointId>;

/// Integer chain of linear simplices. Ordered tuples are normalized by sorting
/// with the permutation sign; tuples with a repeated point vanish.
class Chain {
public:
    Chain() = default;
    explicit Chain(int degree) : degree_(degree) {}
    static Chain simplex(const std::vector<PointId>& tuple, std::int64_t coeff = 1);

    int degree() const { return degree_; }
    const std::map<SimplexKey, std::int64_t>& terms() const& { return terms_; }
    /// By value on temporaries, so `for (auto& t : xi.boundary().terms())` is safe.
    std::map<SimplexKey, std::int64_t> terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::int64_t coefficient(const SimplexKey& k) const;

    void add(const std::vector<PointId>& tuple, std::int64_t coeff);
    Chain& operator+=(const Chain& other);
    Chain& operator-=(const Chain& other);
    Chain operator-() const;
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend bool operator==(const Chain& a, const Chain& b) {
        return a.terms_ == b.terms_ && (a.terms_.empty() || a.degree_ == b.degree_);
    }
    Chain scaled(std::int64_t k) const;

    Chain boundary() const;
    /// u * [p0..pk] = [u, p0..pk].
    Chain cone(PointId u) const;

private:
    int degree_ = 0;
    std::map<SimplexKey, std::int64_t> terms_;
};

/// Sorts the tuple in place and returns the permutation sign, or 0 on a repeat.
int normalize_tuple(std::vector<PointId>& tuple);

}  // namespace ihom
