#pragma once

#include "ihom/rings.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ihom {

template <class R>
using SVec = std::vector<std::pair<std::uint32_t, typename R::T>>;

/// a*x + b*y for sparse vectors sorted by index.
template <class R>
SVec<R> axpby(const R& ring, const typename R::T& a, const SVec<R>& x, const typename R::T& b, const SVec<R>& y) {
    SVec<R> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            auto v = ring.mul(a, x[i].second);
            if (!R::is_zero(v)) out.emplace_back(x[i].first, v);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            auto v = ring.mul(b, y[j].second);
            if (!R::is_zero(v)) out.emplace_back(y[j].first, v);
            ++j;
        } else {
            auto v = ring.add(ring.mul(a, x[i].second), ring.mul(b, y[j].second));
            if (!R::is_zero(v)) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

/// Lattice (or subspace) basis in echelon form by leading (smallest) index.
/// Over Z, collisions are resolved with unimodular 2x2 steps, so the basis spans
/// exactly the lattice generated by the inserted vectors.
template <class R>
class EchelonBasis {
public:
    explicit EchelonBasis(R ring = R()) : ring_(std::move(ring)) {}

    /// Returns true when the vector enlarged the span.
    bool insert(SVec<R> v) {
        while (!v.empty()) {
            auto it = pivot_.find(v.front().first);
            if (it == pivot_.end()) {
                pivot_.emplace(v.front().first, basis_.size());
                basis_.push_back(std::move(v));
                return true;
            }
            SVec<R>& b = basis_[it->second];
            const auto a = b.front().second;
            const auto c = v.front().second;
            if (ring_.divides(a, c)) {
                v = axpby(ring_, ring_.one(), v, ring_.neg(ring_.div(c, a)), b);
                continue;
            }
            auto [g, s, t] = ring_.xgcd(a, c);
            SVec<R> nb = axpby(ring_, s, b, t, v);
            SVec<R> nv = axpby(ring_, ring_.div(c, g), b, ring_.neg(ring_.div(a, g)), v);
            b = std::move(nb);
            v = std::move(nv);
        }
        return false;
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<SVec<R>>& basis() const { return basis_; }
    const R& ring() const { return ring_; }

    /// Coefficients on the basis (indexed like basis()) when v is in the span.
    std::optional<std::vector<std::pair<std::size_t, typename R::T>>> coordinates(SVec<R> v) const {
        std::vector<std::pair<std::size_t, typename R::T>> out;
        while (!v.empty()) {
            auto it = pivot_.find(v.front().first);
            if (it == pivot_.end()) return std::nullopt;
            const SVec<R>& b = basis_[it->second];
            if (!ring_.divides(b.front().second, v.front().second)) return std::nullopt;
            auto q = ring_.div(v.front().second, b.front().second);
            out.emplace_back(it->second, q);
            v = axpby(ring_, ring_.one(), v, ring_.neg(q), b);
        }
        return out;
    }

private:
    R ring_;
    std::unordered_map<std::uint32_t, std::size_t> pivot_;
    std::vector<SVec<R>> basis_;
};

/// Kernel of the matrix whose columns are given, as a lattice basis in echelon form.
template <class R>
class KernelLattice {
public:
    KernelLattice(const R& ring, const std::vector<SVec<R>>& columns, std::uint32_t nrows)
        : offset_(nrows), echelon_(ring) {
        for (std::uint32_t j = 0; j < columns.size(); ++j) {
            SVec<R> row = columns[j];
            row.emplace_back(nrows + j, ring.one());
            echelon_.insert(std::move(row));
        }
        for (std::size_t i = 0; i < echelon_.basis().size(); ++i) {
            const auto& b = echelon_.basis()[i];
            if (b.front().first < offset_) continue;
            index_.push_back(i);
        }
        std::sort(index_.begin(), index_.end(),
                  [&](std::size_t a, std::size_t b) { return lead(a) < lead(b); });
        for (std::size_t k = 0; k < index_.size(); ++k) position_[index_[k]] = k;
        for (auto i : index_) {
            SVec<R> v;
            for (const auto& [idx, val] : echelon_.basis()[i]) v.emplace_back(idx - offset_, val);
            vectors_.push_back(std::move(v));
        }
    }

    /// Basis vectors over the column indices.
    const std::vector<SVec<R>>& vectors() const { return vectors_; }

    /// Coordinates in vectors() of a kernel element given over column indices.
    std::optional<std::vector<std::pair<std::size_t, typename R::T>>> coordinates(const SVec<R>& v) const {
        SVec<R> shifted;
        for (const auto& [idx, val] : v) shifted.emplace_back(idx + offset_, val);
        auto c = echelon_.coordinates(std::move(shifted));
        if (!c) return std::nullopt;
        std::vector<std::pair<std::size_t, typename R::T>> out;
        for (const auto& [i, q] : *c) {
            auto it = position_.find(i);
            if (it == position_.end()) return std::nullopt;
            out.emplace_back(it->second, q);
        }
        return out;
    }

private:
    std::uint32_t lead(std::size_t i) const { return echelon_.basis()[i].front().first; }
    std::uint32_t offset_;
    EchelonBasis<R> echelon_;
    std::vector<std::size_t> index_;
    std::unordered_map<std::size_t, std::size_t> position_;
    std::vector<SVec<R>> vectors_;
};

/// Rank of the span of the vectors.
template <class R>
std::size_t span_rank(const R& ring, const std::vector<SVec<R>>& vs) {
    EchelonBasis<R> e(ring);
    for (const auto& v : vs) e.insert(v);
    return e.rank();
}

}  // namespace ihom
