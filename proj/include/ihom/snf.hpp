#pragma once

#include "ihom/sparse.hpp"

#include <map>
#include <vector>

namespace ihom {

using BigMatrix = std::vector<std::vector<BigInt>>;

/// Invariant factors (nonzero diagonal of the Smith form, in divisibility order) by
/// extended-gcd row and column steps.
std::vector<BigInt> smith_invariants(BigMatrix A);

struct EliminationResult {
    std::size_t unit_rank = 0;
    /// Entries left after unit pivoting, as a dense block.
    BigMatrix rest;
};

/// Pivots on unit entries while they exist (unimodular steps only), cheapest row first.
template <class R>
EliminationResult eliminate_units(const R& ring, std::vector<SVec<R>> columns, std::uint32_t nrows) {
    using T = typename R::T;
    EliminationResult res;
    std::vector<std::map<std::uint32_t, T>> cols(columns.size());
    std::vector<std::set<std::uint32_t>> rows(nrows);
    for (std::uint32_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) {
            cols[c][r] = v;
            rows[r].insert(c);
        }
    std::vector<bool> alive(cols.size(), true);
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::uint32_t> order;
        for (std::uint32_t c = 0; c < cols.size(); ++c)
            if (alive[c] && !cols[c].empty()) order.push_back(c);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return cols[a].size() < cols[b].size(); });
        for (std::uint32_t c : order) {
            if (!alive[c] || cols[c].empty()) continue;
            std::optional<std::uint32_t> pr;
            for (const auto& [r, v] : cols[c])
                if (R::is_unit(v) && (!pr || rows[r].size() < rows[*pr].size())) pr = r;
            if (!pr) continue;
            const std::uint32_t r = *pr;
            const T pinv = ring.div(ring.one(), cols[c][r]);
            std::vector<std::uint32_t> others(rows[r].begin(), rows[r].end());
            for (std::uint32_t c2 : others) {
                if (c2 == c) continue;
                T f = ring.neg(ring.mul(cols[c2][r], pinv));
                for (const auto& [rr, v] : cols[c]) {
                    auto it = cols[c2].find(rr);
                    T nv = ring.add(it == cols[c2].end() ? R::zero() : it->second, ring.mul(f, v));
                    if (R::is_zero(nv)) {
                        if (it != cols[c2].end()) {
                            cols[c2].erase(it);
                            rows[rr].erase(c2);
                        }
                    } else if (it == cols[c2].end()) {
                        cols[c2].emplace(rr, nv);
                        rows[rr].insert(c2);
                    } else {
                        it->second = nv;
                    }
                }
            }
            for (const auto& [rr, v] : cols[c]) rows[rr].erase(c);
            cols[c].clear();
            alive[c] = false;
            ++res.unit_rank;
            progress = true;
        }
    }
    std::vector<std::uint32_t> live_cols, live_rows;
    for (std::uint32_t c = 0; c < cols.size(); ++c)
        if (alive[c] && !cols[c].empty()) live_cols.push_back(c);
    for (std::uint32_t r = 0; r < nrows; ++r)
        if (!rows[r].empty()) live_rows.push_back(r);
    std::map<std::uint32_t, std::size_t> rpos;
    for (std::size_t i = 0; i < live_rows.size(); ++i) rpos[live_rows[i]] = i;
    res.rest.assign(live_rows.size(), std::vector<BigInt>(live_cols.size(), BigInt(0)));
    for (std::size_t j = 0; j < live_cols.size(); ++j)
        for (const auto& [r, v] : cols[live_cols[j]]) res.rest[rpos[r]][j] = R::to_big(v);
    return res;
}

struct MatrixInvariants {
    std::size_t rank = 0;
    /// Invariant factors greater than one.
    std::vector<BigInt> torsion;
};

template <class R>
MatrixInvariants matrix_invariants(const R& ring, const std::vector<SVec<R>>& columns, std::uint32_t nrows) {
    MatrixInvariants out;
    EliminationResult e = eliminate_units(ring, columns, nrows);
    out.rank = e.unit_rank;
    if constexpr (R::is_field) {
        // Every nonzero entry is a unit, so nothing remains.
        return out;
    } else {
        for (const auto& d : smith_invariants(e.rest)) {
            ++out.rank;
            if (d != 1) out.torsion.push_back(d);
        }
        return out;
    }
}

}  // namespace ihom
