#pragma once
// Independent reference computations. Nothing here calls into the library's
// linear algebra or homology code, only its plain data types.

#include "ihom/filtered_complex.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Matrix = std::vector<std::vector<Int>>;

// Diagonalizes by repeatedly moving the entry of smallest absolute value to the
// corner and reducing its row and column by division with remainder, then fixes
// divisibility with gcd/lcm swaps on the diagonal.
inline std::vector<Int> smith_by_remainders(Matrix a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<Int> diag;
    bool zero_block = false;
    for (std::size_t t = 0; t < std::min(m, n) && !zero_block; ++t) {
        for (;;) {
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) {
                zero_block = true;
                break;
            }
            std::swap(a[t], a[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (clean) break;
        }
        if (!zero_block) diag.push_back(abs(a[t][t]));
    }
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            Int g = gcd(diag[i], diag[j]);
            Int l = lcm(diag[i], diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

inline Int det(std::vector<std::vector<Int>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Int total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Int> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        Int d = a[0][j] * det(minor);
        total += j % 2 ? -d : d;
    }
    return total;
}

// Invariant factors as ratios of gcds of k x k minors. Only sensible for tiny matrices.
inline std::vector<Int> smith_by_minors(const Matrix& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<Int> d{1};
    auto subsets = [](std::size_t total, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        for (std::uint32_t mask = 0; mask < (1u << total); ++mask)
            if (static_cast<std::size_t>(__builtin_popcount(mask)) == k) {
                std::vector<std::size_t> s;
                for (std::size_t i = 0; i < total; ++i)
                    if (mask & (1u << i)) s.push_back(i);
                out.push_back(s);
            }
        return out;
    };
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        Int g = 0;
        for (const auto& rows : subsets(m, k))
            for (const auto& cols : subsets(n, k)) {
                std::vector<std::vector<Int>> sub;
                for (auto i : rows) {
                    std::vector<Int> r;
                    for (auto j : cols) r.push_back(a[i][j]);
                    sub.push_back(r);
                }
                g = gcd(g, det(sub));
            }
        if (g == 0) break;
        d.push_back(g);
    }
    std::vector<Int> out;
    for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k] / d[k - 1]);
    return out;
}

inline std::size_t rank_q(std::vector<std::vector<mpq_class>> a) {
    std::size_t r = 0;
    const std::size_t n = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < n && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c] != 0) {
                mpq_class f = a[i][c] / a[r][c];
                for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
            }
        ++r;
    }
    return r;
}

// Null space basis of a dense rational matrix with ncols columns.
inline std::vector<std::vector<mpq_class>> kernel_q(std::vector<std::vector<mpq_class>> a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c] != 0) {
                mpq_class f = a[i][c];
                for (std::size_t j = 0; j < ncols; ++j) a[i][j] -= f * a[r][j];
            }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        std::vector<mpq_class> v(ncols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
        basis.push_back(v);
    }
    return basis;
}

// Simplicial complex given by sorted vertex lists, closed under faces.
struct Cells {
    std::vector<std::vector<std::vector<std::uint32_t>>> by_dim;
    std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> index;
};

inline Cells close_under_faces(const std::vector<std::vector<std::uint32_t>>& tops) {
    std::set<std::vector<std::uint32_t>> all;
    for (auto t : tops) {
        std::sort(t.begin(), t.end());
        const std::size_t k = t.size();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<std::uint32_t> f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) f.push_back(t[i]);
            all.insert(f);
        }
    }
    Cells c;
    for (const auto& s : all) {
        const std::size_t d = s.size() - 1;
        if (c.by_dim.size() <= d) {
            c.by_dim.resize(d + 1);
            c.index.resize(d + 1);
        }
        c.index[d][s] = c.by_dim[d].size();
        c.by_dim[d].push_back(s);
    }
    return c;
}

// Boundary matrix from degree d to d-1: rows are (d-1)-cells.
inline Matrix boundary_matrix(const Cells& c, std::size_t d) {
    Matrix m(c.by_dim[d - 1].size(), std::vector<Int>(c.by_dim[d].size(), 0));
    for (std::size_t j = 0; j < c.by_dim[d].size(); ++j) {
        const auto& s = c.by_dim[d][j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            m[c.index[d - 1].at(f)][j] = i % 2 ? -1 : 1;
        }
    }
    return m;
}

struct Homology {
    std::vector<std::size_t> betti;
    std::vector<std::vector<Int>> torsion;
};

// Ordinary integral simplicial homology through remainder-based Smith forms.
inline Homology simplicial_homology(const std::vector<std::vector<std::uint32_t>>& tops) {
    Cells c = close_under_faces(tops);
    const std::size_t top = c.by_dim.size();
    std::vector<std::size_t> rank(top + 1, 0);
    std::vector<std::vector<Int>> tors(top + 1);
    for (std::size_t d = 1; d < top; ++d) {
        for (const auto& f : smith_by_remainders(boundary_matrix(c, d))) {
            ++rank[d];
            if (f > 1) tors[d - 1].push_back(f);
        }
    }
    Homology h;
    for (std::size_t d = 0; d < top; ++d) {
        h.betti.push_back(c.by_dim[d].size() - rank[d] - rank[d + 1]);
        h.torsion.push_back(tors[d]);
    }
    return h;
}

// Rational betti numbers of {xi : xi and its boundary supported on allowed cells},
// from dense kernels. allowed[d][i] refers to c.by_dim[d][i].
inline std::vector<std::size_t> intersection_betti_q(const Cells& c, const std::vector<std::vector<bool>>& allowed) {
    const std::size_t top = c.by_dim.size();
    using QMat = std::vector<std::vector<mpq_class>>;
    // Basis of each chain group, as vectors over all d-cells.
    std::vector<QMat> basis(top);
    auto boundary_of = [&](std::size_t d, const std::vector<mpq_class>& v) {
        std::vector<mpq_class> out(d == 0 ? 0 : c.by_dim[d - 1].size(), 0);
        if (d == 0) return out;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            const auto& s = c.by_dim[d][j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                auto f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                out[c.index[d - 1].at(f)] += (i % 2 ? -1 : 1) * v[j];
            }
        }
        return out;
    };
    for (std::size_t d = 0; d < top; ++d) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < c.by_dim[d].size(); ++j)
            if (allowed[d][j]) cols.push_back(j);
        // Constraint: boundary coordinates on forbidden (d-1)-cells vanish.
        QMat cons;
        if (d > 0)
            for (std::size_t i = 0; i < c.by_dim[d - 1].size(); ++i) {
                if (allowed[d - 1][i]) continue;
                std::vector<mpq_class> row(cols.size(), 0);
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    std::vector<mpq_class> e(c.by_dim[d].size(), 0);
                    e[cols[k]] = 1;
                    row[k] = boundary_of(d, e)[i];
                }
                cons.push_back(row);
            }
        for (const auto& z : kernel_q(cons, cols.size())) {
            std::vector<mpq_class> full(c.by_dim[d].size(), 0);
            for (std::size_t k = 0; k < cols.size(); ++k) full[cols[k]] = z[k];
            basis[d].push_back(full);
        }
    }
    std::vector<std::size_t> betti;
    std::vector<std::size_t> rk(top + 1, 0);
    for (std::size_t d = 1; d < top; ++d) {
        QMat images;
        for (const auto& v : basis[d]) images.push_back(boundary_of(d, v));
        rk[d] = rank_q(images);
    }
    for (std::size_t d = 0; d < top; ++d) betti.push_back(basis[d].size() - rk[d] - rk[d + 1]);
    return betti;
}

// Strata by breadth-first search over face/coface pairs of equal filtration value.
// Returns, per simplex, a component number (numbered in order of first simplex).
inline std::vector<std::size_t> strata_components(const ihom::FilteredComplex& X) {
    const std::size_t n = X.num_simplices();
    std::vector<std::size_t> comp(n, n);
    std::size_t next = 0;
    auto is_face = [](const ihom::Simplex& a, const ihom::Simplex& b) {
        return a.size() + 1 == b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != n) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < n; ++b) {
                if (comp[b] != n) continue;
                const auto sa = static_cast<ihom::SimplexId>(a), sb = static_cast<ihom::SimplexId>(b);
                if (X.filtration(sa) != X.filtration(sb)) continue;
                if (is_face(X.simplex(sa), X.simplex(sb)) || is_face(X.simplex(sb), X.simplex(sa))) {
                    comp[b] = next;
                    stack.push_back(b);
                }
            }
        }
        ++next;
    }
    return comp;
}

// Same partition?  Compares the equivalence relations, not the labels.
template <class A, class B>
bool same_partition(const std::vector<A>& a, const std::vector<B>& b) {
    if (a.size() != b.size()) return false;
    std::map<A, B> ab;
    std::map<B, A> ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [it1, new1] = ab.emplace(a[i], b[i]);
        auto [it2, new2] = ba.emplace(b[i], a[i]);
        if (it1->second != b[i] || it2->second != a[i]) return false;
    }
    return true;
}

}  // namespace oracle
