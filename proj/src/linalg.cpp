#include "ihom/linalg.hpp"
#include "ihom/errors.hpp"

namespace ihom {

Echelon rref(RMat m, std::size_t ncols) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < ncols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

std::size_t rank(const RMat& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

std::vector<RVec> nullspace(const RMat& m, std::size_t ncols) {
    Echelon e = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RVec> solve(const RMat& A, const RVec& b, std::size_t ncols) {
    RMat aug = A;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    Echelon e = rref(aug, ncols + 1);
    if (!e.pivots.empty() && e.pivots.back() == ncols) return std::nullopt;
    RVec x(ncols, Rational(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rows[i][ncols];
    return x;
}

ExtInt affine_dim(const std::vector<Point>& pts) {
    if (pts.empty()) return ExtInt::neg_inf();
    RMat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(point_sub(pts[i], pts[0]));
    return ExtInt(static_cast<std::int64_t>(rank(diffs, pts[0].size())));
}

AffineFrame::AffineFrame(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t k = vertices_.size() - 1;
    const std::size_t m = vertices_[0].size();
    // Pick k ambient coordinates on which the difference vectors are independent.
    RMat cols(m, RVec(k));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) cols[i][j] = vertices_[j + 1][i] - vertices_[0][i];
    RMat chosen;
    for (std::size_t i = 0; i < m && rows_.size() < k; ++i) {
        RMat trial = chosen;
        trial.push_back(cols[i]);
        if (rank(trial, k) == trial.size()) {
            chosen = std::move(trial);
            rows_.push_back(i);
        }
    }
    if (rows_.size() != k) throw Error(ErrorCode::InvalidGeometry, "affinely dependent simplex");
    // Invert the k x k system by row reduction of [chosen | I].
    RMat aug(k, RVec(2 * k, Rational(0)));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = chosen[i][j];
        aug[i][k + i] = 1;
    }
    Echelon e = rref(aug, 2 * k);
    inverse_.assign(k, RVec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) inverse_[i][j] = e.rows[i][k + j];
}

std::optional<RVec> AffineFrame::coords(const Point& x) const {
    const std::size_t k = vertices_.size() - 1;
    RVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = x[rows_[i]] - vertices_[0][rows_[i]];
    RVec beta(k + 1, Rational(0));
    Rational rest = 1;
    for (std::size_t j = 0; j < k; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < k; ++i) s += inverse_[j][i] * rhs[i];
        beta[j + 1] = s;
        rest -= s;
    }
    beta[0] = rest;
    // Verify on every ambient coordinate.
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational v = 0;
        for (std::size_t j = 0; j <= k; ++j)
            if (beta[j] != 0) v += beta[j] * vertices_[j][i];
        if (v != x[i]) return std::nullopt;
    }
    return beta;
}

}  // namespace ihom
