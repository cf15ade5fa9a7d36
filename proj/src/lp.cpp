#include "ihom/lp.hpp"

#include <optional>

namespace ihom {

namespace {

struct Tableau {
    RMat rows;  // each row: coefficients then rhs
    RVec obj;   // reduced costs then objective value (negated convention: obj.back() = current value)
    std::vector<std::size_t> basis;
    std::size_t ncols = 0;

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r])
            if (v != 0) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j <= ncols; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        if (obj[c] != 0) {
            Rational f = obj[c];
            for (std::size_t j = 0; j <= ncols; ++j)
                if (rows[r][j] != 0) obj[j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    /// Returns false when unbounded. Only columns < allowed may enter.
    bool run(std::size_t allowed) {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < allowed; ++j)
                if (obj[j] > 0) {
                    enter = j;
                    break;
                }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][*enter] <= 0) continue;
                Rational ratio = rows[i][ncols] / rows[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }
};

}  // namespace

LPResult lp_maximize(const RMat& A, const RVec& b, const RVec& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    Tableau t;
    t.ncols = n + m;
    t.rows.assign(m, RVec(n + m + 1, Rational(0)));
    t.obj.assign(n + m + 1, Rational(0));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = sign * A[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][n + m] = sign * b[i];
        t.basis[i] = n + i;
        for (std::size_t j = 0; j < n; ++j) t.obj[j] += t.rows[i][j];
        // obj.back() holds minus the objective value so that pivots update it uniformly.
        t.obj[n + m] += t.rows[i][n + m];
    }
    t.run(n + m);
    LPResult res;
    if (t.obj[n + m] != 0) return res;  // phase-one optimum -sum(a) is negative

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) {
                col = j;
                break;
            }
        if (col) {
            t.pivot(i, *col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    // Phase two: drop artificial columns from consideration.
    t.obj.assign(n + m + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) t.obj[j] = c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rational& cb = c[t.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j <= n + m; ++j)
            if (t.rows[i][j] != 0) t.obj[j] -= cb * t.rows[i][j];
    }
    if (!t.run(n)) {
        res.status = LPStatus::Unbounded;
        return res;
    }
    res.status = LPStatus::Optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) res.x[t.basis[i]] = t.rows[i][n + m];
    res.value = 0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

bool lp_feasible(const RMat& A, const RVec& b) {
    std::size_t n = A.empty() ? 0 : A[0].size();
    return lp_maximize(A, b, RVec(n, Rational(0))).status != LPStatus::Infeasible;
}

}  // namespace ihom
