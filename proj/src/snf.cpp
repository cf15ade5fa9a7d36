#include "ihom/snf.hpp"

namespace ihom {

namespace {

// Rows i, k <- (s*row_i + t*row_k, x*row_i + y*row_k) for a unimodular 2x2.
void row_op(BigMatrix& A, std::size_t i, std::size_t k, const BigInt& s, const BigInt& t, const BigInt& x,
            const BigInt& y) {
    for (std::size_t j = 0; j < A[i].size(); ++j) {
        BigInt a = A[i][j], b = A[k][j];
        A[i][j] = s * a + t * b;
        A[k][j] = x * a + y * b;
    }
}

void col_op(BigMatrix& A, std::size_t i, std::size_t k, const BigInt& s, const BigInt& t, const BigInt& x,
            const BigInt& y) {
    for (auto& row : A) {
        BigInt a = row[i], b = row[k];
        row[i] = s * a + t * b;
        row[k] = x * a + y * b;
    }
}

// Exact division leaves the pivot in place; a general gcd step may only move it.
bool divides(const BigInt& a, const BigInt& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }

}  // namespace

std::vector<BigInt> smith_invariants(BigMatrix A) {
    std::vector<BigInt> diag;
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    BigZ ring;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Any nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = m, pj = n;
        for (std::size_t j = t; j < n && pi == m; ++j)
            for (std::size_t i = t; i < m; ++i)
                if (A[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == m) break;
        std::swap(A[t], A[pi]);
        for (auto& row : A) std::swap(row[t], row[pj]);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A[i][t] == 0) continue;
                if (divides(A[t][t], A[i][t])) {
                    row_op(A, t, i, 1, 0, -(A[i][t] / A[t][t]), 1);
                    continue;
                }
                auto [g, s, u] = ring.xgcd(A[t][t], A[i][t]);
                BigInt x = -(A[i][t] / g), y = A[t][t] / g;
                row_op(A, t, i, s, u, x, y);
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                if (divides(A[t][t], A[t][j])) {
                    col_op(A, t, j, 1, 0, -(A[t][j] / A[t][t]), 1);
                    continue;
                }
                clean = false;
                auto [g, s, u] = ring.xgcd(A[t][t], A[t][j]);
                BigInt x = -(A[t][j] / g), y = A[t][t] / g;
                col_op(A, t, j, s, u, x, y);
            }
            if (!clean) continue;  // column steps may have refilled column t
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        for (std::size_t k = t; k < n; ++k) A[t][k] += A[i][k];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        diag.push_back(abs(A[t][t]));
    }
    return diag;
}

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace ihom
