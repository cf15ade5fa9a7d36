#pragma once

#include "ihom/linalg.hpp"

namespace ihom {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;
    RVec x;
};

/// Exact two-phase simplex with Bland's rule: maximize c.x subject to A x = b, x >= 0.
LPResult lp_maximize(const RMat& A, const RVec& b, const RVec& c);
/// Is {x >= 0 : A x = b} nonempty?
bool lp_feasible(const RMat& A, const RVec& b);

}  // namespace ihom
