#pragma once

#include "sigmadelta/linear_systems.hpp"

namespace sigmadelta {

/// sigma(Y) = A Y, delta(Y) = B Y satisfied by consecutive Chebyshev
/// polynomials, with x standing for the index m:
///
///   A = [[0, 1], [-1, 2t]]
///   B = [[(x-1)t/(1-t^2), -(x-1)/(1-t^2)], [x/(1-t^2), -x t/(1-t^2)]]
///   h = 1 - t^2
inline SigmaDeltaSystem chebyshev_system() {
    const RatFunc x = RatFunc::variable(kShiftVar), t = RatFunc::variable(kDiffVar);
    const RatFunc h = RatFunc(1) - t * t;
    RatMatrix a{{RatFunc(0), RatFunc(1)}, {RatFunc(-1), RatFunc(2) * t}};
    RatMatrix b{{(x - RatFunc(1)) * t / h, -(x - RatFunc(1)) / h}, {x / h, -(x * t) / h}};
    return SigmaDeltaSystem::make(std::move(a), std::move(b), h.numerator());
}

namespace chebyshev {

using QuadMatrix = Matrix<QuadRatFunc>;

/// U = [[t+s, t-s], [1, 1]] with s^2 = t^2 - 1; A U = U d and delta(U) = B(0) U.
inline QuadMatrix eigenbasis() {
    const RatFunc t = RatFunc::variable(kDiffVar);
    return QuadMatrix{{TowerElem::coeff(t, RatFunc(1)), TowerElem::coeff(t, RatFunc(-1))}, {QuadRatFunc(1), QuadRatFunc(1)}};
}

/// d = diag(t - s, t + s)
inline QuadMatrix eigenvalues() {
    const RatFunc t = RatFunc::variable(kDiffVar);
    return QuadMatrix::diagonal({TowerElem::coeff(t, RatFunc(-1)), TowerElem::coeff(t, RatFunc(1))});
}

/// Fundamental matrix over the tower: W = [[eta^-1, eta], [(t-s) eta^-1, (t+s) eta]].
inline Matrix<TowerElem> fundamental_matrix() {
    const RatFunc t = RatFunc::variable(kDiffVar);
    return Matrix<TowerElem>{{TowerElem::eta(-1), TowerElem::eta(1)},
                             {TowerElem(TowerElem::coeff(t, RatFunc(-1)), -1), TowerElem(TowerElem::coeff(t, RatFunc(1)), 1)}};
}

}  // namespace chebyshev

}  // namespace sigmadelta
