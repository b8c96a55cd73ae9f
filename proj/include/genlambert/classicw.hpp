#pragma once

namespace genlambert {

/// Real branches of the Lambert W function, the inverse of x e^x.
enum class ClassicBranch {
    Principal,  ///< W_0 on [-1/e, inf), values >= -1
    MinusOne,   ///< W_{-1} on [-1/e, 0), values <= -1
};

/// Solves x e^x = a on the requested real branch.
///
/// Arguments within a few ulps below -1/e are treated as the branch point.
/// Near the branch point the result comes from the square-root series in
/// p = sqrt(2(e a + 1)); elsewhere from a bracketed Newton iteration.
///
/// Throws DomainError if a < -1/e, or a >= 0 on the MinusOne branch.
double lambert_w(ClassicBranch branch, double a);

inline constexpr double kInvE = 0.36787944117144233;  // 1/e rounded to double

}  // namespace genlambert
