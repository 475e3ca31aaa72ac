#pragma once

namespace balldesign {

enum class LambertBranch {
    Principal,  ///< W0, values >= -1, defined on [-1/e, inf)
    Lower,      ///< W-1, values <= -1, defined on [-1/e, 0)
};

/// Real Lambert W, the inverse of w -> w e^w, by Halley iteration.
/// Throws std::domain_error outside the branch domain.
double lambert_w(double z, LambertBranch branch = LambertBranch::Principal);

}  // namespace balldesign
