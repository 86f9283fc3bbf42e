#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

namespace thetacert {

// Extended-precision scalar for every lattice sum, theta evaluation and LP
// pivot. Gram values around 1e6 at t = 0.3 leave no room for double roundoff
// under absolute residuals of 1e-12.
using Real = boost::multiprecision::float128;

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

inline double to_double(const Real& x) { return x.convert_to<double>(); }

// Unit roundoff of Real.
inline Real real_epsilon() { return std::numeric_limits<Real>::epsilon(); }

}  // namespace thetacert
