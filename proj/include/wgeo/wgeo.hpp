#ifndef WGEO_WGEO_HPP
#define WGEO_WGEO_HPP

// Numerical-radius geometry on finite-dimensional real polyhedral spaces.
// Include <wgeo/rational.hpp> as well for exact rational arithmetic.

#include "wgeo/approx.hpp"
#include "wgeo/error.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/ortho.hpp"
#include "wgeo/pairs.hpp"
#include "wgeo/scalar.hpp"
#include "wgeo/smooth.hpp"
#include "wgeo/solver.hpp"
#include "wgeo/space.hpp"

#endif  // WGEO_WGEO_HPP
