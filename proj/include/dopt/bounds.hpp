#pragma once

#include "dopt/types.hpp"

namespace dopt {

/// Absorb bound handling: clamp each out-of-range coordinate to the violated
/// bound and zero the velocity component of every clamped coordinate.
/// In-range coordinates are untouched. Idempotent.
void absorb_bounds(Vector& position, Vector& velocity, const Bounds& bounds);

/// Mirror a scalar off the violated bound until it lies in [lo, hi].
double reflect_into_range(double value, double lo, double hi);

/// Coordinate-wise reflection of a point into the search region.
void reflect_into_bounds(Vector& x, const Bounds& bounds);

}  // namespace dopt
