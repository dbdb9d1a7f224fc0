#include "dopt/bounds.hpp"

namespace dopt {

void absorb_bounds(Vector& position, Vector& velocity, const Bounds& bounds) {
  for (Eigen::Index i = 0; i < position.size(); ++i) {
    if (position[i] < bounds.lo) {
      position[i] = bounds.lo;
      velocity[i] = 0.0;
    } else if (position[i] > bounds.hi) {
      position[i] = bounds.hi;
      velocity[i] = 0.0;
    }
  }
}

double reflect_into_range(double value, double lo, double hi) {
  while (value < lo || value > hi) {
    if (value > hi) value = hi - (value - hi);
    if (value < lo) value = lo + (lo - value);
  }
  return value;
}

void reflect_into_bounds(Vector& x, const Bounds& bounds) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = reflect_into_range(x[i], bounds.lo, bounds.hi);
  }
}

}  // namespace dopt
