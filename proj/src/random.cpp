#include "dopt/random.hpp"

#include <cmath>

namespace dopt {

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1).
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * kPi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

int RandomStream::uniform_int(int n) {
  int v = static_cast<int>(uniform() * n);
  return v < n ? v : n - 1;
}

Vector RandomStream::uniform_vector(int d, double lo, double hi) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = uniform(lo, hi);
  return v;
}

std::vector<int> RandomStream::permutation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = uniform_int(i + 1);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

Vector unit_random_vector(RandomStream& stream, int d) {
  Vector v(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = stream.gaussian();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

Vector uniform_ball_sample(RandomStream& stream, const Vector& center,
                           double radius) {
  const int d = static_cast<int>(center.size());
  Vector dir = unit_random_vector(stream, d);
  double r = radius * std::pow(stream.uniform(), 1.0 / d);
  return center + r * dir;
}

}  // namespace dopt
