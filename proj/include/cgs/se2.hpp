#pragma once

#include <cmath>

namespace cgs {

inline constexpr double kPi = 3.14159265358979323846;

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

// Planar rigid transform (x, y, theta).
struct Se2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

inline Se2 compose(const Se2& a, const Se2& b) {
  const double c = std::cos(a.theta), s = std::sin(a.theta);
  return {a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y, wrap_angle(a.theta + b.theta)};
}

inline Se2 inverse(const Se2& a) {
  const double c = std::cos(a.theta), s = std::sin(a.theta);
  return {-c * a.x - s * a.y, s * a.x - c * a.y, wrap_angle(-a.theta)};
}

// Componentwise difference with wrapped angle. Zero iff the two transforms
// coincide, which is what pose residuals need; not the group logarithm.
inline Se2 pose_diff(const Se2& a, const Se2& b) {
  return {a.x - b.x, a.y - b.y, wrap_angle(a.theta - b.theta)};
}

}  // namespace cgs
