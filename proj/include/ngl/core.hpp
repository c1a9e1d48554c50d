#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ngl {

using cplx = std::complex<double>;

// A lattice point of the n-th dilate of the standard 3-simplex.
using Point = std::array<int, 4>;

// Input that violates a structural requirement (bad file, broken path, ...).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical procedure could not produce a trustworthy answer.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTolerance = 1e-9;

// NGL_TOL overrides the default tolerance.
inline double default_tolerance() {
  if (const char* env = std::getenv("NGL_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return kDefaultTolerance;
}

inline int point_sum(const Point& t) { return t[0] + t[1] + t[2] + t[3]; }

inline Point operator+(const Point& a, const Point& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Point operator-(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Point operator*(int k, const Point& a) {
  return {k * a[0], k * a[1], k * a[2], k * a[3]};
}

inline bool non_negative(const Point& t) {
  return t[0] >= 0 && t[1] >= 0 && t[2] >= 0 && t[3] >= 0;
}

inline Point unit(int v) {
  Point e{0, 0, 0, 0};
  e[v] = 1;
  return e;
}

// "1100" style label, as used throughout the notation for points and edges.
inline std::string point_label(const Point& t) {
  std::string s;
  for (int x : t) s += std::to_string(x);
  return s;
}

}  // namespace ngl
