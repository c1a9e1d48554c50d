#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <string>
#include <vector>

#include "ngl/core.hpp"

namespace ngl {

// Permutation of {0,1,2,3} stored as the image tuple of 0..3.
class Perm4 {
 public:
  constexpr Perm4() : img_{0, 1, 2, 3} {}

  explicit Perm4(const std::array<int, 4>& img) : img_(img) {
    std::array<bool, 4> seen{};
    for (int v : img_) {
      if (v < 0 || v > 3 || seen[v])
        throw validation_error("not a permutation of {0,1,2,3}: " + str());
      seen[v] = true;
    }
  }

  int operator()(int i) const { return img_[i]; }

  // (a * b)(i) = a(b(i))
  Perm4 operator*(const Perm4& o) const {
    Perm4 r;
    for (int i = 0; i < 4; ++i) r.img_[i] = img_[o.img_[i]];
    return r;
  }

  Perm4 inverse() const {
    Perm4 r;
    for (int i = 0; i < 4; ++i) r.img_[img_[i]] = i;
    return r;
  }

  int sign() const {
    int s = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (img_[i] > img_[j]) s = -s;
    return s;
  }

  const std::array<int, 4>& image() const { return img_; }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + std::to_string(img_[i]);
    return s + "]";
  }

  friend bool operator==(const Perm4&, const Perm4&) = default;
  friend auto operator<=>(const Perm4&, const Perm4&) = default;

  // All 24 permutations in lexicographic order of their images.
  static std::vector<Perm4> all() {
    std::array<int, 4> a{0, 1, 2, 3};
    std::vector<Perm4> out;
    do {
      out.emplace_back(a);
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
  }

  // Transposition of a and b.
  static Perm4 swap(int a, int b) {
    std::array<int, 4> img{0, 1, 2, 3};
    std::swap(img[a], img[b]);
    return Perm4(img);
  }

 private:
  std::array<int, 4> img_;
};

// sigma acting on coordinates: act(sigma, t)[sigma(i)] = t[i].
inline Point act(const Perm4& sigma, const Point& t) {
  Point r{};
  for (int i = 0; i < 4; ++i) r[sigma(i)] = t[i];
  return r;
}

// Sign of the permutation [v0, v1, v2, v3] where v3 is the omitted vertex;
// +1 exactly when v0v1v2 is in the A4-orbit of 012.
inline int rotation_sign(const std::array<int, 3>& tr) {
  int v3 = 6 - tr[0] - tr[1] - tr[2];
  return Perm4({tr[0], tr[1], tr[2], v3}).sign();
}

// Sign of the permutation sorting (v0, v1, v2).
inline int order_sign(const std::array<int, 3>& tr) {
  int s = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (tr[i] > tr[j]) s = -s;
  return s;
}

inline int missing_vertex(const std::array<int, 3>& tr) {
  return 6 - tr[0] - tr[1] - tr[2];
}

}  // namespace ngl
