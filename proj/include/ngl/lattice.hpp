#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "ngl/core.hpp"
#include "ngl/perm4.hpp"
#include "ngl/triangulation.hpp"

namespace ngl {

enum class PointKind { vertex, edge, face, interior };

inline const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::vertex: return "vertex";
    case PointKind::edge: return "edge";
    case PointKind::face: return "face";
    default: return "interior";
  }
}

inline PointKind classify(const Point& t) {
  int nonzero = 0;
  for (int x : t) nonzero += x != 0;
  switch (nonzero) {
    case 1: return PointKind::vertex;
    case 2: return PointKind::edge;
    case 3: return PointKind::face;
    default: return PointKind::interior;
  }
}

// All points of level n in lexicographic order.
inline std::vector<Point> points(int n) {
  if (n < 0) throw validation_error("negative lattice level");
  std::vector<Point> out;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c) out.push_back({a, b, c, n - a - b - c});
  return out;
}

// Lattice points of one level with O(log) index lookup.
class Lattice {
 public:
  explicit Lattice(int n) : n_(n), pts_(points(n)) {
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) index_[pts_[i]] = i;
  }
  int level() const { return n_; }
  int size() const { return static_cast<int>(pts_.size()); }
  const Point& operator[](int i) const { return pts_[i]; }
  const std::vector<Point>& all() const { return pts_; }
  bool contains(const Point& t) const { return index_.count(t) != 0; }
  int index(const Point& t) const {
    auto it = index_.find(t);
    if (it == index_.end())
      throw validation_error("point " + point_label(t) + " not at level " +
                             std::to_string(n_));
    return it->second;
  }

 private:
  int n_;
  std::vector<Point> pts_;
  std::map<Point, int> index_;
};

// Shared immutable lattice of level n.
inline const Lattice& lattice(int n) {
  static std::mutex guard;
  static std::map<int, std::unique_ptr<Lattice>> cache;
  std::lock_guard<std::mutex> lock(guard);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Lattice>(n);
  return *slot;
}

struct PointLists {
  std::vector<Point> all, non_vertex, interior;
};

inline PointLists enumerate_points(int n) {
  if (n < 2) throw validation_error("n must be at least 2");
  PointLists r;
  r.all = points(n);
  for (const auto& t : r.all) {
    PointKind k = classify(t);
    if (k != PointKind::vertex) r.non_vertex.push_back(t);
    if (k == PointKind::interior) r.interior.push_back(t);
  }
  return r;
}

// The six edge midpoints of the standard simplex at level 2, in the order
// 1100, 0011, 0110, 1001, 1010, 0101. Opposite edges are adjacent.
inline const std::array<Point, 6>& edges() {
  static const std::array<Point, 6> e{Point{1, 1, 0, 0}, Point{0, 0, 1, 1},
                                      Point{0, 1, 1, 0}, Point{1, 0, 0, 1},
                                      Point{1, 0, 1, 0}, Point{0, 1, 0, 1}};
  return e;
}

// 0 for z (1100, 0011), 1 for z' (0110, 1001), 2 for z'' (1010, 0101).
inline int edge_role(const Point& e) {
  const auto& E = edges();
  for (int k = 0; k < 6; ++k)
    if (E[k] == e) return k / 2;
  throw validation_error("not an edge midpoint: " + point_label(e));
}

// Canonical representative of {e, 1111 - e} in {1100, 0110, 1010}.
inline Point canonical_edge(const Point& e) { return edges()[2 * edge_role(e)]; }

using TetPoint = std::pair<int, Point>;

struct IntegralPointClass {
  std::vector<TetPoint> reps;  // sorted, reps.front() is the representative
  PointKind kind = PointKind::edge;
};

// Non-vertex integral points of a triangulation at level n.
struct Quotient {
  int n = 0;
  std::vector<IntegralPointClass> classes;
  std::map<TetPoint, int> class_of;  // vertex points are absent

  int num_classes() const { return static_cast<int>(classes.size()); }
  int find(int tet, const Point& t) const {
    auto it = class_of.find({tet, t});
    return it == class_of.end() ? -1 : it->second;
  }
  int count(PointKind k) const {
    return static_cast<int>(std::count_if(classes.begin(), classes.end(),
                                          [k](const auto& c) { return c.kind == k; }));
  }
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller index becomes the root so roots are least elements.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

inline Quotient quotient(const Triangulation& T, int n) {
  if (n < 2) throw validation_error("n must be at least 2");
  Lattice L(n);
  const int m = L.size();
  // dense index tet * m + point index follows lexicographic (tet, t) order
  UnionFind uf(T.size() * m);
  for (int i = 0; i < T.size(); ++i) {
    for (int f = 0; f < 4; ++f) {
      int j = T.neighbors[i][f];
      if (j == kFreeFace) continue;
      for (int k = 0; k < m; ++k) {
        if (L[k][f] != 0) continue;
        uf.unite(i * m + k, j * m + L.index(act(T.gluings[i][f], L[k])));
      }
    }
  }
  Quotient Q;
  Q.n = n;
  std::map<int, int> root_to_class;
  for (int idx = 0; idx < T.size() * m; ++idx) {
    const Point& t = L[idx % m];
    if (classify(t) == PointKind::vertex) continue;
    int root = uf.find(idx);
    auto [it, fresh] = root_to_class.try_emplace(root, Q.num_classes());
    if (fresh) Q.classes.push_back({{}, classify(t)});
    Q.classes[it->second].reps.push_back({idx / m, t});
    Q.class_of[{idx / m, t}] = it->second;
  }
  return Q;
}

inline long long binomial(int n, int k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace ngl
