#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ngl/core.hpp"
#include "ngl/gluing.hpp"
#include "ngl/intmat.hpp"
#include "ngl/lattice.hpp"
#include "ngl/triangulation.hpp"

namespace ngl {

// det(I_{sigma, sigma(t)}): parity of the shuffle sigma induces on the odd
// entries of t.
inline int identification_sign(const Perm4& sigma, const Point& t) {
  std::vector<int> images;
  for (int i = 0; i < 4; ++i)
    if (t[i] % 2) images.push_back(sigma(i));
  int s = 1;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j]) s = -s;
  return s;
}

// ---------------------------------------------------------------------------
// Ptolemy variables of a triangulation: one per non-vertex integral point.
// Every (tet, t) is sign * (class representative).

struct PtolemyIndex {
  Quotient Q;
  std::map<TetPoint, std::pair<int, int>> var;  // (class, sign)

  int num_vars() const { return Q.num_classes(); }
  std::pair<int, int> lookup(int tet, const Point& t) const {
    auto it = var.find({tet, t});
    if (it == var.end()) return {-1, 1};  // vertex point, value 1
    return it->second;
  }
};

inline PtolemyIndex ptolemy_index(const Triangulation& T, int n) {
  PtolemyIndex P{quotient(T, n), {}};
  // (c_i)_t = sign * (c_j)_{sigma(t)} across each pairing
  std::map<TetPoint, std::vector<std::pair<TetPoint, int>>> adj;
  const Lattice& L = lattice(n);
  for (int i = 0; i < T.size(); ++i)
    for (int f = 0; f < 4; ++f) {
      int j = T.neighbors[i][f];
      if (j == kFreeFace) continue;
      for (const Point& t : L.all()) {
        if (t[f] != 0 || classify(t) == PointKind::vertex) continue;
        const Perm4& s = T.gluings[i][f];
        adj[{i, t}].push_back({{j, act(s, t)}, identification_sign(s, t)});
      }
    }
  for (int c = 0; c < P.Q.num_classes(); ++c) {
    const TetPoint root = P.Q.classes[c].reps.front();
    P.var[root] = {c, 1};
    std::deque<TetPoint> queue{root};
    while (!queue.empty()) {
      TetPoint x = queue.front();
      queue.pop_front();
      int sx = P.var[x].second;
      for (const auto& [y, sg] : adj[x]) {
        int want = sx * sg;
        auto it = P.var.find(y);
        if (it == P.var.end()) {
          P.var[y] = {c, want};
          queue.push_back(y);
        } else if (it->second.second != want) {
          throw validation_error("inconsistent Ptolemy identification signs at class " +
                                 std::to_string(c));
        }
      }
    }
  }
  return P;
}

struct PtolemyTerm {
  int var = -1;  // -1 for a vertex point
  int sign = 1;
  Point t{};
};

// c_{s+1001} c_{s+0110} + c_{s+1100} c_{s+0011} = c_{s+1010} c_{s+0101}
struct PtolemyRelation {
  int tet = 0;
  Point s{};
  std::array<PtolemyTerm, 6> terms;
};

inline const std::array<Point, 6>& relation_offsets() {
  static const std::array<Point, 6> o{Point{1, 0, 0, 1}, Point{0, 1, 1, 0}, Point{1, 1, 0, 0},
                                      Point{0, 0, 1, 1}, Point{1, 0, 1, 0}, Point{0, 1, 0, 1}};
  return o;
}

inline std::vector<PtolemyRelation> generate_relations(const Triangulation& T, int n, const PtolemyIndex& P) {
  std::vector<PtolemyRelation> out;
  const Lattice& S = lattice(n - 2);
  for (int tet = 0; tet < T.size(); ++tet)
    for (const Point& s : S.all()) {
      PtolemyRelation r{tet, s, {}};
      for (int k = 0; k < 6; ++k) {
        Point t = s + relation_offsets()[k];
        auto [v, sg] = P.lookup(tet, t);
        r.terms[k] = {v, sg, t};
      }
      out.push_back(r);
    }
  return out;
}

inline std::vector<PtolemyRelation> generate_relations(const Triangulation& T, int n) {
  return generate_relations(T, n, ptolemy_index(T, n));
}

inline cplx term_value(const PtolemyTerm& t, const std::vector<cplx>& c) {
  return t.var < 0 ? cplx(1.0) : double(t.sign) * c[t.var];
}

// Relative residual of one relation.
inline double relation_residual(const PtolemyRelation& r, const std::vector<cplx>& c) {
  std::array<cplx, 6> v;
  for (int k = 0; k < 6; ++k) v[k] = term_value(r.terms[k], c);
  cplx a = v[0] * v[1], b = v[2] * v[3], d = v[4] * v[5];
  double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(d)});
  return std::abs(a + b - d) / scale;
}

inline std::string relation_text(const PtolemyRelation& r, const PtolemyIndex& P, bool with_tet) {
  auto name = [&](const PtolemyTerm& t) {
    if (t.var < 0) return std::string("1");
    const auto& [tet, pt] = P.Q.classes[t.var].reps.front();
    return "c_{" + point_label(pt) + (with_tet ? "," + std::to_string(tet) : "") + "}";
  };
  auto product = [&](int a, int b) {
    int sg = r.terms[a].sign * r.terms[b].sign;
    return std::string(sg < 0 ? "-" : "") + name(r.terms[a]) + " * " + name(r.terms[b]);
  };
  return product(0, 1) + " + " + product(2, 3) + " = " + product(4, 5);
}

// ---------------------------------------------------------------------------
// Single-simplex assignments.

// Ptolemy assignment on the points of level n (vertex points included).
struct SimplexPtolemy {
  int n = 2;
  std::vector<cplx> c;
  cplx operator[](const Point& t) const { return c[lattice(n).index(t)]; }
};

// Shape assignment: for every subsimplex the values of (z, z', z'').
struct SimplexShapes {
  int n = 2;
  std::vector<std::array<cplx, 3>> z;
  cplx value(const Point& e, const Point& s) const { return z[lattice(n - 2).index(s)][edge_role(e)]; }
};

inline double ptolemy_residual(const SimplexPtolemy& c) {
  const Lattice& L = lattice(c.n);
  double worst = 0;
  for (const Point& s : points(c.n - 2)) {
    std::array<cplx, 6> v;
    for (int k = 0; k < 6; ++k) v[k] = c.c[L.index(s + relation_offsets()[k])];
    cplx a = v[0] * v[1], b = v[2] * v[3], d = v[4] * v[5];
    double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(d)});
    worst = std::max(worst, std::abs(a + b - d) / scale);
  }
  return worst;
}

inline double shape_relation_residual(const SimplexShapes& z) {
  double worst = 0;
  for (const auto& s : z.z) {
    worst = std::max(worst, std::abs(s[1] - 1.0 / (1.0 - s[0])) / std::max(1.0, std::abs(s[1])));
    worst = std::max(worst, std::abs(s[2] - (1.0 - 1.0 / s[0])) / std::max(1.0, std::abs(s[2])));
  }
  return worst;
}

inline SimplexShapes shapes_from_z(int n, const std::vector<cplx>& z) {
  SimplexShapes out{n, {}};
  for (cplx v : z) out.z.push_back({v, role_value(v, 1), role_value(v, 2)});
  return out;
}

inline std::vector<cplx> z_of(const SimplexShapes& z) {
  std::vector<cplx> out;
  for (const auto& s : z.z) out.push_back(s[0]);
  return out;
}

// (sigma^* c)_t = det(I_{sigma, sigma(t)}) c_{sigma(t)}
inline SimplexPtolemy pullback_ptolemy(const Perm4& sigma, const SimplexPtolemy& c) {
  const Lattice& L = lattice(c.n);
  SimplexPtolemy out{c.n, std::vector<cplx>(L.size())};
  for (int k = 0; k < L.size(); ++k)
    out.c[k] = double(identification_sign(sigma, L[k])) * c.c[L.index(act(sigma, L[k]))];
  return out;
}

// (sigma^* z)^e_s = (z^{sigma(e)}_{sigma(s)})^{sgn sigma}
inline SimplexShapes pullback_shape(const Perm4& sigma, const SimplexShapes& z) {
  const Lattice& S = lattice(z.n - 2);
  SimplexShapes out{z.n, std::vector<std::array<cplx, 3>>(S.size())};
  for (int k = 0; k < S.size(); ++k)
    for (int role = 0; role < 3; ++role) {
      Point e = edges()[2 * role];
      cplx v = z.value(act(sigma, e), act(sigma, S[k]));
      out.z[k][role] = sigma.sign() > 0 ? v : 1.0 / v;
    }
  return out;
}

// The monomial map from Ptolemy coordinates to shapes.
inline SimplexShapes mu(const SimplexPtolemy& c) {
  SimplexShapes out{c.n, {}};
  for (const Point& s : points(c.n - 2)) {
    auto C = [&](const char* e) {
      Point p = s;
      for (int k = 0; k < 4; ++k) p[k] += e[k] - '0';
      return c[p];
    };
    out.z.push_back({C("1001") * C("0110") / (C("1010") * C("0101")),
                     C("0101") * C("1010") / (C("1100") * C("0011")),
                     -C("1100") * C("0011") / (C("1001") * C("0110"))});
  }
  return out;
}

// Per-tetrahedron Ptolemy assignment from values on the classes.
inline SimplexPtolemy local_ptolemy(const PtolemyIndex& P, int tet, const std::vector<cplx>& c) {
  const Lattice& L = lattice(P.Q.n);
  SimplexPtolemy out{P.Q.n, std::vector<cplx>(L.size(), 1.0)};
  for (int k = 0; k < L.size(); ++k) {
    auto [v, sg] = P.lookup(tet, L[k]);
    if (v >= 0) out.c[k] = double(sg) * c[v];
  }
  return out;
}

// mu applied tetrahedron by tetrahedron; result is the global z vector.
inline std::vector<cplx> mu_global(const Triangulation& T, const PtolemyIndex& P, const std::vector<cplx>& c) {
  std::vector<cplx> z;
  for (int tet = 0; tet < T.size(); ++tet) {
    auto local = z_of(mu(local_ptolemy(P, tet, c)));
    z.insert(z.end(), local.begin(), local.end());
  }
  return z;
}

// Exponent matrix of mu in the oriented basis (zeta then zeta' per column)
// against Ptolemy variables, with the constant sign of each monomial.
struct MuExponents {
  IntMatrix exps;  // 2r x p
  std::vector<int> sign;
};

inline MuExponents mu_exponent_matrix(const Triangulation& T, int n) {
  PtolemyIndex P = ptolemy_index(T, n);
  const Lattice& S = lattice(n - 2);
  const int nsub = S.size(), r = T.size() * nsub;
  MuExponents m{IntMatrix(2 * r, P.num_vars()), std::vector<int>(2 * r, 1)};
  // numerator, denominator and constant of z, z', z''
  struct Mono {
    const char *a, *b, *c, *d;
    int k;
  };
  static const std::array<Mono, 3> mono{{{"1001", "0110", "1010", "0101", 1},
                                         {"0101", "1010", "1100", "0011", 1},
                                         {"1100", "0011", "1001", "0110", -1}}};
  for (int tet = 0; tet < T.size(); ++tet)
    for (int si = 0; si < nsub; ++si)
      for (int basis = 0; basis < 2; ++basis) {
        int native = (T.eps[tet] < 0 && basis == 1) ? 2 : basis;
        int row = basis * r + tet * nsub + si;
        const Mono& mo = mono[native];
        int sign = mo.k;
        const char* labels[4] = {mo.a, mo.b, mo.c, mo.d};
        for (int k = 0; k < 4; ++k) {
          Point t = S[si];
          for (int q = 0; q < 4; ++q) t[q] += labels[k][q] - '0';
          auto [v, sg] = P.lookup(tet, t);
          sign *= sg;
          m.exps(row, v) += (k < 2 ? 1 : -1) * T.eps[tet];
        }
        m.sign[row] = sign;
      }
  return m;
}

// ---------------------------------------------------------------------------
// Decorations of a single simplex.

using CMatrix = Eigen::MatrixXcd;

inline SimplexPtolemy decoration_to_ptolemy(const std::array<CMatrix, 4>& g, int n) {
  for (const auto& m : g)
    if (m.rows() != n || m.cols() != n) throw validation_error("decoration matrices must be n x n");
  const Lattice& L = lattice(n);
  SimplexPtolemy out{n, std::vector<cplx>(L.size())};
  for (int k = 0; k < L.size(); ++k) {
    const Point& t = L[k];
    CMatrix M(n, n);
    int col = 0;
    for (int v = 0; v < 4; ++v)
      for (int j = 0; j < t[v]; ++j) M.col(col++) = g[v].col(j);
    cplx det = M.determinant();
    double norms = 1.0;
    for (int j = 0; j < n; ++j) norms *= M.col(j).norm();
    if (std::abs(det) < 1e-8 * norms) throw validation_error("non-generic decoration at " + point_label(t));
    out.c[k] = det;
  }
  return out;
}

// Random matrices with entries in the unit disc, scaled to determinant 1.
template <class Rng>
std::array<CMatrix, 4> random_decoration(int n, Rng& rng) {
  std::uniform_real_distribution<double> radius(0.0, 1.0), angle(0.0, 2 * M_PI);
  std::array<CMatrix, 4> g;
  for (auto& m : g) {
    m = CMatrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = std::polar(std::sqrt(radius(rng)), angle(rng));
    cplx d = m.determinant();
    m /= std::pow(d, 1.0 / n);
  }
  return g;
}

// ---------------------------------------------------------------------------
// X, diamond and ratio coordinates.

inline int zero_coordinate(const Point& t) {
  if (classify(t) != PointKind::face) throw validation_error(point_label(t) + " is not a face point");
  for (int v = 0; v < 4; ++v)
    if (t[v] == 0) return v;
  return -1;
}

inline cplx x_from_ptolemy(const SimplexPtolemy& c, const Point& t) {
  int v3 = zero_coordinate(t);
  std::array<int, 3> face{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != v3) face[k++] = v;
  cplx x = 1.0;
  do {
    cplx val = c[t + unit(face[0]) - unit(face[1])];
    x = rotation_sign(face) > 0 ? x * val : x / val;
  } while (std::next_permutation(face.begin(), face.end()));
  return x;
}

inline cplx x_from_shapes(const SimplexShapes& z, const Point& t) {
  zero_coordinate(t);
  cplx x = -1.0;
  for (const Point& e : edges()) {
    Point s = t - e;
    if (non_negative(s)) x *= z.value(e, s);
  }
  return x;
}

inline Point vertex_combination(int a, int v0, int b, int v1, int c = 0, int v2 = 0) {
  return a * unit(v0) + b * unit(v1) + c * unit(v2);
}

// d^{v0v1v2}_alpha = -eps_<(v0v1v2) c_{a+2v0} c_{a+v1+v2} / (c_{a+v0+v1} c_{a+v0+v2})
inline cplx diamond(const SimplexPtolemy& c, const std::array<int, 3>& tr, const Point& alpha) {
  if (point_sum(alpha) != c.n - 2 || !non_negative(alpha) || alpha[missing_vertex(tr)] != 0)
    throw validation_error("diamond index " + point_label(alpha) + " not on the face");
  Point e0 = unit(tr[0]), e1 = unit(tr[1]), e2 = unit(tr[2]);
  return -double(order_sign(tr)) * c[alpha + 2 * e0] * c[alpha + e1 + e2] / (c[alpha + e0 + e1] * c[alpha + e0 + e2]);
}

// d_{k,i} = d_{(i-1)v0 + (n-i-k)v1 + (k-1)v2}
inline cplx diamond_ki(const SimplexPtolemy& c, const std::array<int, 3>& tr, int k, int i) {
  return diamond(c, tr, vertex_combination(i - 1, tr[0], c.n - i - k, tr[1], k - 1, tr[2]));
}

// e^{v0v1}_{k v0 + l v1} = (-1)^l c_{k v0 + (l+1) v1} / c_{(k+1) v0 + l v1}, k + l = n - 1
inline cplx ratio(const SimplexPtolemy& c, int v0, int v1, int k) {
  int l = c.n - 1 - k;
  if (k < 0 || l < 0 || v0 == v1) throw validation_error("ratio index out of range");
  double sg = (l % 2) ? -1.0 : 1.0;
  return sg * c[vertex_combination(k, v0, l + 1, v1)] / c[vertex_combination(k + 1, v0, l, v1)];
}

}  // namespace ngl
