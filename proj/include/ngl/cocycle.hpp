#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <vector>

#include "ngl/ptolemy.hpp"
#include "ngl/triangulation.hpp"

namespace ngl {

// ---------------------------------------------------------------------------
// Elementary matrices. Indices i are 1-based as in the notation.

// Counter-diagonal with a[0] in the bottom-left corner and a[n-1] top-right.
inline CMatrix q_matrix(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(n - 1 - j, j) = a[j];
  return m;
}

inline CMatrix d_matrix(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = a[j];
  return m;
}

inline CMatrix q1(int n) { return q_matrix(std::vector<cplx>(n, 1.0)); }

// diag((-1)^{n-k}), k = 1..n.
inline CMatrix d_pm1(int n) {
  std::vector<cplx> a;
  for (int k = 1; k <= n; ++k) a.push_back((n - k) % 2 ? -1.0 : 1.0);
  return d_matrix(a);
}

// diag((-i)^{n-k}), k = 1..n.
inline CMatrix d_pm1_literal(int n) {
  std::vector<cplx> a;
  for (int k = 1; k <= n; ++k) a.push_back(std::pow(cplx(0, -1), n - k));
  return d_matrix(a);
}

inline CMatrix H(int n, int i, cplx x) {
  std::vector<cplx> a(n, 1.0);
  for (int j = 0; j < i; ++j) a[j] = x;
  return d_matrix(a);
}

inline CMatrix x_elem(int n, int i, cplx t) {
  CMatrix m = CMatrix::Identity(n, n);
  m(i - 1, i) = t;
  return m;
}

// A and B agree in PGL(n): A B^{-1} is a scalar multiple of I up to tol,
// measured relative to the scalar.
inline bool pgl_equal(const CMatrix& a, const CMatrix& b, double tol) {
  Eigen::FullPivLU<CMatrix> lu(b);
  if (!lu.isInvertible() || Eigen::FullPivLU<CMatrix>(a).rank() < a.rows())
    throw numerical_error("pgl_equal on a singular matrix");
  CMatrix m = a * lu.inverse();
  int k = 0;
  for (int i = 1; i < m.rows(); ++i)
    if (std::abs(m(i, i)) > std::abs(m(k, k))) k = i;
  cplx lambda = m(k, k);
  CMatrix diff = m - lambda * CMatrix::Identity(m.rows(), m.cols());
  return diff.cwiseAbs().maxCoeff() <= tol * std::abs(lambda);
}

// Representative scaled so the largest entry is 1 in modulus with argument
// in [0, 2 pi / n).
inline CMatrix pgl_normalize(const CMatrix& m) {
  Eigen::Index r = 0, c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  cplx top = m(r, c);
  if (std::abs(top) == 0) throw numerical_error("cannot normalize the zero matrix");
  const double n = double(m.rows());
  double arg = std::fmod(std::arg(top) + 2 * M_PI, 2 * M_PI / n);
  return m * (std::polar(1.0, arg) / top);
}

inline bool is_unipotent(const CMatrix& m, double tol) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  for (int i = 0; i < m.rows(); ++i)
    if (std::abs(es.eigenvalues()(i) - 1.0) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The doubly truncated simplex. Vertices are ordered triples v0v1v2; the
// long, middle and short edges leaving v0v1v2 end at v1v0v2, v0v2v1 and
// v0v1v3.

using Triple = std::array<int, 3>;

enum class EdgeKind { long_edge, middle_edge, short_edge };

inline Triple edge_end(const Triple& tr, EdgeKind k) {
  switch (k) {
    case EdgeKind::long_edge: return {tr[1], tr[0], tr[2]};
    case EdgeKind::middle_edge: return {tr[0], tr[2], tr[1]};
    default: return {tr[0], tr[1], missing_vertex(tr)};
  }
}

inline const std::vector<Triple>& all_triples() {
  static const std::vector<Triple> t = [] {
    std::vector<Triple> out;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          if (a != b && b != c && a != c) out.push_back({a, b, c});
    return out;
  }();
  return t;
}

struct FaceCycle {
  std::string name;
  Triple start;
  std::vector<EdgeKind> kinds;
};

// The 14 faces of the permutohedron: a hexagon near each vertex (short and
// middle edges), a hexagon in each face (long and middle edges) and a square
// around each edge (short and long edges).
inline std::vector<FaceCycle> face_cycles() {
  using E = EdgeKind;
  std::vector<FaceCycle> out;
  for (int v = 0; v < 4; ++v) {
    Triple s{v, (v + 1) % 4, (v + 2) % 4};
    out.push_back({"vertex " + std::to_string(v), s,
                   {E::short_edge, E::middle_edge, E::short_edge, E::middle_edge, E::short_edge, E::middle_edge}});
  }
  for (int f = 0; f < 4; ++f) {
    Triple s{(f + 1) % 4, (f + 2) % 4, (f + 3) % 4};
    out.push_back({"face " + std::to_string(f), s,
                   {E::long_edge, E::middle_edge, E::long_edge, E::middle_edge, E::long_edge, E::middle_edge}});
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      int c = 0;
      while (c == a || c == b) ++c;
      out.push_back({"edge " + std::to_string(a) + std::to_string(b), {a, b, c},
                     {E::short_edge, E::long_edge, E::short_edge, E::long_edge}});
    }
  return out;
}

// Edge labels of one doubly truncated simplex, keyed by initial vertex.
struct SimplexCocycle {
  int n = 2;
  std::map<Triple, CMatrix> alpha, beta, gamma;

  const CMatrix& label(const Triple& tr, EdgeKind k) const {
    const auto& m = k == EdgeKind::long_edge ? alpha : k == EdgeKind::middle_edge ? beta : gamma;
    return m.at(tr);
  }
};

inline CMatrix face_product(const SimplexCocycle& c, const FaceCycle& f) {
  CMatrix p = CMatrix::Identity(c.n, c.n);
  Triple v = f.start;
  for (EdgeKind k : f.kinds) {
    p = p * c.label(v, k);
    v = edge_end(v, k);
  }
  if (v != f.start) throw validation_error("face cycle " + f.name + " does not close");
  return p;
}

// Worst deviation from the cocycle condition: every face product and every
// edge traversed back and forth must be the identity in PGL.
inline bool cocycle_condition(const SimplexCocycle& c, double tol) {
  const CMatrix I = CMatrix::Identity(c.n, c.n);
  for (const auto& f : face_cycles())
    if (!pgl_equal(face_product(c, f), I, tol)) return false;
  for (const auto& tr : all_triples())
    for (EdgeKind k : {EdgeKind::long_edge, EdgeKind::middle_edge, EdgeKind::short_edge})
      if (!pgl_equal(c.label(tr, k) * c.label(edge_end(tr, k), k), I, tol)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The natural cocycle from shapes.

// X_{k,i} = X_{k v2 + i v0 + (n-k-i) v1}
inline cplx x_ki(const SimplexShapes& z, const Triple& tr, int k, int i) {
  return x_from_shapes(z, vertex_combination(i, tr[0], z.n - k - i, tr[1], k, tr[2]));
}

// z_i = z^{v0+v1}_{(i-1)v0 + (n-1-i)v1}
inline cplx z_i(const SimplexShapes& z, const Triple& tr, int i) {
  return z.value(unit(tr[0]) + unit(tr[1]), vertex_combination(i - 1, tr[0], z.n - 1 - i, tr[1]));
}

inline CMatrix middle_label(const SimplexShapes& z, const Triple& tr) {
  const int n = z.n;
  const double rot = rotation_sign(tr);
  CMatrix m = CMatrix::Identity(n, n);
  for (int k = 1; k <= n - 1; ++k) {
    for (int i = 1; i <= n - k; ++i) m = m * x_elem(n, i, 1.0);
    for (int i = 1; i <= n - k - 1; ++i) m = m * H(n, i, std::pow(x_ki(z, tr, k, i), rot));
  }
  return m * d_pm1(n);
}

inline CMatrix short_label(const SimplexShapes& z, const Triple& tr) {
  const int n = z.n;
  const double rot = rotation_sign(tr);
  CMatrix m = CMatrix::Identity(n, n);
  for (int i = 1; i <= n - 1; ++i) m = m * H(n, i, std::pow(z_i(z, tr, i), -rot));
  return m;
}

inline SimplexCocycle pgl_cocycle_from_shapes(const SimplexShapes& z) {
  if (shape_relation_residual(z) > 1e-8) throw validation_error("shape relations violated");
  SimplexCocycle c{z.n, {}, {}, {}};
  for (const auto& tr : all_triples()) {
    c.alpha[tr] = q1(z.n);
    c.beta[tr] = middle_label(z, tr);
    c.gamma[tr] = short_label(z, tr);
    if (std::abs(c.beta[tr].determinant()) < 1e-14 || std::abs(c.gamma[tr].determinant()) < 1e-14)
      throw numerical_error("singular cocycle label");
  }
  return c;
}

// ---------------------------------------------------------------------------
// The natural (SL(n), N)-cocycle from Ptolemy coordinates, and the
// coboundary relating it to the PGL cocycle.

inline SimplexCocycle sl_cocycle_from_ptolemy(const SimplexPtolemy& c) {
  const int n = c.n;
  SimplexCocycle out{n, {}, {}, {}};
  for (const auto& tr : all_triples()) {
    std::vector<cplx> e;
    for (int k = n - 1; k >= 0; --k) e.push_back(ratio(c, tr[0], tr[1], k));
    out.alpha[tr] = q_matrix(e);
    CMatrix b = CMatrix::Identity(n, n);
    for (int k = 1; k <= n - 1; ++k)
      for (int i = 1; i <= n - k; ++i) b = b * x_elem(n, i, diamond_ki(c, tr, k, i));
    out.beta[tr] = b;
    out.gamma[tr] = CMatrix::Identity(n, n);
  }
  return out;
}

// tau^{v0v1v2} = prod_i H_i(d_{1,i})
inline CMatrix diamond_cochain(const SimplexPtolemy& c, const Triple& tr) {
  CMatrix m = CMatrix::Identity(c.n, c.n);
  for (int i = 1; i <= c.n - 1; ++i) m = m * H(c.n, i, diamond_ki(c, tr, 1, i));
  return m;
}

// The coboundary action tau^{-1}(a) L tau^{b} applied edgewise.
template <class Cochain>
SimplexCocycle coboundary_action(const SimplexCocycle& c, Cochain&& tau) {
  SimplexCocycle out{c.n, {}, {}, {}};
  for (const auto& tr : all_triples()) {
    CMatrix ti = tau(tr).inverse();
    out.alpha[tr] = ti * c.alpha.at(tr) * tau(edge_end(tr, EdgeKind::long_edge));
    out.beta[tr] = ti * c.beta.at(tr) * tau(edge_end(tr, EdgeKind::middle_edge));
    out.gamma[tr] = ti * c.gamma.at(tr) * tau(edge_end(tr, EdgeKind::short_edge));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Independent construction from flags: the 0-cochain with
// (g_{v0}B, g_{v1}B, g_{v2}B) = tau (B, q1 B, n_- B), n_- normalized.

inline CMatrix flag_cochain(const CMatrix& g0, const CMatrix& g1, const CMatrix& g2) {
  const int n = static_cast<int>(g0.rows());
  CMatrix tau(n, n);
  for (int k = 1; k <= n; ++k) {
    CMatrix m(n, n + 1);
    m.leftCols(k) = g0.leftCols(k);
    m.rightCols(n + 1 - k) = -g1.leftCols(n + 1 - k);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXcd ker = svd.matrixV().col(n);
    tau.col(k - 1) = g0.leftCols(k) * ker.head(k);
  }
  Eigen::VectorXcd w = tau.fullPivLu().solve(g2.col(0));
  for (int k = 0; k < n; ++k) {
    if (std::abs(w(k)) < 1e-12) throw validation_error("non-generic decoration");
    tau.col(k) *= w(k);
  }
  return tau;
}

inline SimplexCocycle cocycle_from_decoration(const std::array<CMatrix, 4>& g) {
  const int n = static_cast<int>(g[0].rows());
  std::map<Triple, CMatrix> tau;
  for (const auto& tr : all_triples()) tau[tr] = flag_cochain(g[tr[0]], g[tr[1]], g[tr[2]]);
  SimplexCocycle id{n, {}, {}, {}};
  for (const auto& tr : all_triples())
    id.alpha[tr] = id.beta[tr] = id.gamma[tr] = CMatrix::Identity(n, n);
  return coboundary_action(id, [&](const Triple& tr) -> const CMatrix& { return tau.at(tr); });
}

// ---------------------------------------------------------------------------
// Triangulations.

inline std::vector<SimplexCocycle> pgl_cocycle(const Triangulation& T, const std::vector<cplx>& z, int n) {
  const int nsub = num_subsimplices(n);
  if (static_cast<int>(z.size()) != T.size() * nsub) throw validation_error("shape vector has wrong length");
  std::vector<SimplexCocycle> out;
  for (int tet = 0; tet < T.size(); ++tet)
    out.push_back(pgl_cocycle_from_shapes(
        shapes_from_z(n, std::vector<cplx>(z.begin() + tet * nsub, z.begin() + (tet + 1) * nsub))));
  return out;
}

inline EdgeKind edge_kind(StepKind k) {
  return k == StepKind::short_edge ? EdgeKind::short_edge : EdgeKind::middle_edge;
}

// Ordered product of the labels along a closed peripheral path.
inline CMatrix holonomy(const Triangulation& T, const std::vector<SimplexCocycle>& c, const PeripheralCurve& curve) {
  if (c.empty()) throw validation_error("empty cocycle");
  validate_curve(T, curve);
  const int n = c.front().n;
  CMatrix p = CMatrix::Identity(n, n);
  for (const auto& st : curve.steps) {
    const CMatrix& m = c[st.tet].label(st.triple, edge_kind(st.kind));
    p = st.dir > 0 ? CMatrix(p * m) : CMatrix(p * m.inverse());
  }
  return p;
}

}  // namespace ngl
