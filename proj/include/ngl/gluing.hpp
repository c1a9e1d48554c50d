#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ngl/core.hpp"
#include "ngl/intmat.hpp"
#include "ngl/lattice.hpp"
#include "ngl/triangulation.hpp"

namespace ngl {

// Shape parameter of subsimplex `sub` (index into points(n - 2)) of a
// tetrahedron; role 0, 1, 2 stands for z, z', z''.
struct ShapeVar {
  int tet = 0;
  int sub = 0;
  int role = 0;
  friend auto operator<=>(const ShapeVar&, const ShapeVar&) = default;
};

using Exponents = std::map<ShapeVar, std::int64_t>;

inline void add_exponent(Exponents& e, const ShapeVar& v, std::int64_t k) {
  auto& x = e[v];
  x = checked_add(x, k);
  if (x == 0) e.erase(v);
}

// One occurrence z^e_s (raised to `power`) as written in the notation.
struct ShapeFactor {
  int tet = 0;
  Point s{};
  Point e{};
  int power = 1;
};

struct GluingEquation {
  int point_class = 0;
  TetPoint rep;
  PointKind kind = PointKind::edge;
  std::vector<ShapeFactor> factors;
  Exponents exps;
};

inline int num_subsimplices(int n) { return static_cast<int>(binomial(n + 1, 3)); }

inline std::vector<GluingEquation> generate_gluing(const Triangulation& T, int n) {
  Quotient Q = quotient(T, n);
  Lattice S(n - 2);
  std::vector<GluingEquation> out;
  for (int c = 0; c < Q.num_classes(); ++c) {
    const auto& cls = Q.classes[c];
    GluingEquation eq;
    eq.point_class = c;
    eq.rep = cls.reps.front();
    eq.kind = cls.kind;
    for (const auto& [tet, t] : cls.reps) {
      for (const Point& e : edges()) {
        Point s = t - e;
        if (!non_negative(s)) continue;
        eq.factors.push_back({tet, s, e, T.eps[tet]});
        add_exponent(eq.exps, {tet, S.index(s), edge_role(e)}, T.eps[tet]);
      }
    }
    out.push_back(std::move(eq));
  }
  return out;
}

// Total exponent carried by one shape role.
inline std::int64_t sum_role(const Exponents& e, int role) {
  std::int64_t s = 0;
  for (const auto& [v, k] : e)
    if (v.role == role) s = checked_add(s, k);
  return s;
}

inline std::string factor_text(const ShapeFactor& f) {
  std::string base = "z_{" + point_label(f.s) + "," + std::to_string(f.tet) + "}^{" +
                     point_label(f.e) + "}";
  if (f.power == 1) return base;
  return "(" + base + ")^{" + std::to_string(f.power) + "}";
}

inline std::string equation_text(const GluingEquation& eq) {
  std::string s;
  for (std::size_t k = 0; k < eq.factors.size(); ++k)
    s += (k ? " * " : "") + factor_text(eq.factors[k]);
  return s + " = 1";
}

// ---------------------------------------------------------------------------
// Shape values. A shape vector stores z = z^{1100} per (tet, sub), column
// index tet * num_subsimplices(n) + sub.

inline cplx role_value(cplx z, int role) {
  switch (role) {
    case 0: return z;
    case 1: return 1.0 / (1.0 - z);
    default: return 1.0 - 1.0 / z;
  }
}

inline void check_nondegenerate(const std::vector<cplx>& z, double tol) {
  for (std::size_t k = 0; k < z.size(); ++k)
    if (std::abs(z[k]) < tol || std::abs(z[k] - 1.0) < tol)
      throw numerical_error("shape coordinate " + std::to_string(k) + " is degenerate");
}

inline cplx evaluate(const Exponents& e, const std::vector<cplx>& z, int nsub) {
  cplx p = 1.0;
  for (const auto& [v, k] : e) p *= std::pow(role_value(z[v.tet * nsub + v.sub], v.role), double(k));
  return p;
}

struct Residual {
  double max_residual = 0;
  int worst_row = -1;
  bool pass = true;
};

inline Residual verify_solution(const std::vector<GluingEquation>& eqs, const std::vector<cplx>& z, int n,
                                double tol = default_tolerance()) {
  check_nondegenerate(z, tol);
  Residual r;
  const int nsub = num_subsimplices(n);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    double d = std::abs(evaluate(eqs[i].exps, z, nsub) - 1.0);
    if (d > r.max_residual) r.max_residual = d, r.worst_row = static_cast<int>(i);
  }
  r.pass = r.max_residual <= tol;
  return r;
}

// Oriented shape coordinates: z for positively oriented tetrahedra and 1/z
// for negative ones. The map is an involution.
inline std::vector<cplx> orient_shapes(const Triangulation& T, const std::vector<cplx>& z, int n) {
  const int nsub = num_subsimplices(n);
  std::vector<cplx> out = z;
  for (int i = 0; i < T.size(); ++i)
    if (T.eps[i] < 0)
      for (int s = 0; s < nsub; ++s) out[i * nsub + s] = 1.0 / out[i * nsub + s];
  return out;
}

// ---------------------------------------------------------------------------
// Neumann-Zagier form in oriented coordinates:
//   prod zeta^A (1 - zeta)^B = sign.
// For a negative tetrahedron zeta = 1/z, zeta' = 1/z'' and zeta'' = 1/z'.

struct NZMatrices {
  IntMatrix A, B;
  std::vector<int> sign;
  int rows() const { return A.rows(); }
  int cols() const { return A.cols(); }
  IntMatrix AB() const { return hstack(A, B); }
};

inline NZMatrices to_nz(const std::vector<Exponents>& rows, const std::vector<int>& rhs, const Triangulation& T,
                        int n) {
  const int nsub = num_subsimplices(n);
  const int r = T.size() * nsub;
  NZMatrices m{IntMatrix(static_cast<int>(rows.size()), r), IntMatrix(static_cast<int>(rows.size()), r), {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::int64_t> p(r, 0), q(r, 0), c(r, 0);
    std::int64_t csum = 0;
    for (const auto& [v, k] : rows[i]) {
      int role = v.role;
      std::int64_t x = k;
      if (T.eps[v.tet] < 0) {
        x = -x;
        if (role) role = 3 - role;
      }
      int col = v.tet * nsub + v.sub;
      auto& dst = role == 0 ? p : role == 1 ? q : c;
      dst[col] = checked_add(dst[col], x);
      if (role == 2) csum = checked_add(csum, x);
    }
    for (int j = 0; j < r; ++j) {
      m.A(static_cast<int>(i), j) = checked_add(p[j], -c[j]);
      m.B(static_cast<int>(i), j) = checked_add(c[j], -q[j]);
    }
    int s = rhs.empty() ? 1 : rhs[i];
    m.sign.push_back((csum % 2 == 0) ? s : -s);
  }
  return m;
}

inline NZMatrices to_nz(const std::vector<GluingEquation>& eqs, const Triangulation& T, int n) {
  std::vector<Exponents> rows;
  for (const auto& e : eqs) rows.push_back(e.exps);
  return to_nz(rows, {}, T, n);
}

inline NZMatrices gluing_nz(const Triangulation& T, int n) { return to_nz(generate_gluing(T, n), T, n); }

// v J w^T with J = [[0, I], [-I, 0]].
inline std::int64_t symplectic_pairing(const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& w) {
  if (v.size() != w.size() || v.size() % 2) throw validation_error("symplectic pairing needs equal even lengths");
  const std::size_t r = v.size() / 2;
  std::int64_t s = 0;
  for (std::size_t k = 0; k < r; ++k)
    s = checked_add(s, checked_add(checked_mul(v[k], w[r + k]), -checked_mul(v[r + k], w[k])));
  return s;
}

// Largest |<row_i, row_j>| over all pairs.
inline std::int64_t max_pairing(const IntMatrix& P) {
  std::int64_t worst = 0;
  for (int i = 0; i < P.rows(); ++i)
    for (int j = i + 1; j < P.rows(); ++j) worst = std::max(worst, std::abs(symplectic_pairing(P.row(i), P.row(j))));
  return worst;
}

inline cplx evaluate_nz_row(const NZMatrices& m, int i, const std::vector<cplx>& zeta) {
  cplx p = 1.0;
  for (int j = 0; j < m.cols(); ++j) {
    if (m.A(i, j)) p *= std::pow(zeta[j], double(m.A(i, j)));
    if (m.B(i, j)) p *= std::pow(1.0 - zeta[j], double(m.B(i, j)));
  }
  return p;
}

// ---------------------------------------------------------------------------
// beta : L_n -> J_n and its dual, in the oriented basis
// {(D, s, 1100)} then {(D, s, 0110)}.

struct BetaMatrices {
  IntMatrix beta;       // 2r x p
  IntMatrix beta_star;  // p x 2r
};

inline BetaMatrices beta_matrices(const Triangulation& T, int n) {
  Quotient Q = quotient(T, n);
  Lattice S(n - 2);
  const int nsub = S.size();
  const int r = T.size() * nsub;
  const int p = Q.num_classes();
  BetaMatrices b{IntMatrix(2 * r, p), IntMatrix(p, 2 * r)};
  auto oriented = [&](int tet, int role) { return (T.eps[tet] < 0 && role) ? 3 - role : role; };
  for (int c = 0; c < p; ++c) {
    for (const auto& [tet, t] : Q.classes[c].reps) {
      for (const Point& e : edges()) {
        Point s = t - e;
        if (!non_negative(s)) continue;
        int col = tet * nsub + S.index(s);
        // 1010 = -1100 - 0110 in J
        switch (oriented(tet, edge_role(e))) {
          case 0: b.beta(col, c) += 1; break;
          case 1: b.beta(r + col, c) += 1; break;
          default: b.beta(col, c) -= 1, b.beta(r + col, c) -= 1;
        }
      }
    }
  }
  // images of (D, s, 1100), (D, s, 0110), (D, s, 1010)
  static const std::array<std::array<std::pair<Point, int>, 4>, 3> star{{
      {{{Point{1, 0, 0, 1}, 1}, {Point{0, 1, 1, 0}, 1}, {Point{1, 0, 1, 0}, -1}, {Point{0, 1, 0, 1}, -1}}},
      {{{Point{1, 0, 1, 0}, 1}, {Point{0, 1, 0, 1}, 1}, {Point{1, 1, 0, 0}, -1}, {Point{0, 0, 1, 1}, -1}}},
      {{{Point{1, 1, 0, 0}, 1}, {Point{0, 0, 1, 1}, 1}, {Point{1, 0, 0, 1}, -1}, {Point{0, 1, 1, 0}, -1}}},
  }};
  for (int tet = 0; tet < T.size(); ++tet) {
    for (int si = 0; si < nsub; ++si) {
      int col = tet * nsub + si;
      for (int basis = 0; basis < 2; ++basis) {
        int native = oriented(tet, basis);
        for (const auto& [e, sg] : star[native]) {
          int cls = Q.find(tet, S[si] + e);
          b.beta_star(cls, basis * r + col) += sg * T.eps[tet];
        }
      }
    }
  }
  return b;
}

}  // namespace ngl
