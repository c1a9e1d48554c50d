#pragma once

#include <string>
#include <vector>

#include "ngl/gluing.hpp"
#include "ngl/triangulation.hpp"

namespace ngl {

// One unexpanded factor of a cusp equation: a shape z^e_s (is_x false) or
// an X-coordinate X_t (is_x true), raised to `power`.
struct CuspToken {
  bool is_x = false;
  int tet = 0;
  Point at{};  // s for a shape, t for an X-coordinate
  Point e{};   // edge of a shape factor
  int power = 1;
};

// prod(tokens) = 1, or equivalently prod(shapes^exps) = sign once every
// X-coordinate is expanded as -prod z^e_s and the middle-edge signs are
// collected.
struct CuspEquation {
  std::string curve;
  int level = 1;
  std::vector<CuspToken> tokens;
  Exponents exps;
  int sign = 1;
};

inline void expand_x(Exponents& exps, int tet, const Point& t, int power) {
  for (const Point& e : edges()) {
    Point s = t - e;
    if (non_negative(s)) add_exponent(exps, {tet, lattice(point_sum(s)).index(s), edge_role(e)}, power);
  }
}

// Factors contributed by one step of a curve at level l.
inline std::vector<CuspToken> step_tokens(const CurveStep& st, int n, int l) {
  const auto& [v0, v1, v2] = st.triple;
  const int rot = rotation_sign(st.triple);
  std::vector<CuspToken> out;
  if (st.kind == StepKind::short_edge) {
    out.push_back({false, st.tet, (l - 1) * unit(v0) + (n - 1 - l) * unit(v1), unit(v0) + unit(v1), -rot * st.dir});
  } else {
    for (int k = 1; k <= n - 1 - l; ++k)
      out.push_back({true, st.tet, k * unit(v2) + l * unit(v0) + (n - k - l) * unit(v1), {}, rot * st.dir});
  }
  return out;
}

inline std::vector<CuspEquation> generate_cusp(const Triangulation& T, int n, const PeripheralCurve& curve) {
  if (n < 2) throw validation_error("n must be at least 2");
  validate_curve(T, curve);
  std::vector<CuspEquation> out;
  for (int l = 1; l < n; ++l) {
    CuspEquation eq;
    eq.curve = curve.name;
    eq.level = l;
    for (const auto& st : curve.steps) {
      if (st.kind == StepKind::middle_edge) eq.sign = -eq.sign;
      for (const auto& tok : step_tokens(st, n, l)) {
        if (tok.is_x) {
          if (tok.power % 2) eq.sign = -eq.sign;
          expand_x(eq.exps, tok.tet, tok.at, tok.power);
        } else {
          add_exponent(eq.exps, {tok.tet, lattice(n - 2).index(tok.at), edge_role(tok.e)}, tok.power);
        }
        eq.tokens.push_back(tok);
      }
    }
    out.push_back(std::move(eq));
  }
  return out;
}

inline std::vector<CuspEquation> generate_cusp(const Triangulation& T, int n, const std::string& curve) {
  return generate_cusp(T, n, T.curve(curve));
}

inline std::string token_text(const CuspToken& t) {
  std::string base = t.is_x ? "X_{" + point_label(t.at) + "," + std::to_string(t.tet) + "}"
                            : "z_{" + point_label(t.at) + "," + std::to_string(t.tet) + "}^{" + point_label(t.e) + "}";
  if (t.power == 1) return base;
  return "(" + base + ")^{" + std::to_string(t.power) + "}";
}

inline std::string cusp_text(const CuspEquation& eq) {
  std::string s;
  for (std::size_t k = 0; k < eq.tokens.size(); ++k) s += (k ? " * " : "") + token_text(eq.tokens[k]);
  return s + " = 1";
}

inline Residual verify_cusp(const std::vector<CuspEquation>& eqs, const std::vector<cplx>& z, int n,
                            double tol = default_tolerance()) {
  check_nondegenerate(z, tol);
  Residual r;
  const int nsub = num_subsimplices(n);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    double d = std::abs(evaluate(eqs[i].exps, z, nsub) - double(eqs[i].sign));
    if (d > r.max_residual) r.max_residual = d, r.worst_row = static_cast<int>(i);
  }
  r.pass = r.max_residual <= tol;
  return r;
}

// Cusp rows in Neumann-Zagier form.
inline NZMatrices cusp_nz(const std::vector<CuspEquation>& eqs, const Triangulation& T, int n) {
  std::vector<Exponents> rows;
  std::vector<int> rhs;
  for (const auto& e : eqs) {
    rows.push_back(e.exps);
    rhs.push_back(e.sign);
  }
  return to_nz(rows, rhs, T, n);
}

}  // namespace ngl
