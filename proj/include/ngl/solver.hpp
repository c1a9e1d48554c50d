#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include "json.hpp"
#include <random>
#include <string>
#include <vector>

#include "ngl/cusp.hpp"
#include "ngl/gluing.hpp"

namespace ngl {

// prod role_value(z)^exps = sign for every row.
struct ShapeSystem {
  int n = 2;
  int nvars = 0;
  std::vector<Exponents> rows;
  std::vector<int> signs;
};

inline ShapeSystem gluing_system(const Triangulation& T, int n, const std::vector<std::string>& curves = {}) {
  ShapeSystem s{n, T.size() * num_subsimplices(n), {}, {}};
  for (const auto& eq : generate_gluing(T, n)) {
    s.rows.push_back(eq.exps);
    s.signs.push_back(1);
  }
  for (const auto& name : curves)
    for (const auto& eq : generate_cusp(T, n, name)) {
      s.rows.push_back(eq.exps);
      s.signs.push_back(eq.sign);
    }
  return s;
}

struct SolveConfig {
  double tol = default_tolerance();
  int max_iter = 100;
  int restarts = 200;
  std::uint64_t seed = 1;
  double min_damping = 1.0 / 1024;
};

struct SolveReport {
  std::vector<std::vector<cplx>> solutions;
  int converged = 0;
  int failed = 0;
};

inline double system_residual(const ShapeSystem& s, const std::vector<cplx>& z) {
  const int nsub = num_subsimplices(s.n);
  double worst = 0;
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    worst = std::max(worst, std::abs(evaluate(s.rows[i], z, nsub) - double(s.signs[i])));
  return worst;
}

inline bool degenerate(const std::vector<cplx>& z, double tol) {
  for (cplx v : z)
    if (std::abs(v) < tol || std::abs(v - 1.0) < tol || !std::isfinite(std::abs(v))) return true;
  return false;
}

// Gauss-Newton with backtracking in u = log z. Residuals are
// prod(...)/sign - 1, so the branch of the logarithm never matters.
inline bool newton_run(const ShapeSystem& s, std::vector<cplx>& z, const SolveConfig& cfg) {
  const int m = static_cast<int>(s.rows.size()), r = s.nvars;
  const int nsub = num_subsimplices(s.n);
  auto residual = [&](const std::vector<cplx>& w, Eigen::VectorXcd& F) {
    F.resize(m);
    for (int i = 0; i < m; ++i) F(i) = evaluate(s.rows[i], w, nsub) / double(s.signs[i]) - 1.0;
  };
  Eigen::VectorXcd F;
  residual(z, F);
  for (int it = 0; it < cfg.max_iter; ++it) {
    double norm = F.norm();
    if (!std::isfinite(norm)) return false;
    if (F.cwiseAbs().maxCoeff() < cfg.tol * 1e-3) return true;
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(m, r);
    for (int i = 0; i < m; ++i) {
      cplx p = F(i) + 1.0;
      for (const auto& [v, k] : s.rows[i]) {
        cplx zj = z[v.tet * nsub + v.sub];
        cplx dlog = v.role == 0 ? cplx(1.0) : v.role == 1 ? zj / (1.0 - zj) : 1.0 / (zj - 1.0);
        J(i, v.tet * nsub + v.sub) += p * double(k) * dlog;
      }
    }
    Eigen::VectorXcd du = J.completeOrthogonalDecomposition().solve(-F);
    double damping = 1.0;
    bool improved = false;
    while (damping >= cfg.min_damping) {
      std::vector<cplx> trial(r);
      for (int j = 0; j < r; ++j) trial[j] = z[j] * std::exp(damping * du(j));
      Eigen::VectorXcd Ft;
      residual(trial, Ft);
      if (std::isfinite(Ft.norm()) && Ft.norm() < norm) {
        z = std::move(trial);
        F = std::move(Ft);
        improved = true;
        break;
      }
      damping /= 2;
    }
    if (!improved) return F.cwiseAbs().maxCoeff() < cfg.tol * 1e-3;
  }
  return F.cwiseAbs().maxCoeff() < cfg.tol * 1e-3;
}

// Uniform in log-radius on 0.1 < |z| < 10, rejecting a disc around 1.
template <class Rng>
cplx random_start(Rng& rng) {
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0)), angle(0, 2 * M_PI);
  while (true) {
    cplx z = std::polar(std::exp(logr(rng)), angle(rng));
    if (std::abs(z - 1.0) > 0.1) return z;
  }
}

inline bool solution_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].real() - b[k].real()) > 1e-6) return a[k].real() < b[k].real();
    if (std::abs(a[k].imag() - b[k].imag()) > 1e-6) return a[k].imag() < b[k].imag();
  }
  return false;
}

inline double max_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Random restarts; restart k draws from its own generator seeded by
// (seed, k), so the result does not depend on scheduling.
inline SolveReport newton_solve(const ShapeSystem& s, const SolveConfig& cfg) {
  if (cfg.tol <= 0) throw validation_error("tolerance must be positive");
  SolveReport rep;
  for (int k = 0; k < cfg.restarts; ++k) {
    std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(k)};
    std::mt19937_64 rng(seq);
    std::vector<cplx> z(s.nvars);
    for (auto& v : z) v = random_start(rng);
    if (!newton_run(s, z, cfg) || degenerate(z, cfg.tol) || system_residual(s, z) > cfg.tol) {
      ++rep.failed;
      continue;
    }
    ++rep.converged;
    bool fresh = std::none_of(rep.solutions.begin(), rep.solutions.end(),
                              [&](const auto& w) { return max_distance(w, z) < 1e-6; });
    if (fresh) rep.solutions.push_back(std::move(z));
  }
  std::sort(rep.solutions.begin(), rep.solutions.end(), solution_less);
  return rep;
}

// ---------------------------------------------------------------------------
// Neumann-Zagier datum in (zeta, zeta'') form:
//   prod zeta^A zeta''^B = (-1)^nu.

struct NZDatum {
  int n = 2;
  IntMatrix A, B;
  std::vector<std::int64_t> nu, f, fpp;
  std::vector<cplx> zeta;
  std::vector<int> kept_rows;
};

enum class RemovalStrategy { keep_first, keep_last };

inline NZDatum nz_reduce(const Triangulation& T, int n, const std::string& meridian,
                         RemovalStrategy strategy = RemovalStrategy::keep_first) {
  NZMatrices g = gluing_nz(T, n);
  NZMatrices c = cusp_nz(generate_cusp(T, n, meridian), T, n);
  IntMatrix M = hstack(g.A + g.B, g.B);
  std::vector<int> order(g.rows());
  for (int i = 0; i < g.rows(); ++i) order[i] = strategy == RemovalStrategy::keep_first ? i : g.rows() - 1 - i;
  std::vector<int> keep = independent_rows(M, order);
  const int r = g.cols();
  if (static_cast<int>(keep.size()) + c.rows() != r)
    throw numerical_error("cannot square the gluing system: " + std::to_string(keep.size()) +
                          " independent rows plus " + std::to_string(c.rows()) + " cusp rows for " +
                          std::to_string(r) + " unknowns");
  NZDatum d;
  d.n = n;
  d.kept_rows = keep;
  d.A = vstack((g.A + g.B).select_rows(keep), c.A + c.B);
  d.B = vstack(g.B.select_rows(keep), c.B);
  if (rank(hstack(d.A, d.B)) != r) throw numerical_error("reduced system is rank deficient");
  auto nu_of = [](const IntMatrix& B, int i, int sign) {
    std::int64_t s = 0;
    for (int j = 0; j < B.cols(); ++j) s = checked_add(s, B(i, j));
    return sign < 0 ? checked_add(s, 1) : s;
  };
  for (int i : keep) d.nu.push_back(nu_of(g.B, i, g.sign[i]));
  for (int i = 0; i < c.rows(); ++i) d.nu.push_back(nu_of(c.B, i, c.sign[i]));
  return d;
}

inline void find_flattening(NZDatum& d) {
  auto x = solve_integer(hstack(d.A, d.B), d.nu);
  if (!x) throw numerical_error("no integer flattening");
  const int r = d.A.cols();
  d.f.assign(x->begin(), x->begin() + r);
  d.fpp.assign(x->begin() + r, x->end());
}

// 1/2 det(A diag(zeta'') + B diag(zeta)^{-1}) zeta^{f''} zeta''^{-f},
// defined up to sign.
inline cplx one_loop(const NZDatum& d) {
  const int r = d.A.cols();
  if (static_cast<int>(d.zeta.size()) != r) throw validation_error("datum has no shape solution");
  if (static_cast<int>(d.f.size()) != r || static_cast<int>(d.fpp.size()) != r)
    throw validation_error("datum has no flattening");
  Eigen::MatrixXcd m(r, r);
  cplx mono = 1.0;
  for (int j = 0; j < r; ++j) {
    cplx z = d.zeta[j];
    if (std::abs(z) < 1e-300) throw numerical_error("singular shape");
    cplx zpp = 1.0 - 1.0 / z;
    for (int i = 0; i < r; ++i) m(i, j) = double(d.A(i, j)) * zpp + double(d.B(i, j)) / z;
    mono *= std::pow(z, double(d.fpp[j])) * std::pow(zpp, -double(d.f[j]));
  }
  return 0.5 * m.determinant() * mono;
}

// max |prod zeta^A zeta''^B - (-1)^nu|
inline double datum_residual(const NZDatum& d) {
  double worst = 0;
  for (int i = 0; i < d.A.rows(); ++i) {
    cplx p = 1.0;
    for (int j = 0; j < d.A.cols(); ++j) {
      cplx z = d.zeta[j];
      p *= std::pow(z, double(d.A(i, j))) * std::pow(1.0 - 1.0 / z, double(d.B(i, j)));
    }
    worst = std::max(worst, std::abs(p - (d.nu[i] % 2 ? -1.0 : 1.0)));
  }
  return worst;
}

inline nlohmann::json matrix_json(const IntMatrix& m) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) j.push_back(m.row(i));
  return j;
}

inline nlohmann::json complex_json(const std::vector<cplx>& z) {
  nlohmann::json j = nlohmann::json::array();
  for (cplx v : z) j.push_back({v.real(), v.imag()});
  return j;
}

inline nlohmann::json to_json(const NZDatum& d) {
  return {{"n", d.n}, {"A", matrix_json(d.A)}, {"B", matrix_json(d.B)}, {"nu", d.nu},
          {"f", d.f},  {"fpp", d.fpp},          {"zeta", complex_json(d.zeta)}};
}

inline NZDatum datum_from_json(const nlohmann::json& j) {
  try {
    NZDatum d;
    d.n = j.at("n").get<int>();
    d.A = IntMatrix::from_rows(j.at("A").get<std::vector<std::vector<std::int64_t>>>());
    d.B = IntMatrix::from_rows(j.at("B").get<std::vector<std::vector<std::int64_t>>>());
    d.nu = j.at("nu").get<std::vector<std::int64_t>>();
    d.f = j.value("f", std::vector<std::int64_t>{});
    d.fpp = j.value("fpp", std::vector<std::int64_t>{});
    for (const auto& p : j.value("zeta", nlohmann::json::array())) d.zeta.emplace_back(p.at(0), p.at(1));
    if (d.A.rows() != d.A.cols() || d.B.rows() != d.A.rows() || d.B.cols() != d.A.cols() ||
        static_cast<int>(d.nu.size()) != d.A.rows())
      throw validation_error("datum matrices must be square and match nu");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed datum: ") + e.what());
  }
}

// A discrete faithful candidate: an n = 2 solution of the gluing and cusp
// equations whose oriented shapes all lie strictly in one half plane, lifted
// to level n by giving every subsimplex the shape of its tetrahedron.
inline std::vector<cplx> geometric_solution(const Triangulation& T, int n, const SolveConfig& cfg = {}) {
  std::vector<std::string> names;
  for (const auto& c : T.curves) names.push_back(c.name);
  ShapeSystem s = gluing_system(T, 2, names);
  for (const auto& z : newton_solve(s, cfg).solutions) {
    auto zeta = orient_shapes(T, z, 2);
    bool lower = std::all_of(zeta.begin(), zeta.end(), [](cplx v) { return v.imag() < -1e-8; });
    if (!lower) continue;
    const int nsub = num_subsimplices(n);
    std::vector<cplx> out;
    for (cplx v : z) out.insert(out.end(), nsub, v);
    return out;
  }
  throw numerical_error("no geometric solution found");
}

}  // namespace ngl
