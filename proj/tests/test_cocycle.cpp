#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace ngl;

namespace {

CMatrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  CMatrix m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (cplx v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool near(const CMatrix& a, const CMatrix& b, double tol = 1e-12) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

SimplexShapes random_shapes(int n, std::mt19937_64& rng) {
  return mu(decoration_to_ptolemy(random_decoration(n, rng), n));
}

}  // namespace

TEST(Cocycle, ElementaryBuilders) {
  EXPECT_TRUE(near(q_matrix({1.0, 2.0}), mat({{0, 2}, {1, 0}})));
  EXPECT_TRUE(near(d_matrix({1.0, 2.0, 3.0}), mat({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}})));
  EXPECT_TRUE(near(H(3, 1, 5.0), d_matrix({5.0, 1.0, 1.0})));
  EXPECT_TRUE(near(H(3, 2, 5.0), d_matrix({5.0, 5.0, 1.0})));
  EXPECT_TRUE(near(x_elem(3, 2, 4.0), mat({{1, 0, 0}, {0, 1, 4}, {0, 0, 1}})));
  for (int n = 2; n <= 6; ++n) EXPECT_TRUE(near(q1(n) * q1(n), CMatrix::Identity(n, n)));
  EXPECT_TRUE(near(x_elem(2, 1, 1.0) * d_pm1(2), mat({{-1, 1}, {0, 1}})));
  EXPECT_TRUE(near(d_pm1(3), d_matrix({1.0, -1.0, 1.0})));
  EXPECT_TRUE(near(d_pm1_literal(2), d_matrix({cplx(0, -1), 1.0})));
}

TEST(Cocycle, ElementaryRelations) {
  const cplx s(0.3, 1.2), t(-0.7, 0.4), x(2.0, -1.0);
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i < n; ++i) {
      EXPECT_TRUE(near(x_elem(n, i, s) * x_elem(n, i, t), x_elem(n, i, s + t)));
      EXPECT_TRUE(near(H(n, i, x) * H(n, i, s), H(n, i, x * s)));
      EXPECT_TRUE(near(H(n, i, x) * x_elem(n, i, t) * H(n, i, x).inverse(), x_elem(n, i, x * t)));
      if (i + 1 < n) {
        CMatrix comm = x_elem(n, i, s) * x_elem(n, i + 1, t) * x_elem(n, i, -s) * x_elem(n, i + 1, -t);
        CMatrix want = CMatrix::Identity(n, n);
        want(i - 1, i + 1) = s * t;
        EXPECT_TRUE(near(comm, want));
      }
    }
}

TEST(Cocycle, ProjectiveEquality) {
  std::mt19937_64 rng(4);
  auto g = random_decoration(3, rng);
  EXPECT_TRUE(pgl_equal(g[0], 2.0 * g[0], 1e-12));
  EXPECT_TRUE(pgl_equal(g[0], cplx(0, 3) * g[0], 1e-12));
  EXPECT_FALSE(pgl_equal(CMatrix::Identity(2, 2), q1(2), 1e-8));
  EXPECT_FALSE(pgl_equal(g[0], g[1], 1e-8));
  EXPECT_THROW(pgl_equal(CMatrix::Zero(2, 2), q1(2), 1e-8), numerical_error);
  EXPECT_TRUE(pgl_equal(pgl_normalize(g[1]), g[1], 1e-12));
  EXPECT_NEAR(pgl_normalize(g[1]).cwiseAbs().maxCoeff(), 1.0, 1e-12);
}

TEST(Cocycle, PermutohedronHasFourteenFaces) {
  auto faces = face_cycles();
  ASSERT_EQ(faces.size(), 14u);
  std::map<std::pair<Triple, Triple>, int> used;
  for (const auto& f : faces) {
    Triple v = f.start;
    for (auto k : f.kinds) {
      Triple w = edge_end(v, k);
      ++used[{std::min(v, w), std::max(v, w)}];
      v = w;
    }
    EXPECT_EQ(v, f.start) << f.name;
  }
  // 36 edges, each on the boundary of exactly two faces
  EXPECT_EQ(used.size(), 36u);
  for (const auto& [e, count] : used) EXPECT_EQ(count, 2);
  EXPECT_EQ(all_triples().size(), 24u);
}

TEST(Cocycle, FormulaMatchesFlagOracle) {
  std::mt19937_64 rng(77);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      auto g = random_decoration(n, rng);
      auto z = mu(decoration_to_ptolemy(g, n));
      auto P = pgl_cocycle_from_shapes(z);
      auto O = cocycle_from_decoration(g);
      for (const auto& tr : all_triples())
        for (auto k : {EdgeKind::long_edge, EdgeKind::middle_edge, EdgeKind::short_edge})
          EXPECT_TRUE(pgl_equal(P.label(tr, k), O.label(tr, k), 1e-8)) << "n=" << n;
    }
}

TEST(Cocycle, FacesOfRandomCocyclesCloseUp) {
  std::mt19937_64 rng(78);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      auto P = pgl_cocycle_from_shapes(random_shapes(n, rng));
      EXPECT_TRUE(cocycle_condition(P, 1e-8)) << "n=" << n;
      for (const auto& f : face_cycles())
        EXPECT_TRUE(pgl_equal(face_product(P, f), CMatrix::Identity(n, n), 1e-8)) << f.name;
    }
}

TEST(Cocycle, LabelsHaveNormalForm) {
  std::mt19937_64 rng(79);
  for (int n = 2; n <= 5; ++n) {
    auto z = random_shapes(n, rng);
    auto P = pgl_cocycle_from_shapes(z);
    for (const auto& tr : all_triples()) {
      EXPECT_TRUE(near(P.alpha.at(tr), q1(n)));
      const CMatrix& b = P.beta.at(tr);
      const CMatrix& g = P.gamma.at(tr);
      for (int i = 0; i < n; ++i) {
        EXPECT_LT(std::abs(b(i, n - 1) - 1.0), 1e-12);
        for (int j = 0; j < i; ++j) EXPECT_EQ(b(i, j), cplx(0));
        for (int j = 0; j < n; ++j) {
          if (i != j) EXPECT_EQ(g(i, j), cplx(0));
        }
      }
    }
  }
}

TEST(Cocycle, DiagonalEntriesOfMiddleLabels) {
  std::mt19937_64 rng(80);
  for (int n = 2; n <= 5; ++n) {
    auto z = random_shapes(n, rng);
    auto P = pgl_cocycle_from_shapes(z);
    for (const auto& tr : all_triples()) {
      const double rot = rotation_sign(tr);
      for (int l = 1; l <= n; ++l) {
        cplx want = (n - l) % 2 ? -1.0 : 1.0;
        for (int i = l; i <= n - 2; ++i)
          for (int k = 1; k <= n - 1 - i; ++k) want *= std::pow(x_ki(z, tr, k, i), rot);
        EXPECT_LT(std::abs(P.beta.at(tr)(l - 1, l - 1) - want), 1e-9 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST(Cocycle, ReferenceLowRankExamples) {
  std::mt19937_64 rng(81);
  const Triple t012{0, 1, 2};
  auto z2 = random_shapes(2, rng);
  auto P2 = pgl_cocycle_from_shapes(z2);
  EXPECT_TRUE(near(P2.beta.at(t012), mat({{-1, 1}, {0, 1}})));
  EXPECT_TRUE(near(P2.gamma.at(t012), d_matrix({1.0 / z_i(z2, t012, 1), 1.0})));

  auto z3 = random_shapes(3, rng);
  auto P3 = pgl_cocycle_from_shapes(z3);
  const cplx X = x_ki(z3, t012, 1, 1);
  CMatrix factored = x_elem(3, 1, 1.0) * x_elem(3, 2, 1.0) * H(3, 1, X) * x_elem(3, 1, 1.0) * d_pm1(3);
  CMatrix corrected = mat({{X, -X - 1.0, 1}, {0, -1, 1}, {0, 0, 1}});
  CMatrix displayed = mat({{X, -X, 1}, {0, -1, 1}, {0, 0, 1}});
  EXPECT_TRUE(near(P3.beta.at(t012), factored, 1e-10));
  EXPECT_TRUE(near(factored, corrected, 1e-10));
  EXPECT_FALSE(pgl_equal(P3.beta.at(t012), displayed, 1e-6));

  // Substituting the displayed matrix breaks the cocycle condition.
  auto broken = P3;
  broken.beta[t012] = displayed;
  EXPECT_FALSE(cocycle_condition(broken, 1e-6));
}

TEST(Cocycle, LiteralDiagonalSignMatrixDisagreesWithOracle) {
  std::mt19937_64 rng(82);
  for (int n = 2; n <= 4; ++n) {
    auto g = random_decoration(n, rng);
    auto P = pgl_cocycle_from_shapes(mu(decoration_to_ptolemy(g, n)));
    auto O = cocycle_from_decoration(g);
    const Triple tr{0, 1, 2};
    CMatrix literal = P.beta.at(tr) * d_pm1(n).inverse() * d_pm1_literal(n);
    EXPECT_FALSE(pgl_equal(literal, O.beta.at(tr), 1e-6)) << "n=" << n;
    EXPECT_TRUE(pgl_equal(P.beta.at(tr), O.beta.at(tr), 1e-8)) << "n=" << n;
  }
}

TEST(Cocycle, SLCocycleIsCoboundaryOfPGLCocycle) {
  std::mt19937_64 rng(83);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      auto c = decoration_to_ptolemy(random_decoration(n, rng), n);
      auto S = sl_cocycle_from_ptolemy(c);
      auto P = pgl_cocycle_from_shapes(mu(c));
      EXPECT_TRUE(cocycle_condition(S, 1e-8));
      auto moved = coboundary_action(S, [&](const Triple& tr) { return diamond_cochain(c, tr); });
      for (const auto& tr : all_triples()) {
        EXPECT_LT(std::abs(S.beta.at(tr).determinant() - 1.0), 1e-10);
        for (auto k : {EdgeKind::long_edge, EdgeKind::middle_edge, EdgeKind::short_edge})
          EXPECT_TRUE(pgl_equal(moved.label(tr, k), P.label(tr, k), 1e-8)) << "n=" << n;
      }
    }
}

TEST(Cocycle, RejectsInvalidShapes) {
  EXPECT_THROW(pgl_cocycle_from_shapes(SimplexShapes{2, {{cplx(2.0), cplx(2.0), cplx(2.0)}}}), validation_error);
}

TEST(Holonomy, PeripheralHolonomyIsUnipotentAtGeometricSolution) {
  auto T = fixture::fig8();
  for (int n = 2; n <= 4; ++n) {
    auto z = geometric_solution(T, n);
    auto C = pgl_cocycle(T, z, n);
    for (const auto& c : C) EXPECT_TRUE(cocycle_condition(c, 1e-8)) << "n=" << n;
    for (const auto& curve : T.curves) {
      CMatrix h = holonomy(T, C, curve);
      EXPECT_TRUE(is_unipotent(h / std::pow(h.determinant(), 1.0 / n), 1e-6)) << curve.name << " n=" << n;
    }
  }
}

TEST(Holonomy, ReferenceComponentsHaveUnipotentBoundary) {
  auto T = fixture::fig8();
  for (const auto& z : fixture::component_points()) {
    auto C = pgl_cocycle(T, z, 3);
    for (const auto& curve : T.curves) {
      CMatrix h = holonomy(T, C, curve);
      EXPECT_TRUE(is_unipotent(h / std::pow(h.determinant(), 1.0 / 3), 1e-6)) << curve.name;
    }
  }
}

TEST(Holonomy, GluingOnlySolutionsAreNotBoundaryUnipotent) {
  auto T = fixture::fig8();
  SolveConfig cfg;
  cfg.seed = 3;
  cfg.restarts = 20;
  auto rep = newton_solve(gluing_system(T, 3), cfg);
  int off_locus = 0;
  for (const auto& z : rep.solutions) {
    if (verify_cusp(generate_cusp(T, 3, "mu"), z, 3).max_residual < 0.1) continue;
    ++off_locus;
    CMatrix h = holonomy(T, pgl_cocycle(T, z, 3), T.curve("mu"));
    EXPECT_FALSE(is_unipotent(h / std::pow(h.determinant(), 1.0 / 3), 1e-6));
  }
  EXPECT_GT(off_locus, 0);
}

TEST(Holonomy, ReversedPathGivesInverse) {
  auto T = fixture::fig8();
  auto z = geometric_solution(T, 3);
  auto C = pgl_cocycle(T, z, 3);
  PeripheralCurve c = T.curve("lambda");
  CMatrix h = holonomy(T, C, c);
  std::reverse(c.steps.begin(), c.steps.end());
  for (auto& s : c.steps) s.dir = -s.dir;
  CMatrix back = holonomy(T, C, c);
  EXPECT_TRUE(pgl_equal(h * back, CMatrix::Identity(3, 3), 1e-8));
  EXPECT_THROW(holonomy(T, {}, c), validation_error);
}
