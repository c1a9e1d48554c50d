#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ngl;

TEST(Perm4, GroupLawsHoldExhaustively) {
  const auto all = Perm4::all();
  ASSERT_EQ(all.size(), 24u);
  const Perm4 id;
  for (const auto& a : all) {
    EXPECT_EQ(a * a.inverse(), id);
    EXPECT_EQ(a.inverse() * a, id);
    for (const auto& b : all) {
      EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
      EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
      for (const auto& c : all) EXPECT_EQ((a * b) * c, a * (b * c));
    }
  }
}

TEST(Perm4, SignIsParity) {
  EXPECT_EQ(Perm4().sign(), 1);
  EXPECT_EQ(Perm4::swap(0, 3).sign(), -1);
  EXPECT_EQ(Perm4({1, 2, 0, 3}).sign(), 1);
  EXPECT_EQ(Perm4({1, 2, 3, 0}).sign(), -1);
}

TEST(Perm4, RejectsNonPermutations) {
  EXPECT_THROW(Perm4({0, 0, 1, 2}), validation_error);
  EXPECT_THROW(Perm4({0, 1, 2, 4}), validation_error);
}

TEST(Perm4, ActionIsAGroupAction) {
  const Point t{3, 1, 0, 2};
  for (const auto& a : Perm4::all()) {
    Point s = act(a, t);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(s[a(i)], t[i]);
    for (const auto& b : Perm4::all()) EXPECT_EQ(act(a * b, t), act(a, act(b, t)));
  }
}

TEST(Perm4, RotationSignSplitsTriplesIntoTwoOrbits) {
  EXPECT_EQ(rotation_sign({0, 1, 2}), 1);
  EXPECT_EQ(rotation_sign({1, 0, 2}), -1);
  EXPECT_EQ(rotation_sign({1, 2, 0}), 1);
  EXPECT_EQ(rotation_sign({0, 2, 3}), 1);
  EXPECT_EQ(order_sign({2, 0, 1}), 1);
  EXPECT_EQ(order_sign({0, 2, 1}), -1);
}

TEST(Triangulation, FigureEightHasOppositeSigns) {
  auto T = fixture::fig8();
  EXPECT_EQ(T.size(), 2);
  EXPECT_EQ(T.eps, (std::vector<int>{1, -1}));
  EXPECT_TRUE(T.closed());
  EXPECT_NO_THROW(T.curve("mu"));
  EXPECT_NO_THROW(T.curve("lambda"));
  EXPECT_THROW(T.curve("nope"), validation_error);
}

TEST(Triangulation, FiveTetrahedraFixtureIsOrientable) {
  auto T = fixture::five_tet();
  EXPECT_EQ(T.size(), 5);
  for (int e : T.eps) EXPECT_TRUE(e == 1 || e == -1);
  for (int i = 0; i < T.size(); ++i)
    for (int f = 0; f < 4; ++f) {
      int j = T.neighbors[i][f];
      int g = T.gluings[i][f](f);
      EXPECT_EQ(T.eps[i] * T.eps[j], -T.gluings[i][f].sign());
      EXPECT_EQ(T.neighbors[j][g], i);
    }
}

TEST(Triangulation, SelfGluedSimplexWithOddPairings) {
  const Perm4 a = Perm4::swap(0, 1), b = Perm4::swap(2, 3);
  auto T = make_triangulation("self", {{0, 0, 0, 0}}, {{a, a, b, b}});
  EXPECT_EQ(T.eps, (std::vector<int>{1}));
}

TEST(Triangulation, SelfGluedSimplexWithEvenPairingIsNonOrientable) {
  const Perm4 a({1, 0, 3, 2}), b = Perm4::swap(2, 3);
  EXPECT_THROW(make_triangulation("bad", {{0, 0, 0, 0}}, {{a, a, b, b}}), validation_error);
}

TEST(Triangulation, RejectsFaceGluedToItself) {
  const Perm4 id;
  const Perm4 b = Perm4::swap(2, 3);
  EXPECT_THROW(make_triangulation("bad", {{0, 0, 0, 0}}, {{id, id, b, b}}), validation_error);
}

TEST(Triangulation, RejectsInconsistentInverse) {
  auto j = nlohmann::json::parse(std::ifstream(fixture::path("fig8.json")));
  j["tetrahedra"][1]["gluings"][0] = {0, 2, 1, 3};
  EXPECT_THROW(triangulation_from_json(j), validation_error);
}

TEST(Triangulation, RejectsUnpairedFace) {
  auto j = nlohmann::json::parse(std::ifstream(fixture::path("fig8.json")));
  j["tetrahedra"][1]["neighbors"][2] = -1;
  EXPECT_THROW(triangulation_from_json(j), validation_error);
}

TEST(Triangulation, RejectsMalformedSchema) {
  EXPECT_THROW(parse_triangulation("{"), validation_error);
  EXPECT_THROW(parse_triangulation(R"({"tetrahedra": [{"neighbors": [0]}]})"), validation_error);
  EXPECT_THROW(parse_triangulation(R"({"name": "x"})"), validation_error);
  EXPECT_THROW(load_triangulation(fixture::path("does_not_exist.json")), validation_error);
}

TEST(Triangulation, RejectsBrokenCurve) {
  auto j = nlohmann::json::parse(std::ifstream(fixture::path("fig8.json")));
  j["peripheral_curves"][0]["steps"][1]["triple"] = {1, 2, 3};
  EXPECT_THROW(triangulation_from_json(j), validation_error);
}

TEST(Triangulation, ReversedCurveIsValid) {
  auto T = fixture::fig8();
  PeripheralCurve c = T.curve("lambda");
  std::reverse(c.steps.begin(), c.steps.end());
  for (auto& s : c.steps) s.dir = -s.dir;
  EXPECT_NO_THROW(validate_curve(T, c));
}

TEST(Triangulation, JsonRoundTrip) {
  for (const auto& T : {fixture::fig8(), fixture::five_tet()}) {
    auto U = triangulation_from_json(to_json(T));
    EXPECT_EQ(U, T);
  }
}

TEST(Triangulation, ReorderPreservesStructure) {
  auto T = fixture::fig8();
  const auto all = Perm4::all();
  for (std::size_t a = 0; a < all.size(); a += 5)
    for (std::size_t b = 0; b < all.size(); b += 7) {
      auto U = reorder(T, {all[a], all[b]});
      EXPECT_EQ(U.eps[0] * all[a].sign() * T.eps[0], U.eps[1] * all[b].sign() * T.eps[1]);
      auto back = reorder(U, {all[a].inverse(), all[b].inverse()});
      EXPECT_EQ(back.neighbors, T.neighbors);
      EXPECT_EQ(back.gluings, T.gluings);
      EXPECT_EQ(back.curves, T.curves);
    }
}

TEST(Triangulation, LocalModels) {
  for (int k = 3; k <= 6; ++k) {
    auto T = edge_model(k);
    EXPECT_EQ(T.size(), k);
    EXPECT_FALSE(T.closed());
  }
  EXPECT_EQ(face_model().size(), 2);
  EXPECT_EQ(simplex_model().size(), 1);
}
