#pragma once

#include <array>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ngl/core.hpp"
#include "ngl/perm4.hpp"

namespace ngl {

enum class StepKind { short_edge, middle_edge };

inline const char* to_string(StepKind k) {
  return k == StepKind::short_edge ? "short" : "middle";
}

// One edge of the boundary polyhedral decomposition. The edge starts at the
// vertex labelled by `triple` in tetrahedron `tet` when dir = +1 and ends
// there when dir = -1.
struct CurveStep {
  int tet = 0;
  std::array<int, 3> triple{0, 1, 2};
  StepKind kind = StepKind::short_edge;
  int dir = 1;

  friend bool operator==(const CurveStep&, const CurveStep&) = default;
};

struct PeripheralCurve {
  std::string name;
  std::vector<CurveStep> steps;

  friend bool operator==(const PeripheralCurve&, const PeripheralCurve&) =
      default;
};

// Vertex reached by following an edge of the given kind from v0v1v2.
inline std::array<int, 3> step_end(const std::array<int, 3>& tr, StepKind k) {
  if (k == StepKind::middle_edge) return {tr[0], tr[2], tr[1]};
  return {tr[0], tr[1], missing_vertex(tr)};
}

inline constexpr int kFreeFace = -1;

struct Triangulation {
  std::string name;
  // neighbors[i][f] is the tetrahedron glued to face f of tetrahedron i, or
  // kFreeFace for the local models used in testing.
  std::vector<std::array<int, 4>> neighbors;
  std::vector<std::array<Perm4, 4>> gluings;
  std::vector<int> eps;
  std::vector<PeripheralCurve> curves;

  int size() const { return static_cast<int>(neighbors.size()); }

  bool closed() const {
    for (const auto& nb : neighbors)
      for (int j : nb)
        if (j == kFreeFace) return false;
    return true;
  }

  const PeripheralCurve& curve(const std::string& curve_name) const {
    for (const auto& c : curves)
      if (c.name == curve_name) return c;
    throw validation_error("no peripheral curve named '" + curve_name + "'");
  }

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

// BFS propagation of eps_i * eps_j = -sign(sigma); the first tetrahedron of
// each component gets +1.
inline std::vector<int> orientation_signs(
    const std::vector<std::array<int, 4>>& neighbors,
    const std::vector<std::array<Perm4, 4>>& gluings) {
  const int n = static_cast<int>(neighbors.size());
  std::vector<int> eps(n, 0);
  for (int root = 0; root < n; ++root) {
    if (eps[root] != 0) continue;
    eps[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int f = 0; f < 4; ++f) {
        int j = neighbors[i][f];
        if (j == kFreeFace) continue;
        int want = -gluings[i][f].sign() * eps[i];
        if (eps[j] == 0) {
          eps[j] = want;
          queue.push_back(j);
        } else if (eps[j] != want) {
          throw validation_error("non-orientable triangulation");
        }
      }
    }
  }
  return eps;
}

inline std::vector<int> orientation_signs(const Triangulation& T) {
  return orientation_signs(T.neighbors, T.gluings);
}

// Canonical name of a vertex of the boundary decomposition: the vertex
// (tet, v0v1v2) lies on the face opposite v3 and is identified with its image
// across that face.
inline std::pair<int, std::array<int, 3>> boundary_vertex(
    const Triangulation& T, int tet, const std::array<int, 3>& tr) {
  std::pair<int, std::array<int, 3>> self{tet, tr};
  int f = missing_vertex(tr);
  int j = T.neighbors[tet][f];
  if (j == kFreeFace) return self;
  const Perm4& s = T.gluings[tet][f];
  std::pair<int, std::array<int, 3>> other{j, {s(tr[0]), s(tr[1]), s(tr[2])}};
  return std::min(self, other);
}

inline void validate_curve(const Triangulation& T, const PeripheralCurve& c) {
  auto where = [&](std::size_t k) {
    return "curve '" + c.name + "' step " + std::to_string(k);
  };
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const auto& st = c.steps[k];
    if (st.tet < 0 || st.tet >= T.size())
      throw validation_error(where(k) + ": tetrahedron out of range");
    std::array<bool, 4> seen{};
    for (int v : st.triple) {
      if (v < 0 || v > 3 || seen[v])
        throw validation_error(where(k) + ": triple must be distinct vertices");
      seen[v] = true;
    }
    if (st.dir != 1 && st.dir != -1)
      throw validation_error(where(k) + ": dir must be +1 or -1");
  }
  auto endpoints = [&](const CurveStep& st) {
    auto a = st.triple;
    auto b = step_end(st.triple, st.kind);
    if (st.dir < 0) std::swap(a, b);
    return std::pair{boundary_vertex(T, st.tet, a),
                     boundary_vertex(T, st.tet, b)};
  };
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    auto cur = endpoints(c.steps[k]).second;
    auto next = endpoints(c.steps[(k + 1) % c.steps.size()]).first;
    if (cur != next)
      throw validation_error(where(k) + ": broken edge path");
  }
}

// Checks pairings and curves, computes orientation signs.
inline Triangulation make_triangulation(
    std::string name, std::vector<std::array<int, 4>> neighbors,
    std::vector<std::array<Perm4, 4>> gluings,
    std::vector<PeripheralCurve> curves = {}) {
  if (neighbors.size() != gluings.size())
    throw validation_error("neighbors and gluings differ in length");
  const int n = static_cast<int>(neighbors.size());
  if (n == 0) throw validation_error("triangulation has no tetrahedra");
  std::map<std::pair<int, int>, int> hits;
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 4; ++f) {
      int j = neighbors[i][f];
      if (j == kFreeFace) continue;
      if (j < 0 || j >= n)
        throw validation_error("tetrahedron " + std::to_string(i) + " face " +
                               std::to_string(f) + ": neighbor out of range");
      int g = gluings[i][f](f);
      if (j == i && g == f)
        throw validation_error("face glued to itself");
      if (++hits[{j, g}] > 1)
        throw validation_error("face multiply glued");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 4; ++f) {
      int j = neighbors[i][f];
      if (j == kFreeFace) continue;
      const Perm4& s = gluings[i][f];
      int g = s(f);
      if (neighbors[j][g] != i)
        throw validation_error("unpaired face: tetrahedron " +
                               std::to_string(j) + " face " +
                               std::to_string(g));
      if (gluings[j][g] != s.inverse())
        throw validation_error("inconsistent inverse pairing at tetrahedron " +
                               std::to_string(i) + " face " +
                               std::to_string(f));
    }
  }
  Triangulation T;
  T.name = std::move(name);
  T.neighbors = std::move(neighbors);
  T.gluings = std::move(gluings);
  T.eps = orientation_signs(T.neighbors, T.gluings);
  T.curves = std::move(curves);
  for (const auto& c : T.curves) validate_curve(T, c);
  return T;
}

inline StepKind parse_step_kind(const std::string& s) {
  if (s == "short") return StepKind::short_edge;
  if (s == "middle") return StepKind::middle_edge;
  throw validation_error("unknown step kind '" + s + "'");
}

inline Triangulation triangulation_from_json(const nlohmann::json& j) {
  try {
    std::string name = j.value("name", std::string("unnamed"));
    const auto& tets = j.at("tetrahedra");
    if (!tets.is_array()) throw validation_error("'tetrahedra' must be a list");
    if (j.contains("num_tetrahedra") &&
        j.at("num_tetrahedra").get<std::size_t>() != tets.size())
      throw validation_error("num_tetrahedra does not match tetrahedra list");
    std::vector<std::array<int, 4>> neighbors;
    std::vector<std::array<Perm4, 4>> gluings;
    for (const auto& t : tets) {
      auto nb = t.at("neighbors").get<std::vector<int>>();
      auto gl = t.at("gluings").get<std::vector<std::vector<int>>>();
      if (nb.size() != 4 || gl.size() != 4)
        throw validation_error("each tetrahedron needs 4 neighbors and 4 gluings");
      std::array<int, 4> nba{};
      std::array<Perm4, 4> gla{};
      for (int f = 0; f < 4; ++f) {
        if (nb[f] < 0) throw validation_error("unpaired face");
        nba[f] = nb[f];
        if (gl[f].size() != 4) throw validation_error("gluing must have 4 entries");
        gla[f] = Perm4({gl[f][0], gl[f][1], gl[f][2], gl[f][3]});
      }
      neighbors.push_back(nba);
      gluings.push_back(gla);
    }
    std::vector<PeripheralCurve> curves;
    if (j.contains("peripheral_curves")) {
      for (const auto& c : j.at("peripheral_curves")) {
        PeripheralCurve pc;
        pc.name = c.at("name").get<std::string>();
        for (const auto& s : c.at("steps")) {
          CurveStep st;
          st.tet = s.at("tet").get<int>();
          auto tr = s.at("triple").get<std::vector<int>>();
          if (tr.size() != 3) throw validation_error("triple must have 3 entries");
          st.triple = {tr[0], tr[1], tr[2]};
          st.kind = parse_step_kind(s.at("kind").get<std::string>());
          st.dir = s.value("dir", 1);
          pc.steps.push_back(st);
        }
        curves.push_back(std::move(pc));
      }
    }
    return make_triangulation(name, std::move(neighbors), std::move(gluings),
                              std::move(curves));
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed triangulation: ") + e.what());
  }
}

inline Triangulation parse_triangulation(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed triangulation: ") + e.what());
  }
  return triangulation_from_json(j);
}

inline Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

inline nlohmann::json to_json(const Triangulation& T) {
  nlohmann::json j;
  j["name"] = T.name;
  j["num_tetrahedra"] = T.size();
  j["tetrahedra"] = nlohmann::json::array();
  for (int i = 0; i < T.size(); ++i) {
    nlohmann::json t;
    t["neighbors"] = T.neighbors[i];
    nlohmann::json gl = nlohmann::json::array();
    for (const auto& p : T.gluings[i]) gl.push_back(p.image());
    t["gluings"] = gl;
    j["tetrahedra"].push_back(t);
  }
  j["peripheral_curves"] = nlohmann::json::array();
  for (const auto& c : T.curves) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["steps"] = nlohmann::json::array();
    for (const auto& s : c.steps)
      jc["steps"].push_back({{"tet", s.tet},
                             {"triple", s.triple},
                             {"kind", to_string(s.kind)},
                             {"dir", s.dir}});
    j["peripheral_curves"].push_back(jc);
  }
  return j;
}

// New vertex k of tetrahedron i is old vertex sigmas[i](k); pairings become
// sigma_j^-1 * tau * sigma_i.
inline Triangulation reorder(const Triangulation& T,
                             const std::vector<Perm4>& sigmas) {
  if (static_cast<int>(sigmas.size()) != T.size())
    throw validation_error("reorder needs one permutation per tetrahedron");
  auto neighbors = T.neighbors;
  auto gluings = T.gluings;
  for (int i = 0; i < T.size(); ++i) {
    Perm4 inv = sigmas[i].inverse();
    for (int f = 0; f < 4; ++f) {
      int nf = inv(f);
      int j = T.neighbors[i][f];
      neighbors[i][nf] = j;
      if (j == kFreeFace) {
        gluings[i][nf] = Perm4();
      } else {
        gluings[i][nf] = sigmas[j].inverse() * T.gluings[i][f] * sigmas[i];
      }
    }
  }
  auto curves = T.curves;
  for (auto& c : curves) {
    for (auto& s : c.steps) {
      Perm4 inv = sigmas[s.tet].inverse();
      s.triple = {inv(s.triple[0]), inv(s.triple[1]), inv(s.triple[2])};
    }
  }
  return make_triangulation(T.name, std::move(neighbors), std::move(gluings),
                            std::move(curves));
}

// k tetrahedra glued cyclically around their common edge 01; face 2 of
// tetrahedron i meets face 3 of tetrahedron i+1 through the swap (23).
inline Triangulation edge_model(int k) {
  if (k < 1) throw validation_error("edge model needs at least one tetrahedron");
  std::vector<std::array<int, 4>> neighbors(k, {kFreeFace, kFreeFace, kFreeFace, kFreeFace});
  std::vector<std::array<Perm4, 4>> gluings(k);
  Perm4 s = Perm4::swap(2, 3);
  for (int i = 0; i < k; ++i) {
    int j = (i + 1) % k;
    neighbors[i][2] = j;
    gluings[i][2] = s;
    neighbors[j][3] = i;
    gluings[j][3] = s;
  }
  return make_triangulation("edge-model-" + std::to_string(k),
                            std::move(neighbors), std::move(gluings));
}

// Two tetrahedra glued along face 012 by the identity.
inline Triangulation face_model() {
  std::vector<std::array<int, 4>> neighbors(2, {kFreeFace, kFreeFace, kFreeFace, kFreeFace});
  std::vector<std::array<Perm4, 4>> gluings(2);
  neighbors[0][3] = 1;
  neighbors[1][3] = 0;
  return make_triangulation("face-model", std::move(neighbors), std::move(gluings));
}

// A single free tetrahedron.
inline Triangulation simplex_model() {
  return make_triangulation(
      "simplex", {{kFreeFace, kFreeFace, kFreeFace, kFreeFace}}, {{}});
}

}  // namespace ngl
