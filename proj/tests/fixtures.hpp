#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "ngl/ngl.hpp"

namespace fixture {

inline std::string path(const std::string& name) { return std::string(NGL_DATA_DIR) + "/" + name; }

inline ngl::Triangulation fig8() { return ngl::load_triangulation(path("fig8.json")); }
inline ngl::Triangulation five_tet() { return ngl::load_triangulation(path("five_tet.json")); }

inline ngl::Point parse_point(const std::string& s) { return {s[0] - '0', s[1] - '0', s[2] - '0', s[3] - '0'}; }

// Parses a monomial written as in the reference tables: z/X refer to
// tetrahedron 0 and w/Y to tetrahedron 1; "(...)^{-1}" inverts a factor.
inline std::vector<ngl::CuspToken> parse_tokens(const std::string& text) {
  static const std::regex tok(
      R"(([zwXY])(?:_\{(\d{4})\}\^\{(\d{4})\}|\^\{(\d{4})\}_\{(\d{4})\}|_\{(\d{4})\})(\)\^\{-1\})?)");
  std::vector<ngl::CuspToken> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tok); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    char c = m[1].str()[0];
    ngl::CuspToken t;
    t.tet = (c == 'z' || c == 'X') ? 0 : 1;
    t.power = m[7].matched ? -1 : 1;
    if (c == 'X' || c == 'Y') {
      t.is_x = true;
      t.at = parse_point(m[6]);
    } else if (m[2].matched) {
      t.at = parse_point(m[2]);
      t.e = parse_point(m[3]);
    } else {
      t.e = parse_point(m[4]);
      t.at = parse_point(m[5]);
    }
    out.push_back(t);
  }
  return out;
}

inline ngl::Exponents expand(const std::vector<ngl::CuspToken>& toks) {
  ngl::Exponents e;
  for (const auto& t : toks) {
    if (t.is_x)
      ngl::expand_x(e, t.tet, t.at, t.power);
    else
      ngl::add_exponent(e, {t.tet, ngl::lattice(ngl::point_sum(t.at)).index(t.at), ngl::edge_role(t.e)}, t.power);
  }
  return e;
}

using SignedVector = std::vector<std::pair<ngl::ShapeVar, std::int64_t>>;

// A monomial = 1 and its inverse describe the same equation.
inline SignedVector canonical(const ngl::Exponents& e) {
  SignedVector a(e.begin(), e.end()), b;
  for (const auto& [v, k] : e) b.push_back({v, -k});
  return std::min(a, b);
}

using TokenKey = std::tuple<bool, int, ngl::Point, ngl::Point, int>;

inline std::vector<TokenKey> canonical(const std::vector<ngl::CuspToken>& toks) {
  std::vector<TokenKey> a, b;
  for (const auto& t : toks) {
    a.emplace_back(t.is_x, t.tet, t.at, t.is_x ? ngl::Point{} : t.e, t.power);
    b.emplace_back(t.is_x, t.tet, t.at, t.is_x ? ngl::Point{} : t.e, -t.power);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::min(a, b);
}

struct ReferenceEquations {
  std::vector<std::string> gluing;
  std::map<std::string, std::map<int, std::string>> cusp;  // curve -> level -> text
};

inline ReferenceEquations load_equations(const std::string& name) {
  std::ifstream in(path(name));
  ReferenceEquations out;
  std::string line;
  static const std::regex cusp_line(R"(cusp (\w+) (\d): (.*))");
  while (std::getline(in, line)) {
    std::smatch m;
    if (line.rfind("gluing: ", 0) == 0)
      out.gluing.push_back(line.substr(8));
    else if (std::regex_match(line, m, cusp_line))
      out.cusp[m[1]][std::stoi(m[2])] = m[3];
  }
  return out;
}

// The two rows of the reference n = 4 table that carry a typo in a subscript,
// and the subscripts the generator (and the face they belong to) requires.
inline const std::vector<std::pair<std::string, std::string>>& reference_typos() {
  static const std::vector<std::pair<std::string, std::string>> e{
      {"(w^{1010}_{0020})^{-1}", "(w^{1010}_{0200})^{-1}"},
      {"(w^{1010}_{0002})^{-1}", "(w^{1010}_{0110})^{-1}"}};
  return e;
}

inline std::string fix_typos(std::string s) {
  for (const auto& [bad, good] : reference_typos()) {
    auto p = s.find(bad);
    if (p != std::string::npos) s.replace(p, bad.size(), good);
  }
  return s;
}

// Numeric points of the reference n = 3 components, in generator column order
// (tetrahedron-major, subsimplices 0001, 0010, 0100, 1000).
inline std::vector<std::vector<ngl::cplx>> component_points() {
  std::ifstream in(path("fig8_n3_components.json"));
  auto j = nlohmann::json::parse(in);
  std::vector<std::vector<ngl::cplx>> out;
  for (const auto& c : j["components"]) {
    double p = c["poly"][1], q = c["poly"][2];
    ngl::cplx disc = std::sqrt(ngl::cplx(p * p - 4 * q));
    for (ngl::cplx w3 : {(-p + disc) / 2.0, (-p - disc) / 2.0}) {
      std::vector<ngl::cplx> z(8);
      for (int i = 0; i < 4; ++i) {
        z[3 - i] = double(c["z"][i][0]) * w3 + double(c["z"][i][1]);
        z[4 + 3 - i] = double(c["w"][i][0]) * w3 + double(c["w"][i][1]);
      }
      out.push_back(z);
    }
  }
  return out;
}

}  // namespace fixture
