#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ngl/ngl.hpp"

using namespace ngl;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  int n = 2;
  std::string format;
  std::string output;
  std::uint64_t seed = 1;
  int restarts = 200;
  double tol = 0;
  std::string curve;
  std::string shapes;
  bool geometric = false;
  bool check_symplectic = false;
  bool with_tet = false;
  bool keep_last = false;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
  return buf;
}

std::string num(cplx v) {
  std::string s = num(v.real());
  double im = v.imag() == 0 ? 0.0 : v.imag();
  s += im < 0 ? " - " : " + ";
  return s + num(std::abs(im)) + "i";
}

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

// Rows of named columns rendered as aligned text, CSV or a JSON array.
class Table {
 public:
  explicit Table(std::vector<std::string> cols) : cols_(std::move(cols)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "csv") {
      for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << csv_field(cols_[i]);
      os << "\n";
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
        os << "\n";
      }
    } else if (format == "json") {
      json j = json::array();
      for (const auto& r : rows_) {
        json o = json::object();
        for (std::size_t i = 0; i < r.size(); ++i) o[cols_[i]] = r[i];
        j.push_back(o);
      }
      os << j.dump(2) << "\n";
    } else {
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "  " : "") << r[i];
        os << "\n";
      }
    }
  }

 private:
  std::vector<std::string> cols_;
  std::vector<std::vector<std::string>> rows_;
};

std::string tet_point(const TetPoint& p) { return std::to_string(p.first) + ":" + point_label(p.second); }

std::vector<cplx> read_shapes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open shapes file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error("shapes file " + path + ": " + e.what());
  }
  if (j.is_object()) {
    if (j.contains("solutions") && !j["solutions"].empty()) j = j["solutions"][0];
    else if (j.contains("z")) j = j["z"];
  }
  if (!j.is_array()) throw validation_error("shapes file " + path + " must hold an array of [re, im] pairs");
  std::vector<cplx> z;
  for (const auto& v : j) {
    if (v.is_number()) z.emplace_back(v.get<double>(), 0.0);
    else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      z.emplace_back(v[0].get<double>(), v[1].get<double>());
    else throw validation_error("shapes file " + path + ": entry " + v.dump() + " is not [re, im]");
  }
  return z;
}

std::vector<cplx> shapes_for(const Triangulation& T, const Options& o, const SolveConfig& cfg) {
  std::vector<cplx> z;
  if (!o.shapes.empty()) z = read_shapes(o.shapes);
  else if (o.geometric) z = geometric_solution(T, o.n, cfg);
  else throw validation_error("give --shapes FILE or --geometric");
  const auto want = static_cast<std::size_t>(T.size() * num_subsimplices(o.n));
  if (z.size() != want)
    throw validation_error("expected " + std::to_string(want) + " shapes, got " + std::to_string(z.size()));
  return z;
}

std::vector<const PeripheralCurve*> selected_curves(const Triangulation& T, const std::string& name) {
  std::vector<const PeripheralCurve*> out;
  for (const auto& c : T.curves)
    if (name.empty() || c.name == name) out.push_back(&c);
  if (out.empty()) throw validation_error("no peripheral curve named '" + name + "'");
  return out;
}

std::string matrix_text(const CMatrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + num(m(i, j));
  }
  return s + "]";
}

json matrix_json(const CMatrix& m) {
  json j = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j2 = 0; j2 < m.cols(); ++j2) r.push_back(cjson(m(i, j2)));
    j.push_back(r);
  }
  return j;
}

int cmd_points(const Triangulation& T, const Options& o, std::ostream& os) {
  Quotient Q = quotient(T, o.n);
  if (o.format == "json") {
    json j = json::array();
    for (int c = 0; c < Q.num_classes(); ++c) {
      json members = json::array();
      for (const auto& [tet, p] : Q.classes[c].reps) members.push_back({{"tet", tet}, {"point", point_label(p)}});
      j.push_back({{"class", c}, {"kind", to_string(Q.classes[c].kind)}, {"members", members}});
    }
    os << json{{"n", o.n}, {"classes", j}}.dump(2) << "\n";
    return 0;
  }
  Table t({"class", "kind", "representative", "size", "members"});
  for (int c = 0; c < Q.num_classes(); ++c) {
    const auto& cl = Q.classes[c];
    std::string members;
    for (const auto& p : cl.reps) members += (members.empty() ? "" : " ") + tet_point(p);
    t.add({std::to_string(c), to_string(cl.kind), tet_point(cl.reps.front()), std::to_string(cl.reps.size()), members});
  }
  t.write(os, o.format);
  return 0;
}

int cmd_gluing(const Triangulation& T, const Options& o, std::ostream& os) {
  auto eqs = generate_gluing(T, o.n);
  Table t({"index", "class", "kind", "representative", "equation"});
  for (std::size_t i = 0; i < eqs.size(); ++i)
    t.add({std::to_string(i), std::to_string(eqs[i].point_class), to_string(eqs[i].kind), tet_point(eqs[i].rep),
           equation_text(eqs[i])});
  t.write(os, o.format);
  return 0;
}

int cmd_ptolemy(const Triangulation& T, const Options& o, std::ostream& os) {
  auto P = ptolemy_index(T, o.n);
  auto rel = generate_relations(T, o.n, P);
  Table t({"index", "tet", "subsimplex", "relation"});
  for (std::size_t i = 0; i < rel.size(); ++i)
    t.add({std::to_string(i), std::to_string(rel[i].tet), point_label(rel[i].s), relation_text(rel[i], P, o.with_tet)});
  t.write(os, o.format);
  return 0;
}

int cmd_nz(const Triangulation& T, const Options& o, std::ostream& os) {
  auto m = gluing_nz(T, o.n);
  const IntMatrix AB = m.AB();
  const std::int64_t worst = max_pairing(AB);
  const std::string dims = std::to_string(AB.rows()) + "x" + std::to_string(AB.cols());
  if (o.format == "json") {
    json j{{"n", o.n}, {"A", ngl::matrix_json(m.A)}, {"B", ngl::matrix_json(m.B)}, {"sign", m.sign}};
    if (o.check_symplectic) j["max_pairing"] = worst;
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    Table t({"row", "sign", "A", "B"});
    for (int i = 0; i < m.rows(); ++i) {
      auto join = [](const std::vector<std::int64_t>& v) {
        std::string s;
        for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
        return s;
      };
      t.add({std::to_string(i), std::to_string(m.sign[i]), join(m.A.row(i)), join(m.B.row(i))});
    }
    t.write(os, "csv");
  } else {
    os << "NZ matrices (A | B): " << dims << "\n";
    for (int i = 0; i < m.rows(); ++i) {
      for (auto x : m.A.row(i)) os << " " << x;
      os << " |";
      for (auto x : m.B.row(i)) os << " " << x;
      os << "   sign " << (m.sign[i] < 0 ? "-1" : "+1") << "\n";
    }
  }
  if (!o.check_symplectic) return 0;
  const std::string verdict = worst == 0 ? dims + ", all pairings 0" : dims + ", max |pairing| " + std::to_string(worst);
  (o.format == "text" ? os : std::cerr) << verdict << "\n";
  return worst == 0 ? 0 : 2;
}

int cmd_cusp(const Triangulation& T, const Options& o, std::ostream& os) {
  Table t({"curve", "level", "sign", "equation"});
  for (const auto* c : selected_curves(T, o.curve))
    for (const auto& eq : generate_cusp(T, o.n, *c))
      t.add({eq.curve, std::to_string(eq.level), std::to_string(eq.sign), cusp_text(eq)});
  t.write(os, o.format);
  return 0;
}

int cmd_cocycle(const Triangulation& T, const Options& o, const SolveConfig& cfg, std::ostream& os) {
  auto z = shapes_for(T, o, cfg);
  auto C = pgl_cocycle(T, z, o.n);
  bool faces = std::all_of(C.begin(), C.end(), [&](const auto& c) { return cocycle_condition(c, cfg.tol * 1e3); });
  Table t({"curve", "unipotent", "holonomy"});
  json j{{"n", o.n}, {"cocycle_condition", faces}, {"holonomy", json::object()}};
  for (const auto* c : selected_curves(T, o.curve)) {
    CMatrix h = holonomy(T, C, *c);
    h /= h.trace() / double(h.rows());
    bool uni = is_unipotent(h, 1e-6);
    t.add({c->name, uni ? "yes" : "no", matrix_text(h)});
    j["holonomy"][c->name] = {{"unipotent", uni}, {"matrix", matrix_json(h)}};
  }
  if (o.format == "json") {
    os << j.dump(2) << "\n";
  } else {
    if (o.format == "text") os << "cocycle condition on all faces: " << (faces ? "holds" : "FAILS") << "\n";
    t.write(os, o.format);
  }
  return faces ? 0 : 2;
}

int cmd_solve(const Triangulation& T, const Options& o, const SolveConfig& cfg, std::ostream& os) {
  std::vector<std::string> names;
  for (const auto* c : selected_curves(T, o.curve)) names.push_back(c->name);
  auto rep = newton_solve(gluing_system(T, o.n, names), cfg);
  if (o.format == "json") {
    json sols = json::array();
    for (const auto& z : rep.solutions) sols.push_back(complex_json(z));
    os << json{{"n", o.n}, {"seed", cfg.seed}, {"restarts", cfg.restarts}, {"converged", rep.converged},
               {"failed", rep.failed}, {"solutions", sols}}
              .dump(2)
       << "\n";
  } else {
    Table t({"solution", "variable", "re", "im"});
    for (std::size_t k = 0; k < rep.solutions.size(); ++k)
      for (std::size_t v = 0; v < rep.solutions[k].size(); ++v)
        t.add({std::to_string(k), std::to_string(v), num(rep.solutions[k][v].real()), num(rep.solutions[k][v].imag())});
    if (o.format == "text")
      os << rep.solutions.size() << " distinct solutions (" << rep.converged << " converged, " << rep.failed
         << " failed restarts)\n";
    t.write(os, o.format);
  }
  return rep.solutions.empty() ? 2 : 0;
}

int cmd_one_loop(const Triangulation& T, const Options& o, const SolveConfig& cfg, std::ostream& os) {
  const std::string meridian = o.curve.empty() ? T.curves.front().name : selected_curves(T, o.curve).front()->name;
  NZDatum d = nz_reduce(T, o.n, meridian, o.keep_last ? RemovalStrategy::keep_last : RemovalStrategy::keep_first);
  d.zeta = orient_shapes(T, shapes_for(T, o, cfg), o.n);
  if (datum_residual(d) > cfg.tol * 1e3) throw numerical_error("shapes do not satisfy the reduced gluing equations");
  find_flattening(d);
  cplx tau = one_loop(d);
  if (o.format == "json") {
    json j = to_json(d);
    j["meridian"] = meridian;
    j["tau"] = cjson(tau);
    j["abs_tau"] = std::abs(tau);
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    Table t({"n", "meridian", "tau_re", "tau_im", "abs_tau"});
    t.add({std::to_string(o.n), meridian, num(tau.real()), num(tau.imag()), num(std::abs(tau))});
    t.write(os, "csv");
  } else {
    os << "reduced NZ datum " << d.A.rows() << "x" << d.A.cols() << ", meridian " << meridian << "\n";
    os << "tau = " << num(tau) << "\n";
    os << "|tau| = " << num(std::abs(tau)) << "\n";
  }
  return 0;
}

int cmd_verify(const Triangulation& T, const Options& o, const SolveConfig& cfg, std::ostream& os) {
  auto z = shapes_for(T, o, cfg);
  Table t({"check", "max_residual", "pass"});
  bool ok = true;
  auto add = [&](const std::string& name, const Residual& r) {
    ok &= r.pass;
    t.add({name, num(r.max_residual), r.pass ? "yes" : "no"});
  };
  add("gluing", verify_solution(generate_gluing(T, o.n), z, o.n, cfg.tol));
  for (const auto* c : selected_curves(T, o.curve)) add("cusp " + c->name, verify_cusp(generate_cusp(T, o.n, *c), z, o.n, cfg.tol));
  t.write(os, o.format);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized gluing equations, Ptolemy relations and 1-loop invariants of ideal triangulations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Triangulation JSON file")->required();
    sub->add_option("-n", o.n, "Level n >= 2")->default_val(2);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("-o,--output", o.output, "Write to this file instead of stdout");
    sub->add_option("--tol", o.tol, "Residual tolerance (default from NGL_TOL or 1e-9)");
    return sub;
  };
  auto solving = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed for Newton restarts")->default_val(1);
    sub->add_option("--restarts", o.restarts, "Number of Newton restarts")->default_val(200);
    return sub;
  };
  auto shaped = [&](CLI::App* sub) {
    sub->add_option("--shapes", o.shapes, "JSON file with shape values as [re, im] pairs");
    sub->add_flag("--geometric", o.geometric, "Use the discrete faithful solution found by Newton's method");
    return sub;
  };

  common(app.add_subcommand("points", "Integral point classes (JSON by default)"));
  common(app.add_subcommand("gluing", "Gluing equations"));
  common(app.add_subcommand("ptolemy", "Ptolemy relations"))->add_flag("--with-tet", o.with_tet, "Show tetrahedron labels");
  common(app.add_subcommand("nz", "Neumann-Zagier matrices"))
      ->add_flag("--check-symplectic", o.check_symplectic, "Check that all row pairings vanish");
  common(app.add_subcommand("cusp", "Cusp equations"))->add_option("--curve", o.curve, "Peripheral curve name");
  shaped(solving(common(app.add_subcommand("cocycle", "Natural cocycle and cusp holonomy"))))
      ->add_option("--curve", o.curve, "Peripheral curve name");
  solving(common(app.add_subcommand("solve", "Solve gluing and cusp equations numerically")))
      ->add_option("--curve", o.curve, "Only impose this cusp curve");
  auto* ol = shaped(solving(common(app.add_subcommand("one-loop", "1-loop invariant of the reduced NZ datum"))));
  ol->add_option("--curve", o.curve, "Meridian curve (default: the first curve)");
  ol->add_flag("--keep-last", o.keep_last, "Drop redundant gluing rows from the front");
  shaped(solving(common(app.add_subcommand("verify", "Check shapes against gluing and cusp equations"))))
      ->add_option("--curve", o.curve, "Only check this cusp curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (o.format.empty()) o.format = cmd == "points" ? "json" : "text";

  try {
    if (o.n < 2) throw validation_error("n must be at least 2");
    if (o.tol < 0) throw validation_error("--tol must be positive");
    SolveConfig cfg;
    if (o.tol > 0) cfg.tol = o.tol;
    cfg.seed = o.seed;
    cfg.restarts = o.restarts;
    Triangulation T = load_triangulation(o.input);

    std::ostringstream out;
    int rc = 0;
    if (cmd == "points") rc = cmd_points(T, o, out);
    else if (cmd == "gluing") rc = cmd_gluing(T, o, out);
    else if (cmd == "ptolemy") rc = cmd_ptolemy(T, o, out);
    else if (cmd == "nz") rc = cmd_nz(T, o, out);
    else if (cmd == "cusp") rc = cmd_cusp(T, o, out);
    else if (cmd == "cocycle") rc = cmd_cocycle(T, o, cfg, out);
    else if (cmd == "solve") rc = cmd_solve(T, o, cfg, out);
    else if (cmd == "one-loop") rc = cmd_one_loop(T, o, cfg, out);
    else rc = cmd_verify(T, o, cfg, out);

    if (o.output.empty()) {
      std::cout << out.str();
    } else {
      std::ofstream f(o.output);
      if (!f) throw validation_error("cannot write " + o.output);
      f << out.str();
    }
    return rc;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
