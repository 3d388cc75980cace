#include "shapecone/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace shapecone {

namespace {

void dump_rec(const Json& j, std::string& out, int depth) {
  auto indent = [&](int k) { out.append(2 * static_cast<size_t>(k), ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        indent(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      indent(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j)
        if (e.is_structured()) flat = false;
      out += flat ? "[" : "[\n";
      size_t i = 0;
      for (const auto& e : j) {
        if (!flat) indent(depth + 1);
        dump_rec(e, out, depth + 1);
        if (++i < j.size()) out += flat ? ", " : ",";
        if (!flat) out += '\n';
      }
      if (!flat) indent(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Json jvec(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json jmat(const Matrix& M) {
  Json a = Json::array();
  for (int i = 0; i < M.rows(); ++i) a.push_back(jvec(M.row(i).transpose()));
  return a;
}

Json jmat_exact(const RatMatrix& M) {
  Json a = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j).str());
    a.push_back(row);
  }
  return a;
}

Json jsig(const Signature& s) {
  return Json{{"positive", s.positive}, {"zero", s.zero}, {"negative", s.negative}};
}

Json jcircuit(const Circuit& c) {
  Json j;
  j["support"] = c.support;
  switch (c.kind) {
    case CircuitKind::Positive: j["kind"] = "positive"; break;
    case CircuitKind::Hyperbolic: j["kind"] = "hyperbolic"; break;
    case CircuitKind::Mixed: j["kind"] = "mixed"; break;
  }
  if (c.kind == CircuitKind::Hyperbolic) j["p"] = c.p;
  j["lambda"] = jvec(c.lambda);
  j["mu"] = jvec(c.mu);
  return j;
}

Json jcone(const PolyCone& c) {
  Json j;
  j["dim"] = c.dim();
  j["pointed"] = c.pointed();
  j["rays"] = jmat(c.rays);
  j["inequalities"] = jmat(c.ineqs);
  j["equations"] = jmat(c.eqs);
  return j;
}

Json header(const char* command, const VectorConfiguration& cfg) {
  Json j;
  j["schema"] = "shapecone/1";
  j["command"] = command;
  j["n"] = cfg.n();
  j["d"] = cfg.d();
  j["exact"] = cfg.exact();
  j["epsilon"] = epsilon();
  if (cfg.exact())
    j["V"] = jmat_exact(*cfg.exactV);
  else
    j["V"] = jmat(cfg.V);
  return j;
}

Json jnorm(const Matrix& M) {
  double s = M.cwiseAbs().maxCoeff();
  return jmat(s > 0 ? Matrix(M / s) : M);
}

Json jrelation(const FacetRelation& r) {
  Json j;
  switch (r.kind) {
    case PairKind::Angle: j["kind"] = "angle"; break;
    case PairKind::Parallel: j["kind"] = "parallel"; break;
    case PairKind::Diverge: j["kind"] = "diverge"; break;
  }
  j["value"] = r.value;
  return j;
}

// Full chamber enumeration when it fits the cell cap, otherwise just the
// chamber containing the configuration's own support vector pi(1).
std::pair<std::vector<TypeCone>, bool> chambers_or_base(const VectorConfiguration& cfg,
                                                        const GaleDiagram& G,
                                                        const std::vector<Circuit>& circuits) {
  try {
    return {enumerate_type_cones(cfg, G, circuits).chambers, true};
  } catch (const TooLarge&) {
    DomainPair dp = irredundancy_domain(cfg, G, circuits);
    SubconeCache cache{&G, {}};
    AbstractFan f = chamber_of(G.project(Vector::Ones(cfg.n())), cfg, cache, dp);
    return {{type_cone_inequalities(cfg, G, f)}, false};
  }
}

std::vector<BodySpec> default_bodies(const VectorConfiguration& cfg) {
  if (cfg.d() == 3) return {BodySpec::ball()};
  if (cfg.d() == 2) return {};
  throw BadConfiguration("quadratic-form reports support d = 2 and d = 3");
}

}  // namespace

std::string dump_report(const Json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += '\n';
  return out;
}

Json report_gale(const VectorConfiguration& cfg) {
  GaleDiagram G = gale_dual(cfg);
  Json j = header("gale", cfg);
  if (G.exactVbar)
    j["dual"] = jmat_exact(*G.exactVbar);
  else
    j["dual"] = jmat(G.Vbar);
  j["section"] = G.section;
  j["involution_ok"] = gale_involution_check(cfg);
  j["positively_spanning"] = is_positively_spanning(cfg);
  Json pts = Json::array();
  for (const auto& p : affine_gale(G))
    pts.push_back(Json{{"point", jvec(p.point)}, {"black", p.black}, {"source", p.source}});
  j["affine_diagram"] = pts;
  Json cs = Json::array();
  for (const auto& c : enumerate_circuits(cfg, G)) cs.push_back(jcircuit(c));
  j["circuits"] = cs;
  return j;
}

Json report_domains(const VectorConfiguration& cfg) {
  GaleDiagram G = gale_dual(cfg);
  auto circuits = enumerate_circuits(cfg, G);
  Json j = header("domains", cfg);
  j["co"] = jcone(compatibility_domain(cfg, G, circuits));
  DomainPair dp = irredundancy_domain(cfg, G, circuits);
  j["clir"] = jcone(dp.clir);
  Json fc = Json::array();
  for (const auto& [facet, c] : dp.facet_circuits)
    fc.push_back(Json{{"facet", facet}, {"circuit", jcircuit(c)}});
  j["facet_circuits"] = fc;
  return j;
}

Json report_typecones(const VectorConfiguration& cfg) {
  GaleDiagram G = gale_dual(cfg);
  auto circuits = enumerate_circuits(cfg, G);
  ChamberComplex cc = enumerate_type_cones(cfg, G, circuits);
  Json j = header("typecones", cfg);
  j["count"] = cc.chambers.size();
  Json chs = Json::array();
  for (const auto& tc : cc.chambers) {
    Json c;
    c["maximal_cones"] = tc.fan.maximal;
    c["simplicial"] = tc.fan.simplicial;
    c["complete"] = tc.fan.complete;
    c["rays"] = jmat(tc.rays);
    c["inequalities"] = jmat(tc.cone.ineqs);
    c["equations"] = jmat(tc.cone.eqs);
    chs.push_back(c);
  }
  j["chambers"] = chs;
  Json fl = Json::array();
  for (auto [a, b] : cc.flips) fl.push_back(Json::array({a, b}));
  j["flips"] = fl;
  return j;
}

Json report_qform(const VectorConfiguration& cfg) {
  GaleDiagram G = gale_dual(cfg);
  auto circuits = enumerate_circuits(cfg, G);
  auto [chambers, complete] = chambers_or_base(cfg, G, circuits);
  auto bodies = default_bodies(cfg);
  Json j = header("qform", cfg);
  j["bodies"] = cfg.d() == 3 ? Json::array({"ball"}) : Json::array();
  j["all_chambers"] = complete;
  Json fs = Json::array();
  for (const auto& tc : chambers) {
    QuadraticForm q = q_form(cfg, G, tc, bodies);
    Json f;
    f["gram"] = jmat(q.gram);
    f["gram_normalized"] = jnorm(q.gram);
    f["gram_full_normalized"] = jnorm(q.gram_full);
    f["signature"] = jsig(q.signature);
    fs.push_back(f);
  }
  j["forms"] = fs;
  return j;
}

Json report_shapespace(const VectorConfiguration& cfg) {
  ShapeComplex M = build_shape_complex(cfg);
  Json j = header("shapespace", cfg);
  Json cells = Json::array();
  for (const auto& cell : M.cells) {
    Json c;
    c["rays"] = jmat(cell.rays);
    Json rc = Json::array();
    for (auto k : cell.ray_class) rc.push_back(k == RayClass::Finite ? "finite" : "ideal");
    c["ray_class"] = rc;
    c["facet_normals"] = jmat(cell.facet_normals);
    Json tbl = Json::array();
    const int nf = static_cast<int>(cell.facet_normals.rows());
    for (int a = 0; a < nf; ++a)
      for (int b = a + 1; b < nf; ++b) {
        if (!cell.facet_spacelike[a] || !cell.facet_spacelike[b]) continue;
        Json e = jrelation(cell.angles[a][b]);
        e["facets"] = Json::array({a, b});
        tbl.push_back(e);
      }
    c["angle_table"] = tbl;
    cells.push_back(c);
  }
  j["cells"] = cells;
  Json gl = Json::array();
  for (const auto& g : M.gluings)
    gl.push_back(Json{{"cell1", g.cell1},
                      {"facet1", g.facet1},
                      {"cell2", g.cell2},
                      {"facet2", g.facet2},
                      {"form_mismatch", g.form_mismatch}});
  j["gluings"] = gl;
  Json bd = Json::array();
  for (const auto& [support, facets] : M.boundary_facets) {
    Json fs = Json::array();
    for (const auto& f : facets) fs.push_back(Json::array({f.cell, f.facet}));
    bd.push_back(Json{{"circuit", support}, {"facets", fs}});
  }
  j["boundary_facets"] = bd;
  Json st = Json::array();
  for (size_t s = 0; s < M.strata.size(); ++s) {
    ConeAngleVerdict v = interior_cone_angle(M, static_cast<int>(s));
    st.push_back(Json{{"ray", jvec(M.strata[s].ray)},
                      {"cone_angle", v.angle},
                      {"flat", v.flat},
                      {"form_constant", v.form_constant},
                      {"right_angle_present", v.right_angle_present}});
  }
  j["interior_strata"] = st;
  return j;
}

Json report_oracle(const VectorConfiguration& cfg) {
  Json j = header("oracle", cfg);
  if (cfg.d() == 3) {
    if (cfg.n() >= 4) {
      try {
        auto areas = tetra_face_areas(cfg.V.row(0).transpose(), cfg.V.row(1).transpose(),
                                      cfg.V.row(2).transpose(), cfg.V.row(3).transpose(), 1.0);
        j["tetra_face_areas"] = Json::array({areas[0], areas[1], areas[2], areas[3]});
      } catch (const NotSpanning&) {
        j["tetra_face_areas"] = nullptr;
      }
    }
    GaleDiagram G = gale_dual(cfg);
    auto circuits = enumerate_circuits(cfg, G);
    auto [chambers, complete] = chambers_or_base(cfg, G, circuits);
    for (const auto& tc : chambers) {
      if (!tc.fan.simplicial) continue;
      QuadraticForm q = area_form_from_angles(cfg, G, tc.fan);
      j["angle_form"] = Json{{"gram_full_normalized", jnorm(q.gram_full)},
                             {"gram_normalized", jnorm(q.gram)},
                             {"signature", jsig(q.signature)}};
      break;
    }
  } else if (cfg.d() == 2) {
    // Exterior angles of the polygon, in the cyclic order of the normals.
    std::vector<double> theta;
    for (int i = 0; i < cfg.n(); ++i)
      theta.push_back(std::atan2(cfg.V(i, 1), cfg.V(i, 0)));
    std::sort(theta.begin(), theta.end());
    std::vector<double> alpha;
    for (size_t i = 0; i < theta.size(); ++i) {
      double a = theta[(i + 1) % theta.size()] - theta[i];
      if (a < 0) a += 2 * M_PI;
      alpha.push_back(a);
    }
    j["exterior_angles"] = alpha;
    auto tbl = orthoscheme_angles(alpha);
    Json t = Json::array();
    for (size_t a = 0; a < tbl.size(); ++a)
      for (size_t b = a + 1; b < tbl.size(); ++b) {
        Json e = jrelation(tbl[a][b]);
        e["facets"] = Json::array({a, b});
        t.push_back(e);
      }
    j["orthoscheme"] = t;
  } else {
    throw BadConfiguration("oracle reports support d = 2 and d = 3");
  }
  return j;
}

std::string svg_affine(const VectorConfiguration& cfg) {
  GaleDiagram G = gale_dual(cfg);
  if (G.m() != 3) throw BadConfiguration("svg output needs n - d = 3");
  auto pts = affine_gale(G);
  GaleDiagram* gp = &G;
  // Plane basis: the affine diagram lives on <a, x> = 1 for the direction a
  // recovered from the points themselves (all satisfy it); use the time
  // direction pi(1) as the section normal fallback.
  Vector a = gp->project(Vector::Ones(cfg.n())).normalized();
  Vector b1 = Vector::Zero(3), b2 = Vector::Zero(3);
  {
    Eigen::Vector3d az(a[0], a[1], a[2]);
    Eigen::Vector3d u = az.unitOrthogonal(), v = az.cross(u);
    for (int i = 0; i < 3; ++i) {
      b1[i] = u[i];
      b2[i] = v[i];
    }
  }
  auto plane = [&](const Vector& p) {
    return std::pair<double, double>(b1.dot(p), b2.dot(p));
  };
  std::vector<std::vector<std::pair<double, double>>> polys;
  auto circuits = enumerate_circuits(cfg, G);
  ChamberComplex cc = enumerate_type_cones(cfg, G, circuits);
  for (const auto& tc : cc.chambers) {
    std::vector<std::pair<double, double>> poly;
    for (int r = 0; r < tc.rays.rows(); ++r) {
      Vector y = tc.rays.row(r).transpose();
      double t = a.dot(y);
      if (t <= 1e-9) continue;  // unbounded section direction, skip
      poly.push_back(plane(y / t));
    }
    if (poly.size() < 3) continue;
    double cx = 0, cy = 0;
    for (auto [x, y] : poly) {
      cx += x;
      cy += y;
    }
    cx /= static_cast<double>(poly.size());
    cy /= static_cast<double>(poly.size());
    std::sort(poly.begin(), poly.end(), [&](auto& p, auto& q) {
      return std::atan2(p.second - cy, p.first - cx) < std::atan2(q.second - cy, q.first - cx);
    });
    polys.push_back(poly);
  }
  // Scale everything into a 400x400 viewport.
  double lo = -1, hi = 1;
  for (const auto& p : pts) {
    auto [x, y] = plane(p.point);
    lo = std::min({lo, x, y});
    hi = std::max({hi, x, y});
  }
  for (const auto& poly : polys)
    for (auto [x, y] : poly) {
      lo = std::min({lo, x, y});
      hi = std::max({hi, x, y});
    }
  double s = 360 / (hi - lo);
  auto map = [&](std::pair<double, double> p) {
    return std::pair<double, double>(20 + (p.first - lo) * s, 20 + (hi - p.second) * s);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
         "viewBox=\"0 0 400 400\">\n";
  const char* palette[] = {"#cfe8ff", "#ffe2cf", "#d8f5d0", "#f5d0ee", "#fff3b0", "#d0f0f5"};
  for (size_t i = 0; i < polys.size(); ++i) {
    svg << "<polygon points=\"";
    for (auto p : polys[i]) {
      auto [x, y] = map(p);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g,%.6g ", x, y);
      svg << buf;
    }
    svg << "\" fill=\"" << palette[i % 6] << "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
  }
  for (const auto& p : pts) {
    auto [x, y] = map(plane(p.point));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"5\" fill=\"%s\" stroke=\"#000\"/>\n", x, y,
                  p.black ? "#000" : "#fff");
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.6g\" y=\"%.6g\" font-size=\"11\">%d</text>\n",
                  x + 7, y - 7, p.source);
    svg << buf;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace shapecone
