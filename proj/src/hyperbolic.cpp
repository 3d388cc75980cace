#include "shapecone/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace shapecone {

namespace {

constexpr double kAngleTol = 1e-7;

double clamp1(double x) { return std::max(-1.0, std::min(1.0, x)); }

FacetRelation classify_inner(double c) {
  FacetRelation r;
  if (std::abs(c) <= 1 - kAngleTol) {
    r.kind = PairKind::Angle;
    r.value = std::acos(clamp1(c));
  } else if (std::abs(c) < 1 + kAngleTol) {
    r.kind = PairKind::Parallel;
    r.value = 1;
  } else {
    r.kind = PairKind::Diverge;
    r.value = std::abs(c);
  }
  return r;
}

}  // namespace

MinkowskiSpace make_minkowski(const QuadraticForm& q, const GaleDiagram& G) {
  const int m = static_cast<int>(q.gram.rows());
  Signature sig = symmetric_signature(q.gram);
  if (sig.positive != 1 || sig.zero != 0 || sig.negative != m - 1) throw WrongSignature();
  MinkowskiSpace s;
  s.gram = q.gram;
  s.time = G.project(Vector::Ones(G.n()));
  if (s.q(s.time) <= 0) throw WrongSignature();
  s.time /= std::sqrt(s.q(s.time));
  return s;
}

HyperbolicCell build_cell(const TypeCone& tc, const QuadraticForm& q, const GaleDiagram& G) {
  HyperbolicCell cell;
  cell.space = make_minkowski(q, G);
  cell.tc = tc;
  const Matrix& Q = cell.space.gram;
  const double tol = 1e3 * epsilon() * std::max(1.0, Q.cwiseAbs().maxCoeff());
  const int nr = static_cast<int>(tc.rays.rows());
  cell.rays = tc.rays;
  cell.ray_class.resize(nr);
  for (int i = 0; i < nr; ++i) {
    Vector r = tc.rays.row(i).transpose();
    double qr = r.dot(Q * r);
    if (qr < -tol) throw WrongSignature();
    if (qr > tol) {
      if (r.dot(Q * cell.space.time) <= 0) throw WrongSignature();
      cell.rays.row(i) = r.transpose() / std::sqrt(qr);
      cell.ray_class[i] = RayClass::Finite;
    } else {
      cell.ray_class[i] = RayClass::Ideal;
    }
  }
  // Facet normals: n with <n, y>_q = a . y, scaled to q(n) = -1 when
  // spacelike; inward (nonnegative on the cone) like the inequalities.
  const int nf = static_cast<int>(tc.cone.ineqs.rows());
  Matrix Qinv = Q.inverse();
  cell.facet_normals = Matrix(nf, Q.rows());
  cell.facet_spacelike.resize(nf);
  for (int i = 0; i < nf; ++i) {
    Vector n = Qinv * tc.cone.ineqs.row(i).transpose();
    double qn = n.dot(Q * n);
    cell.facet_spacelike[i] = qn < -tol;
    if (cell.facet_spacelike[i]) n /= std::sqrt(-qn);
    cell.facet_normals.row(i) = n.transpose();
  }
  cell.angles.assign(nf, std::vector<FacetRelation>(nf));
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      if (i == j || !cell.facet_spacelike[i] || !cell.facet_spacelike[j]) continue;
      // Interior dihedral angle: pi minus the tangent-space angle between
      // the outward normals, i.e. cos(theta) = <n_i, n_j>_q inward.
      double c = cell.space.inner(cell.facet_normals.row(i).transpose(),
                                  cell.facet_normals.row(j).transpose());
      cell.angles[i][j] = classify_inner(c);
    }
  return cell;
}

std::vector<std::vector<FacetRelation>> orthoscheme_angles(const std::vector<double>& alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n < 5) throw BadAngles();
  double sum = 0;
  for (double a : alpha) {
    if (a <= 0 || a >= M_PI) throw BadAngles();
    sum += a;
  }
  if (std::abs(sum - 2 * M_PI) > 1e-9 * n) throw BadAngles();
  std::vector<std::vector<FacetRelation>> table(n, std::vector<FacetRelation>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int gap = (j - i + n) % n;
      if (gap != 1 && gap != n - 1) {
        table[i][j] = FacetRelation{PairKind::Angle, M_PI / 2};
        continue;
      }
      int a = (gap == 1) ? i : j;  // pair (a, a+1)
      double c2 = std::sin(alpha[a]) * std::sin(alpha[(a + 2) % n]) /
                  (std::sin(alpha[a] + alpha[(a + 1) % n]) *
                   std::sin(alpha[(a + 1) % n] + alpha[(a + 2) % n]));
      FacetRelation r;
      if (c2 > 1 + kAngleTol) {
        r.kind = PairKind::Diverge;
        r.value = std::sqrt(c2);
      } else if (c2 > 1 - kAngleTol) {
        r.kind = PairKind::Parallel;
        r.value = 1;
      } else {
        r.kind = PairKind::Angle;
        r.value = std::acos(std::sqrt(std::max(0.0, c2)));
      }
      table[i][j] = r;
    }
  return table;
}

double hyperbolic_distance(const MinkowskiSpace& space, const Vector& p1, const Vector& p2) {
  double q1 = space.q(p1), q2 = space.q(p2);
  if (q1 <= 0 || q2 <= 0) throw NotTimelike();
  if (space.inner(p1, space.time) <= 0 || space.inner(p2, space.time) <= 0) throw NotTimelike();
  double ratio = space.inner(p1, p2) / std::sqrt(q1 * q2);
  return std::acosh(std::max(1.0, ratio));
}

ShapeComplex build_shape_complex(const VectorConfiguration& cfg) {
  if (cfg.d() == 3) return build_shape_complex(cfg, {BodySpec::ball()});
  if (cfg.d() == 2) return build_shape_complex(cfg, {});
  throw BadConfiguration("supply d - 2 bodies for d > 3");
}

ShapeComplex build_shape_complex(const VectorConfiguration& cfg,
                                 const std::vector<BodySpec>& bodies) {
  ShapeComplex M;
  M.G = gale_dual(cfg);
  M.circuits = enumerate_circuits(cfg, M.G);
  M.dp = irredundancy_domain(cfg, M.G, M.circuits);
  M.chambers = enumerate_type_cones(cfg, M.G, M.circuits);
  const int nc = static_cast<int>(M.chambers.chambers.size());
  for (int i = 0; i < nc; ++i) {
    M.forms.push_back(q_form(cfg, M.G, M.chambers.chambers[i], bodies));
    M.cells.push_back(build_cell(M.chambers.chambers[i], M.forms.back(), M.G));
  }
  // Gluings and boundary facets from wall crossings.
  for (int i = 0; i < nc; ++i) {
    const TypeCone& tc = M.chambers.chambers[i];
    for (int f = 0; f < tc.cone.ineqs.rows(); ++f) {
      WallCrossResult wcr = wall_cross(cfg, M.G, M.circuits, tc, f);
      if (!wcr.flip) {
        M.boundary_facets[wcr.circuit.support].push_back(BoundaryFacet{i, f});
        continue;
      }
      int j = -1;
      for (int t = 0; t < nc; ++t)
        if (M.chambers.chambers[t].fan == wcr.to) j = t;
      if (j < 0 || j < i) continue;  // record each gluing once
      // The matching facet of the neighbor: the opposite wall normal.
      Vector a = tc.cone.ineqs.row(f).transpose().normalized();
      const TypeCone& tj = M.chambers.chambers[j];
      int g = -1;
      double best = 0;
      for (int t = 0; t < tj.cone.ineqs.rows(); ++t) {
        double v = -a.dot(tj.cone.ineqs.row(t).transpose().normalized());
        if (v > best) {
          best = v;
          g = t;
        }
      }
      if (g < 0 || best < 1 - 1e-6) throw std::runtime_error("gluing facet match failed");
      WallGluing wg{i, f, j, g, 0};
      Matrix B = kernel_basis(Matrix(a.transpose()));
      Matrix D = B.transpose() * (M.forms[i].gram - M.forms[j].gram) * B;
      double scale = std::max(1.0, M.forms[i].gram.cwiseAbs().maxCoeff());
      wg.form_mismatch = D.cwiseAbs().maxCoeff() / scale;
      M.gluings.push_back(wg);
    }
  }
  // Interior codimension-2 strata: shared chamber rays inside int ir
  // (computed for quotient dimension 3, where cells are polygons).
  if (M.G.m() == 3) {
    for (int i = 0; i < nc; ++i) {
      const TypeCone& tc = M.chambers.chambers[i];
      for (int r = 0; r < tc.rays.rows(); ++r) {
        Vector y = tc.rays.row(r).transpose().normalized();
        if (interior_membership(y, M.dp) != Membership::IntIr) continue;
        if (M.cells[i].ray_class[r] != RayClass::Finite) continue;
        int s = -1;
        for (size_t t = 0; t < M.strata.size(); ++t)
          if ((M.strata[t].ray - y).norm() <= 1e-6) s = static_cast<int>(t);
        if (s < 0) {
          M.strata.push_back(InteriorStratum{y, {}, 0, false});
          s = static_cast<int>(M.strata.size()) - 1;
        }
        M.strata[s].incident.emplace_back(i, r);
      }
    }
    for (auto& st : M.strata) {
      double total = 0;
      for (auto [i, r] : st.incident) {
        const TypeCone& tc = M.chambers.chambers[i];
        const Matrix& Q = M.cells[i].space.gram;
        Vector w = tc.rays.row(r).transpose();
        // The two edge generators adjacent to the ray w: for each facet
        // tight at w, the other ray spanning the 2-face.
        std::vector<Vector> edges;
        double tol = 1e-6;
        for (int f = 0; f < tc.cone.ineqs.rows(); ++f) {
          Vector a = tc.cone.ineqs.row(f).transpose();
          if (std::abs(a.dot(w)) > tol * a.norm()) continue;
          for (int t = 0; t < tc.rays.rows(); ++t) {
            if (t == r) continue;
            Vector u = tc.rays.row(t).transpose();
            if (std::abs(a.dot(u)) <= tol * a.norm()) edges.push_back(u);
          }
        }
        if (edges.size() != 2) throw std::runtime_error("stratum vertex is not simple");
        // Angle in the q-orthogonal complement of the timelike vertex ray.
        double qw = w.dot(Q * w);
        auto proj = [&](const Vector& u) -> Vector { return u - (u.dot(Q * w) / qw) * w; };
        Vector e1 = proj(edges[0]), e2 = proj(edges[1]);
        double g11 = -e1.dot(Q * e1), g22 = -e2.dot(Q * e2), g12 = -e1.dot(Q * e2);
        total += std::acos(clamp1(g12 / std::sqrt(g11 * g22)));
      }
      st.total_angle = total;
      st.flat = std::abs(total - 2 * M_PI) <= 1e-6;
    }
  }
  return M;
}

std::vector<BoundaryAngle> boundary_right_angle_check(const VectorConfiguration& cfg,
                                                      const ShapeComplex& M, const Circuit& C1,
                                                      const Circuit& C2) {
  const int d = cfg.d();
  if (C1.kind != CircuitKind::Hyperbolic || C2.kind != CircuitKind::Hyperbolic)
    throw HypothesisFail("both circuits must be hyperbolic");
  if (static_cast<int>(C1.support.size()) != d + 1 ||
      static_cast<int>(C2.support.size()) != d + 1)
    throw HypothesisFail("circuits must have d + 1 elements");
  if (std::binary_search(C2.support.begin(), C2.support.end(), C1.p) ||
      std::binary_search(C1.support.begin(), C1.support.end(), C2.p))
    throw HypothesisFail("positive indices must avoid the other circuit");
  auto it1 = M.boundary_facets.find(C1.support);
  auto it2 = M.boundary_facets.find(C2.support);
  if (it1 == M.boundary_facets.end() || it2 == M.boundary_facets.end())
    throw HypothesisFail("circuit does not support a boundary facet");
  std::vector<BoundaryAngle> out;
  for (const BoundaryFacet& b1 : it1->second)
    for (const BoundaryFacet& b2 : it2->second) {
      if (b1.cell != b2.cell) continue;
      const HyperbolicCell& cell = M.cells[b1.cell];
      const FacetRelation& rel = cell.angles[b1.facet][b2.facet];
      if (rel.kind != PairKind::Angle) continue;  // facets do not meet
      BoundaryAngle ba;
      ba.cell = b1.cell;
      ba.angle = rel.value;
      const Matrix& A = M.forms[b1.cell].gram_full;
      ba.c1 = A(C1.p, C1.p);
      ba.c2 = A(C2.p, C2.p);
      Matrix R = A - ba.c1 * C1.lambda * C1.lambda.transpose() -
                 ba.c2 * C2.lambda * C2.lambda.transpose();
      double res = 0;
      for (int t = 0; t < A.rows(); ++t)
        res = std::max({res, std::abs(R(C1.p, t)), std::abs(R(C2.p, t))});
      ba.decomposition_residual = res / std::max(1.0, A.cwiseAbs().maxCoeff());
      out.push_back(ba);
    }
  if (out.empty()) throw HypothesisFail("facets do not meet in codimension 2");
  return out;
}

ConeAngleVerdict interior_cone_angle(const ShapeComplex& M, int stratum) {
  const InteriorStratum& st = M.strata.at(stratum);
  ConeAngleVerdict v;
  v.angle = st.total_angle;
  v.flat = st.flat;
  std::vector<int> cells;
  for (auto [c, r] : st.incident) cells.push_back(c);
  for (auto [c, r] : st.incident) {
    const auto& tbl = M.cells[c].angles;
    const TypeCone& tc = M.chambers.chambers[c];
    Vector w = tc.rays.row(r).transpose();
    for (int f1 = 0; f1 < tc.cone.ineqs.rows(); ++f1)
      for (int f2 = f1 + 1; f2 < tc.cone.ineqs.rows(); ++f2) {
        if (std::abs(tc.cone.ineqs.row(f1).dot(w)) > 1e-6) continue;
        if (std::abs(tc.cone.ineqs.row(f2).dot(w)) > 1e-6) continue;
        if (tbl[f1][f2].kind == PairKind::Angle &&
            std::abs(tbl[f1][f2].value - M_PI / 2) <= 1e-6)
          v.right_angle_present = true;
      }
  }
  // Some wall hyperplane through the stratum never changes the form.
  std::vector<Vector> planes;
  std::vector<bool> constant;
  for (const WallGluing& g : M.gluings) {
    bool inc1 = std::find(cells.begin(), cells.end(), g.cell1) != cells.end();
    bool inc2 = std::find(cells.begin(), cells.end(), g.cell2) != cells.end();
    if (!inc1 || !inc2) continue;
    Vector a = M.chambers.chambers[g.cell1].cone.ineqs.row(g.facet1).transpose().normalized();
    if (std::abs(a.dot(st.ray)) > 1e-6) continue;  // wall does not contain the stratum
    int p = -1;
    for (size_t t = 0; t < planes.size(); ++t)
      if ((planes[t] - a).norm() <= 1e-6 || (planes[t] + a).norm() <= 1e-6)
        p = static_cast<int>(t);
    if (p < 0) {
      planes.push_back(a);
      constant.push_back(true);
      p = static_cast<int>(planes.size()) - 1;
    }
    if (g.form_mismatch > 1e-8) constant[p] = false;
  }
  for (bool c : constant)
    if (c) v.form_constant = true;
  return v;
}

bool ideal_ray_is_segment(const VectorConfiguration& cfg, const GaleDiagram& G, const Vector& y) {
  ConcretePolytope P = solve_polytope(cfg, G.lift(y));
  if (P.dim != 1 || P.vertices.rows() != 2) return false;
  Vector u = (P.vertices.row(1) - P.vertices.row(0)).transpose().normalized();
  // Normals orthogonal to the segment must positively span its complement.
  std::vector<int> sub;
  for (int i = 0; i < cfg.n(); ++i)
    if (std::abs(cfg.V.row(i).dot(u)) <= 1e3 * epsilon() * cfg.V.row(i).norm()) sub.push_back(i);
  if (sub.empty()) return false;
  Matrix S(static_cast<int>(sub.size()), cfg.d());
  for (size_t i = 0; i < sub.size(); ++i) S.row(i) = cfg.V.row(sub[i]);
  PolyCone c = PolyCone::from_rays(S);
  return c.rays.rows() == 0 && c.lineality.rows() == cfg.d() - 1;
}

}  // namespace shapecone
