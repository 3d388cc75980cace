#include "shapecone/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace shapecone {

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int pos) {
    if (pos == k) { f(idx); return; }
    for (int i = start; i <= n - (k - pos); ++i) {
      idx[pos] = i;
      rec(i + 1, pos + 1);
    }
  };
  rec(0, 0);
}

Matrix select_rows(const Matrix& M, const std::vector<int>& idx) {
  Matrix S(static_cast<int>(idx.size()), M.cols());
  for (size_t i = 0; i < idx.size(); ++i) S.row(static_cast<int>(i)) = M.row(idx[i]);
  return S;
}

// Unit normal of the hyperplane spanned by V_sigma (sigma of rank d-1).
Vector wall_normal(const Matrix& V, const std::vector<int>& sigma) {
  Matrix K = kernel_basis(select_rows(V, sigma));
  if (K.cols() != 1) throw NotAWall();
  return K.col(0).normalized();
}

}  // namespace

ConcretePolytope solve_polytope(const VectorConfiguration& cfg, const Vector& h) {
  const int n = cfg.n(), d = cfg.d();
  const double eps = epsilon();
  ConcretePolytope P;
  P.V = cfg.V;
  P.h = h;
  double hscale = std::max(1.0, h.size() ? h.cwiseAbs().maxCoeff() : 0.0);
  std::vector<Vector> verts;
  for_each_subset(n, d, [&](const std::vector<int>& B) {
    Matrix VB = select_rows(cfg.V, B);
    if (rank_of(VB) < d) return;
    Vector hB(d);
    for (int i = 0; i < d; ++i) hB(i) = h(B[i]);
    Vector x = VB.partialPivLu().solve(hB);
    double tol = eps * std::max(hscale, x.norm()) * 10;
    for (int i = 0; i < n; ++i)
      if (cfg.V.row(i).dot(x) > h(i) + tol) return;
    for (const auto& v : verts)
      if ((v - x).norm() <= tol) return;
    verts.push_back(x);
  });
  P.vertices.resize(static_cast<int>(verts.size()), d);
  for (size_t i = 0; i < verts.size(); ++i) P.vertices.row(static_cast<int>(i)) = verts[i];
  for (const auto& x : verts) {
    double tol = eps * std::max(hscale, x.norm()) * 10;
    std::vector<int> tight;
    for (int i = 0; i < n; ++i)
      if (std::abs(cfg.V.row(i).dot(x) - h(i)) <= tol) tight.push_back(i);
    P.vertex_facets.push_back(tight);
  }
  if (!verts.empty()) {
    Matrix diffs(static_cast<int>(verts.size()) - 1, d);
    for (size_t i = 1; i < verts.size(); ++i)
      diffs.row(static_cast<int>(i) - 1) = (verts[i] - verts[0]).transpose();
    P.dim = diffs.rows() ? rank_of(diffs) : 0;
  }
  Matrix rec_rays, rec_lin;
  double_description(Matrix(-cfg.V), Matrix(0, d), rec_rays, rec_lin);
  P.bounded = rec_rays.rows() == 0 && rec_lin.rows() == 0;
  if (!P.bounded) {
    Matrix rec(rec_rays.rows() + 2 * rec_lin.rows(), d);
    rec.topRows(rec_rays.rows()) = rec_rays;
    rec.middleRows(rec_rays.rows(), rec_lin.rows()) = rec_lin;
    rec.bottomRows(rec_lin.rows()) = -rec_lin;
    P.recession = rec;
  }
  P.empty = P.bounded && verts.empty();
  return P;
}

struct OutsideSupportError : std::runtime_error {
  OutsideSupportError() : std::runtime_error("direction outside the normal fan support") {}
};

double support_function(const ConcretePolytope& P, const Vector& v) {
  if (P.empty) throw std::runtime_error("empty polytope has no support function");
  if (!P.bounded)
    for (int i = 0; i < P.recession.rows(); ++i)
      if (P.recession.row(i).dot(v) > epsilon() * v.norm()) throw OutsideSupportError();
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < P.vertices.rows(); ++i)
    best = std::max(best, P.vertices.row(i).dot(v));
  return best;
}

AbstractFan normal_fan(const VectorConfiguration& cfg, const ConcretePolytope& P) {
  if (P.dim < P.d()) throw LowDimensional();
  return fan_from_maximal(cfg, P.vertex_facets);
}

Vector edge_length_functional(const VectorConfiguration& cfg, const AbstractFan& fan,
                              const std::vector<int>& sigma) {
  const int n = cfg.n(), d = cfg.d();
  std::vector<std::vector<int>> flanking;
  for (const auto& rho : fan.maximal)
    if (std::includes(rho.begin(), rho.end(), sigma.begin(), sigma.end()))
      flanking.push_back(rho);
  if (flanking.size() != 2) throw NotAWall();
  auto extra = [&](const std::vector<int>& rho) {
    std::vector<int> e;
    std::set_difference(rho.begin(), rho.end(), sigma.begin(), sigma.end(),
                        std::back_inserter(e));
    return e;
  };
  auto e1 = extra(flanking[0]), e2 = extra(flanking[1]);
  if (e1.size() != 1 || e2.size() != 1) throw NotAWall();  // simplicial walls only
  int i1 = e1[0], i2 = e2[0];
  // Circuit relation on {v_i1, v_i2} union sigma.
  std::vector<int> sub = {i1, i2};
  sub.insert(sub.end(), sigma.begin(), sigma.end());
  Matrix Vsub = select_rows(cfg.V, sub);
  Matrix K = kernel_basis(Matrix(Vsub.transpose()));
  if (K.cols() != 1) throw NotAWall();
  Vector lam = K.col(0);
  Vector e_sigma = wall_normal(cfg.V, sigma);
  if (cfg.V.row(i1).dot(e_sigma) < 0) e_sigma = -e_sigma;  // orient rho2 -> rho1
  double denom = lam(0) * cfg.V.row(i1).dot(e_sigma);
  Vector c = Vector::Zero(n);
  for (size_t i = 0; i < sub.size(); ++i) c(sub[i]) += lam(static_cast<int>(i)) / denom;
  return c;
}

Vector quotient_functional(const GaleDiagram& G, const Vector& c) {
  auto w = solve_linear(G.Vbar, c);
  if (!w) throw std::runtime_error("functional does not descend to quotient coordinates");
  return *w;
}

namespace {

// Simplicial refinement of a complete fan (star triangulation of each
// non-simplicial maximal cone; d = 3 only, lower d is always simplicial).
// Returns refined maximal cones plus the list of internal walls.
void refine_fan(const VectorConfiguration& cfg, const AbstractFan& fan,
                std::vector<std::vector<int>>& maximal_out,
                std::vector<std::vector<int>>& internal_walls) {
  maximal_out.clear();
  internal_walls.clear();
  for (const auto& rho : fan.maximal) {
    if (static_cast<int>(rho.size()) == fan.d) {
      maximal_out.push_back(rho);
      continue;
    }
    if (fan.d != 3)
      throw std::runtime_error("simplicial refinement implemented for d <= 3 only");
    // Cyclic order of the generators around the cone axis.
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    for (int i : rho) axis += cfg.V.row(i).normalized().transpose();
    axis.normalize();
    Eigen::Vector3d b1 = axis.unitOrthogonal();
    Eigen::Vector3d b2 = axis.cross(b1);
    std::vector<std::pair<double, int>> ang;
    for (int i : rho) {
      Vector v = cfg.V.row(i).transpose();
      ang.push_back({std::atan2(v.dot(b2), v.dot(b1)), i});
    }
    std::sort(ang.begin(), ang.end());
    // Rotate so the smallest index leads.
    size_t start = 0;
    for (size_t i = 0; i < ang.size(); ++i)
      if (ang[i].second < ang[start].second) start = i;
    std::vector<int> cyc;
    for (size_t i = 0; i < ang.size(); ++i)
      cyc.push_back(ang[(start + i) % ang.size()].second);
    for (size_t j = 1; j + 1 < cyc.size(); ++j) {
      std::vector<int> tri = {cyc[0], cyc[j], cyc[j + 1]};
      std::sort(tri.begin(), tri.end());
      maximal_out.push_back(tri);
      if (j + 2 < cyc.size()) {
        std::vector<int> w = {cyc[0], cyc[j + 1]};
        std::sort(w.begin(), w.end());
        internal_walls.push_back(w);
      }
    }
  }
}

}  // namespace

std::vector<Vector> span_equations(const VectorConfiguration& cfg, const GaleDiagram& G,
                                   const AbstractFan& fan) {
  if (fan.simplicial) return {};
  std::vector<std::vector<int>> refined, internal;
  refine_fan(cfg, fan, refined, internal);
  AbstractFan fine = fan_from_maximal(cfg, refined);
  std::vector<Vector> eqs;
  for (const auto& w : internal)
    eqs.push_back(quotient_functional(G, edge_length_functional(cfg, fine, w)));
  return eqs;
}

TypeCone type_cone_inequalities(const VectorConfiguration& cfg, const GaleDiagram& G,
                                const AbstractFan& fan) {
  if (!fan.complete) throw NotPolytopal();
  TypeCone tc;
  tc.fan = fan;
  std::vector<std::vector<int>> refined, internal;
  refine_fan(cfg, fan, refined, internal);
  AbstractFan fine = fan.simplicial ? fan : fan_from_maximal(cfg, refined);
  std::vector<Vector> ineqs, eqs;
  for (const auto& w : fan_walls(cfg, fine)) {
    Vector q = quotient_functional(G, edge_length_functional(cfg, fine, w.sigma));
    bool is_internal = false;
    for (const auto& iw : internal)
      if (iw == w.sigma) is_internal = true;
    (is_internal ? eqs : ineqs).push_back(q);
  }
  tc.inequalities.resize(static_cast<int>(ineqs.size()), G.m());
  for (size_t i = 0; i < ineqs.size(); ++i) tc.inequalities.row(static_cast<int>(i)) = ineqs[i];
  tc.equations.resize(static_cast<int>(eqs.size()), G.m());
  for (size_t i = 0; i < eqs.size(); ++i) tc.equations.row(static_cast<int>(i)) = eqs[i];
  tc.cone = PolyCone::from_inequalities(tc.inequalities, tc.equations);
  tc.rays = tc.cone.rays;
  Vector p = tc.cone.relint_point();
  for (int i = 0; i < tc.inequalities.rows(); ++i)
    if (tc.inequalities.row(i).dot(p) <= epsilon() * std::max(1.0, p.norm()))
      throw NotPolytopal();
  return tc;
}

ConcretePolytope truncate_face(const VectorConfiguration& cfg, const ConcretePolytope& P,
                               const std::vector<int>& sigma, double depth) {
  PolyCone nc = PolyCone::from_rays(select_rows(cfg.V, sigma));
  Vector w = nc.rays.colwise().sum().transpose();
  w.normalize();
  double hw = support_function(P, w);
  Matrix V2(P.n() + 1, P.d());
  V2.topRows(P.n()) = P.V;
  V2.bottomRows(1) = w.transpose();
  Vector h2(P.n() + 1);
  h2.head(P.n()) = P.h;
  h2(P.n()) = hw - depth;
  // Vertices not on the face must survive the cut.
  for (int i = 0; i < P.vertices.rows(); ++i) {
    const auto& tight = P.vertex_facets[i];
    if (std::includes(tight.begin(), tight.end(), sigma.begin(), sigma.end())) continue;
    if (P.vertices.row(i).dot(w) > h2(P.n()) + epsilon()) throw TooDeep();
  }
  VectorConfiguration cfg2;
  cfg2.V = V2;
  return solve_polytope(cfg2, h2);
}

AbstractFan minkowski_refinement(const VectorConfiguration& cfg, const AbstractFan& fan1,
                                 const AbstractFan& fan2) {
  if (fan1.n != fan2.n || fan1.d != fan2.d || !fan1.complete || !fan2.complete)
    throw SupportMismatch();
  std::set<std::vector<int>> cells;
  for (const auto& r1 : fan1.maximal)
    for (const auto& r2 : fan2.maximal) {
      std::vector<int> s;
      std::set_intersection(r1.begin(), r1.end(), r2.begin(), r2.end(),
                            std::back_inserter(s));
      if (s.empty()) continue;
      Matrix M = select_rows(cfg.V, s);
      if (rank_of(M) == fan1.d) cells.insert(s);
    }
  // Keep inclusion-maximal index sets: a subset generates a subcone.
  std::vector<std::vector<int>> maximal;
  for (const auto& s : cells) {
    bool contained = false;
    for (const auto& t : cells)
      if (t != s && std::includes(t.begin(), t.end(), s.begin(), s.end())) contained = true;
    if (!contained) maximal.push_back(s);
  }
  return fan_from_maximal(cfg, maximal);
}

namespace {

Vector relative_direction(const Matrix& V, const std::vector<int>& sigma,
                          const std::vector<int>& tau) {
  // Unit component of v_{sigma minus tau} orthogonal to span(V_tau).
  std::vector<int> diff;
  std::set_difference(sigma.begin(), sigma.end(), tau.begin(), tau.end(),
                      std::back_inserter(diff));
  Vector v = V.row(diff.front()).transpose();
  if (!tau.empty()) {
    Matrix T = select_rows(V, tau);
    Matrix B = T.transpose().householderQr().householderQ();
    for (int j = 0; j < rank_of(T); ++j) {
      Vector b = B.col(j);
      v -= v.dot(b) * b;
    }
  }
  return v.normalized();
}

}  // namespace

WeightVector edge_weights(const VectorConfiguration& cfg, const ConcretePolytope& P) {
  for (const auto& tight : P.vertex_facets)
    if (static_cast<int>(tight.size()) != P.d()) throw NotSimple();
  AbstractFan fan = normal_fan(cfg, P);
  WeightVector wv;
  std::map<std::vector<int>, int> vert_of;
  for (int i = 0; i < P.vertices.rows(); ++i) vert_of[P.vertex_facets[i]] = i;
  for (const auto& w : fan_walls(cfg, fan)) {
    Vector x1 = P.vertices.row(vert_of.at(w.rho1)).transpose();
    Vector x2 = P.vertices.row(vert_of.at(w.rho2)).transpose();
    wv.a[w.sigma] = (x1 - x2).norm();
  }
  // Closure around every (d-2)-dimensional cone.
  double total = 0;
  for (const auto& [s, v] : wv.a) total += v;
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    if (fan.cone_dims[i] != fan.d - 2) continue;
    const auto& tau = fan.cones[i];
    Vector sum = Vector::Zero(P.d());
    for (const auto& [sigma, len] : wv.a)
      if (std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end()))
        sum += len * relative_direction(cfg.V, sigma, tau);
    if (sum.norm() > epsilon() * std::max(1.0, total) * 10)
      throw std::runtime_error("edge weights violate closure (unexpected)");
  }
  return wv;
}

ConcretePolytope christoffel_reconstruct(const VectorConfiguration& cfg,
                                         const AbstractFan& fan, const WeightVector& wv) {
  if (!fan.simplicial || !fan.complete)
    throw std::runtime_error("christoffel reconstruction needs a simplicial complete fan");
  const int d = cfg.d();
  double total = 0;
  for (const auto& [s, v] : wv.a) {
    if (v < -epsilon()) throw NotAWeight();
    total += std::abs(v);
  }
  double tol = epsilon() * std::max(1.0, total);
  // Closure condition at every (d-2)-cone.
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    if (fan.cone_dims[i] != fan.d - 2) continue;
    const auto& tau = fan.cones[i];
    Vector sum = Vector::Zero(d);
    for (const auto& [sigma, len] : wv.a)
      if (std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end()))
        sum += len * relative_direction(cfg.V, sigma, tau);
    if (sum.norm() > tol * 10) throw NotAWeight();
  }
  auto walls = fan_walls(cfg, fan);
  std::map<std::vector<int>, Vector> x;
  std::queue<std::vector<int>> bfs;
  x[fan.maximal.front()] = Vector::Zero(d);
  bfs.push(fan.maximal.front());
  while (!bfs.empty()) {
    auto rho = bfs.front();
    bfs.pop();
    for (const auto& w : walls) {
      if (w.rho1 != rho && w.rho2 != rho) continue;
      const auto& other = (w.rho1 == rho) ? w.rho2 : w.rho1;
      // Edge direction: orthogonal to the wall's span, moving away from the
      // facet that is tight only on the far cone.
      std::vector<int> extra;
      std::set_difference(other.begin(), other.end(), w.sigma.begin(), w.sigma.end(),
                          std::back_inserter(extra));
      Vector u = wall_normal(cfg.V, w.sigma);
      if (cfg.V.row(extra.front()).dot(u) > 0) u = -u;
      auto it = wv.a.find(w.sigma);
      if (it == wv.a.end()) throw NotAWeight();
      Vector cand = x.at(rho) - it->second * u;
      auto ex = x.find(other);
      if (ex == x.end()) {
        x[other] = cand;
        bfs.push(other);
      } else if ((ex->second - cand).norm() > tol * 10) {
        throw NotAWeight();
      }
    }
  }
  // Support vector and convexity.
  Vector h(cfg.n());
  h.setConstant(-std::numeric_limits<double>::infinity());
  for (const auto& [rho, xv] : x)
    for (int i = 0; i < cfg.n(); ++i) h(i) = std::max(h(i), cfg.V.row(i).dot(xv));
  for (const auto& [rho, xv] : x)
    for (int i : rho)
      if (std::abs(cfg.V.row(i).dot(xv) - h(i)) > tol * 10) throw NonConvex();
  ConcretePolytope P = solve_polytope(cfg, h);
  if (normal_fan(cfg, P).hash() != fan.hash()) throw NonConvex();
  return P;
}

namespace {

// (k-)volume of a polytope given as points with facet-incidence labels; the
// points are expressed in an orthonormal coordinate system of dimension dim.
double vol_rec(const Matrix& pts, const std::vector<std::set<int>>& inc, int dim) {
  const int m = static_cast<int>(pts.rows());
  if (m == 0) return 0.0;
  if (dim == 0) return 1.0;
  if (dim == 1) {
    double lo = pts.col(0).minCoeff(), hi = pts.col(0).maxCoeff();
    return hi - lo;
  }
  Vector c = pts.colwise().mean().transpose();
  if (dim == 2) {
    std::vector<std::pair<double, int>> ang;
    for (int i = 0; i < m; ++i)
      ang.push_back({std::atan2(pts(i, 1) - c(1), pts(i, 0) - c(0)), i});
    std::sort(ang.begin(), ang.end());
    double area = 0;
    for (int i = 0; i < m; ++i) {
      const auto& p = pts.row(ang[i].second);
      const auto& q = pts.row(ang[(i + 1) % m].second);
      area += p(0) * q(1) - q(0) * p(1);
    }
    return std::abs(area) / 2.0;
  }
  // Collect facet labels and recurse.
  std::set<int> labels;
  for (const auto& s : inc) labels.insert(s.begin(), s.end());
  std::set<std::vector<int>> seen;
  double vol = 0;
  for (int f : labels) {
    std::vector<int> on;
    for (int i = 0; i < m; ++i)
      if (inc[i].count(f)) on.push_back(i);
    if (static_cast<int>(on.size()) < dim) continue;
    if (!seen.insert(on).second) continue;
    Matrix D(static_cast<int>(on.size()) - 1, dim);
    for (size_t i = 1; i < on.size(); ++i)
      D.row(static_cast<int>(i) - 1) = pts.row(on[i]) - pts.row(on[0]);
    if (rank_of(D) != dim - 1) continue;
    Matrix K = kernel_basis(D);
    Vector nrm = K.col(0).normalized();
    double offset = nrm.dot(pts.row(on[0]).transpose());
    double height = offset - nrm.dot(c);
    if (height < 0) { nrm = -nrm; offset = -offset; height = -height; }
    // Orthonormal basis of the facet hyperplane.
    Matrix B = kernel_basis(Matrix(nrm.transpose()));
    Eigen::HouseholderQR<Matrix> qr(B);
    Matrix Q = qr.householderQ() * Matrix::Identity(dim, dim - 1);
    Matrix sub(static_cast<int>(on.size()), dim - 1);
    std::vector<std::set<int>> subinc;
    for (size_t i = 0; i < on.size(); ++i) {
      sub.row(static_cast<int>(i)) = (pts.row(on[i]) - pts.row(on[0])) * Q;
      auto s = inc[on[i]];
      s.erase(f);
      subinc.push_back(s);
    }
    vol += height * vol_rec(sub, subinc, dim - 1) / dim;
  }
  return vol;
}

}  // namespace

double volume(const ConcretePolytope& P) {
  if (!P.bounded) throw Unbounded();
  if (P.empty || P.dim < P.d()) return 0.0;
  std::vector<std::set<int>> inc;
  for (const auto& t : P.vertex_facets) inc.emplace_back(t.begin(), t.end());
  return vol_rec(P.vertices, inc, P.d());
}

Vector facet_volumes(const ConcretePolytope& P) {
  if (!P.bounded) throw Unbounded();
  Vector areas = Vector::Zero(P.n());
  if (P.empty || P.dim < P.d()) return areas;
  const int d = P.d();
  for (int f = 0; f < P.n(); ++f) {
    std::vector<int> on;
    for (int i = 0; i < P.vertices.rows(); ++i)
      if (std::binary_search(P.vertex_facets[i].begin(), P.vertex_facets[i].end(), f))
        on.push_back(i);
    if (static_cast<int>(on.size()) < d) continue;
    Vector nrm = P.V.row(f).normalized().transpose();
    Matrix B = kernel_basis(Matrix(nrm.transpose()));
    Eigen::HouseholderQR<Matrix> qr(B);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, d - 1);
    Matrix sub(static_cast<int>(on.size()), d - 1);
    std::vector<std::set<int>> subinc;
    for (size_t i = 0; i < on.size(); ++i) {
      sub.row(static_cast<int>(i)) = (P.vertices.row(on[i]) - P.vertices.row(on[0])) * Q;
      std::set<int> s(P.vertex_facets[on[i]].begin(), P.vertex_facets[on[i]].end());
      s.erase(f);
      subinc.push_back(s);
    }
    Matrix D(static_cast<int>(on.size()) - 1, d);
    for (size_t i = 1; i < on.size(); ++i)
      D.row(static_cast<int>(i) - 1) = P.vertices.row(on[i]) - P.vertices.row(on[0]);
    if (D.rows() == 0 || rank_of(D) != d - 1) continue;
    areas(f) = vol_rec(sub, subinc, d - 1);
  }
  return areas;
}

}  // namespace shapecone
