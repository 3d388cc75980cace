#include "shapecone/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace shapecone {

namespace {

std::vector<const ConcretePolytope*> check_family(const std::vector<ConcretePolytope>& bodies) {
  if (bodies.empty()) throw BadConfiguration("empty body list");
  const int d = bodies[0].d();
  if (static_cast<int>(bodies.size()) != d)
    throw BadConfiguration("mixed volume needs exactly d bodies");
  if (d > caps().max_d) throw TooLarge("dimension exceeds the cap");
  std::vector<const ConcretePolytope*> ptrs;
  for (const auto& K : bodies) {
    if (K.d() != d) throw BadConfiguration("bodies live in different dimensions");
    if (!K.bounded) throw Unbounded();
    if (K.empty || K.vertices.rows() == 0) throw BadConfiguration("empty body");
    ptrs.push_back(&K);
  }
  return ptrs;
}

// Candidate facet normals of sum_j K_j: rays of the common refinement of
// the normal fans, collected as rays of intersections of vertex normal
// cones, one vertex per body.
std::vector<Vector> sum_facet_normals(const std::vector<const ConcretePolytope*>& Ks) {
  const int d = Ks[0]->d();
  const double eps = epsilon();
  // H-representation of every vertex normal cone pos(V_tight).
  std::vector<std::vector<PolyCone>> vcones(Ks.size());
  for (size_t b = 0; b < Ks.size(); ++b) {
    const auto& K = *Ks[b];
    for (int v = 0; v < K.vertices.rows(); ++v) {
      Matrix gen(static_cast<int>(K.vertex_facets[v].size()), d);
      for (size_t t = 0; t < K.vertex_facets[v].size(); ++t)
        gen.row(t) = K.V.row(K.vertex_facets[v][t]);
      vcones[b].push_back(PolyCone::from_rays(gen));
    }
  }
  std::vector<Vector> normals;
  auto add = [&](const Vector& u) {
    double nrm = u.norm();
    if (nrm <= eps) return;
    Vector w = u / nrm;
    for (const Vector& p : normals)
      if ((p - w).norm() <= 1e3 * eps) return;
    normals.push_back(w);
  };
  std::vector<int> idx(Ks.size(), 0);
  while (true) {
    int ni = 0, ne = 0;
    for (size_t b = 0; b < Ks.size(); ++b) {
      ni += static_cast<int>(vcones[b][idx[b]].ineqs.rows());
      ne += static_cast<int>(vcones[b][idx[b]].eqs.rows());
    }
    Matrix A(ni, d), E(ne, d);
    ni = ne = 0;
    for (size_t b = 0; b < Ks.size(); ++b) {
      const PolyCone& c = vcones[b][idx[b]];
      A.middleRows(ni, c.ineqs.rows()) = c.ineqs;
      E.middleRows(ne, c.eqs.rows()) = c.eqs;
      ni += static_cast<int>(c.ineqs.rows());
      ne += static_cast<int>(c.eqs.rows());
    }
    Matrix rays, lin;
    double_description(A, E, rays, lin);
    for (int r = 0; r < rays.rows(); ++r) add(rays.row(r).transpose());
    // odometer over vertex tuples
    size_t b = 0;
    while (b < Ks.size() && ++idx[b] == static_cast<int>(vcones[b].size())) idx[b++] = 0;
    if (b == Ks.size()) break;
  }
  return normals;
}

ConcretePolytope solve_on_normals(const std::vector<Vector>& normals, const Vector& h) {
  const int d = static_cast<int>(normals[0].size());
  Matrix N(static_cast<int>(normals.size()), d);
  for (size_t i = 0; i < normals.size(); ++i) N.row(i) = normals[i].transpose();
  VectorConfiguration cfg;  // built raw: internal sums may exceed the input caps
  cfg.V = N;
  cfg.unit_normalized = true;
  return solve_polytope(cfg, h);
}

// Volume of sum_j lambda_j K_j, with the facet-normal candidates precomputed.
double sum_volume(const std::vector<const ConcretePolytope*>& Ks, const std::vector<Vector>& scale,
                  const std::vector<Vector>& normals) {
  const int d = Ks[0]->d();
  if (static_cast<int>(normals.size()) < d) return 0;
  Matrix N(static_cast<int>(normals.size()), d);
  for (size_t i = 0; i < normals.size(); ++i) N.row(i) = normals[i].transpose();
  if (rank_of(N) < d) return 0;
  Vector h = Vector::Zero(N.rows());
  for (int i = 0; i < N.rows(); ++i)
    for (size_t b = 0; b < Ks.size(); ++b)
      h[i] += scale[b][i] * support_function(*Ks[b], normals[i]);
  ConcretePolytope P = solve_on_normals(normals, h);
  if (P.dim < d) return 0;
  return volume(P);
}

double factorial(int d) {
  double f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

}  // namespace

ConcretePolytope minkowski_sum(const ConcretePolytope& A, const ConcretePolytope& B) {
  std::vector<const ConcretePolytope*> Ks{&A, &B};
  auto normals = sum_facet_normals(Ks);
  Vector h(static_cast<int>(normals.size()));
  for (size_t i = 0; i < normals.size(); ++i)
    h[static_cast<int>(i)] = support_function(A, normals[i]) + support_function(B, normals[i]);
  return solve_on_normals(normals, h);
}

double mixed_volume(const std::vector<ConcretePolytope>& bodies) {
  auto ptrs = check_family(bodies);
  const int d = static_cast<int>(bodies.size());
  double acc = 0;
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<const ConcretePolytope*> sub;
    for (int b = 0; b < d; ++b)
      if (mask & (1 << b)) sub.push_back(ptrs[b]);
    auto normals = sum_facet_normals(sub);
    std::vector<Vector> ones(sub.size(), Vector::Ones(static_cast<int>(normals.size())));
    double v = sum_volume(sub, ones, normals);
    int sgn = ((d - static_cast<int>(sub.size())) % 2) ? -1 : 1;
    acc += sgn * v;
  }
  return acc / factorial(d);
}

double mixed_volume_grid(const std::vector<ConcretePolytope>& bodies) {
  auto ptrs = check_family(bodies);
  const int d = static_cast<int>(bodies.size());
  // All facet normals the scaled sums can have (independent of positive
  // scales, since the normal fans do not move).
  auto normals = sum_facet_normals(ptrs);
  // Monomials of total degree d in d variables.
  std::vector<std::vector<int>> mono;
  std::vector<int> cur(d, 0);
  std::function<void(int, int)> gen = [&](int pos, int left) {
    if (pos == d - 1) {
      cur[pos] = left;
      mono.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[pos] = k;
      gen(pos + 1, left - k);
    }
  };
  gen(0, d);
  // Grid {1..d}^d.
  std::vector<std::vector<int>> pts;
  std::vector<int> lam(d, 1);
  while (true) {
    pts.push_back(lam);
    int b = 0;
    while (b < d && ++lam[b] > d) lam[b++] = 1;
    if (b == d) break;
  }
  Matrix M(static_cast<int>(pts.size()), static_cast<int>(mono.size()));
  Vector rhs(static_cast<int>(pts.size()));
  for (size_t p = 0; p < pts.size(); ++p) {
    for (size_t m = 0; m < mono.size(); ++m) {
      double t = 1;
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < mono[m][b]; ++k) t *= pts[p][b];
      M(static_cast<int>(p), static_cast<int>(m)) = t;
    }
    std::vector<Vector> scale(d);
    for (int b = 0; b < d; ++b)
      scale[b] = Vector::Constant(static_cast<int>(normals.size()), double(pts[p][b]));
    rhs[static_cast<int>(p)] = sum_volume(ptrs, scale, normals);
  }
  if (rank_of(M) < static_cast<int>(mono.size())) throw DegenerateSum();
  Vector c = M.completeOrthogonalDecomposition().solve(rhs);
  double vscale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
  if ((M * c - rhs).cwiseAbs().maxCoeff() > 1e-7 * vscale) throw DegenerateSum();
  for (size_t m = 0; m < mono.size(); ++m)
    if (*std::max_element(mono[m].begin(), mono[m].end()) == 1)
      return c[static_cast<int>(m)] / factorial(d);
  throw DegenerateSum();
}

bool positivity_witness(const std::vector<ConcretePolytope>& bodies) {
  auto ptrs = check_family(bodies);
  const int d = static_cast<int>(bodies.size());
  const double eps = epsilon();
  // Edge directions per body, deduplicated up to sign.
  std::vector<std::vector<Vector>> dirs(d);
  for (int b = 0; b < d; ++b) {
    const auto& K = *ptrs[b];
    for (int i = 0; i < K.vertices.rows(); ++i)
      for (int j = i + 1; j < K.vertices.rows(); ++j) {
        std::vector<int> common;
        std::set_intersection(K.vertex_facets[i].begin(), K.vertex_facets[i].end(),
                              K.vertex_facets[j].begin(), K.vertex_facets[j].end(),
                              std::back_inserter(common));
        Matrix T(static_cast<int>(common.size()), d);
        for (size_t t = 0; t < common.size(); ++t) T.row(t) = K.V.row(common[t]);
        if (common.empty() || rank_of(T) < d - 1) continue;
        Vector u = (K.vertices.row(j) - K.vertices.row(i)).transpose();
        if (u.norm() <= eps) continue;
        u.normalize();
        bool dup = false;
        for (const Vector& w : dirs[b])
          if ((w - u).norm() <= 1e3 * eps || (w + u).norm() <= 1e3 * eps) dup = true;
        if (!dup) dirs[b].push_back(u);
      }
    if (dirs[b].empty()) return false;
  }
  // Backtracking transversal: pick one direction per body, each pick must
  // raise the rank.
  std::vector<Vector> basis;
  std::function<bool(int)> pick = [&](int b) -> bool {
    if (b == d) return true;
    for (const Vector& u : dirs[b]) {
      Vector r = u;
      for (const Vector& e : basis) r -= r.dot(e) * e;
      if (r.norm() <= 1e3 * eps) continue;
      basis.push_back(r.normalized());
      if (pick(b + 1)) return true;
      basis.pop_back();
    }
    return false;
  };
  return pick(0);
}

namespace {

// Fit the quadratic f on the chamber tc by exact second differences around
// a deep interior point; f must be a quadratic form on the cone's span.
QuadraticForm polarize_on_chamber(const GaleDiagram& G, const TypeCone& tc,
                                  const std::function<double(const Vector&)>& f) {
  const int m = G.m();
  // Orthonormal basis of the chamber's span (the kernel of its equations).
  Matrix W;
  if (tc.equations.rows() == 0) {
    W = Matrix::Identity(m, m);
  } else {
    Matrix K = kernel_basis(tc.equations);
    W = Eigen::HouseholderQR<Matrix>(K).householderQ() * Matrix::Identity(m, K.cols());
  }
  const int k = static_cast<int>(W.cols());
  if (k == 0) throw NotPolytopal();
  Vector y0 = tc.cone.relint_point();
  if (y0.norm() <= epsilon()) throw NotPolytopal();
  y0.normalize();
  double R = 16;
  auto all_inside = [&](double r) {
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        if (!tc.cone.relint_contains(r * y0 + W.col(i) + W.col(j))) return false;
    return tc.cone.relint_contains(r * y0);
  };
  while (R < 1e9 && !all_inside(R)) R *= 2;
  if (!all_inside(R)) throw NotPolytopal();
  Vector base = R * y0;
  double f0 = f(base);
  std::vector<double> fi(k);
  for (int i = 0; i < k; ++i) fi[i] = f(base + W.col(i));
  Matrix gspan(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      double v = (f(base + W.col(i) + W.col(j)) - fi[i] - fi[j] + f0) / 2;
      gspan(i, j) = v;
      gspan(j, i) = v;
    }
  QuadraticForm q;
  q.gram = W * gspan * W.transpose();
  q.gram_full = G.projection.transpose() * q.gram * G.projection;
  q.fan = tc.fan;
  q.signature = symmetric_signature(gspan);
  return q;
}

}  // namespace

QuadraticForm q_form(const VectorConfiguration& cfg, const GaleDiagram& G, const TypeCone& tc,
                     const std::vector<BodySpec>& bodies) {
  const int d = cfg.d();
  if (static_cast<int>(bodies.size()) != d - 2)
    throw BadConfiguration("q_form needs d - 2 bodies");
  bool ball = false;
  for (const auto& b : bodies)
    if (b.kind == BodySpec::Kind::UnitBall) ball = true;
  if (ball && d != 3) throw UnsupportedBall();
  std::vector<ConcretePolytope> Ks;
  if (!ball)
    for (const auto& b : bodies) Ks.push_back(solve_polytope(cfg, b.h));
  auto f = [&](const Vector& y) -> double {
    ConcretePolytope P = solve_polytope(cfg, G.lift(y));
    if (ball) return facet_volumes(P).sum() / 3.0;  // vol(P, P, B) for d = 3
    if (d == 2) return volume(P);                   // vol(P, P) is the area
    std::vector<ConcretePolytope> args{P, P};
    for (const auto& K : Ks) args.push_back(K);
    return mixed_volume(args);
  };
  QuadraticForm q = polarize_on_chamber(G, tc, f);
  q.bodies = bodies;
  return q;
}

AFCheck af_check(const VectorConfiguration& cfg, const Vector& hK, const Vector& hL,
                 const std::vector<BodySpec>& bodies) {
  const int d = cfg.d();
  if (static_cast<int>(bodies.size()) != d - 2)
    throw BadConfiguration("af_check needs d - 2 bodies");
  bool ball = false;
  for (const auto& b : bodies)
    if (b.kind == BodySpec::Kind::UnitBall) ball = true;
  if (ball && d != 3) throw UnsupportedBall();
  ConcretePolytope PK = solve_polytope(cfg, hK);
  ConcretePolytope PL = solve_polytope(cfg, hL);
  auto mv = [&](const ConcretePolytope& A, const ConcretePolytope& B) -> double {
    if (ball) {
      // vol(A, B, ball) = (area(A + B) - area(A) - area(B)) / 6 for d = 3.
      double sAB = facet_volumes(minkowski_sum(A, B)).sum();
      return (sAB - facet_volumes(A).sum() - facet_volumes(B).sum()) / 6.0;
    }
    if (d == 2) return mixed_volume({A, B});
    std::vector<ConcretePolytope> args{A, B};
    for (const auto& b : bodies) args.push_back(solve_polytope(cfg, b.h));
    return mixed_volume(args);
  };
  AFCheck r;
  r.vKL = mv(PK, PL);
  r.vKK = mv(PK, PK);
  r.vLL = mv(PL, PL);
  r.gap = r.vKL * r.vKL - r.vKK * r.vLL;
  double scale = std::max({std::abs(r.vKK), std::abs(r.vLL), std::abs(r.vKL)});
  double tol = std::max(epsilon() * scale * scale, 1e-12);
  if (r.gap < -tol)
    r.verdict = AFVerdict::Violation;
  else if (r.gap <= tol)
    r.verdict = AFVerdict::Equality;
  else
    r.verdict = AFVerdict::Strict;
  return r;
}

QuadraticForm weighted_area_form(const VectorConfiguration& cfg, const GaleDiagram& G,
                                 const DomainPair& dp, const TypeCone& tc, const Vector& h0) {
  if (cfg.d() != 3) throw BadConfiguration("weighted area forms need d = 3");
  if (interior_membership(G.project(h0), dp) != Membership::IntIr) throw NotInterior();
  auto f = [&](const Vector& y) -> double {
    ConcretePolytope P = solve_polytope(cfg, G.lift(y));
    return h0.dot(facet_volumes(P));
  };
  QuadraticForm q = polarize_on_chamber(G, tc, f);
  q.bodies = {BodySpec::polytope(h0)};
  return q;
}

std::array<double, 4> tetra_face_areas(const Vector& v0, const Vector& v1, const Vector& v2,
                                       const Vector& v3, double h0scale) {
  auto det3 = [](const Vector& a, const Vector& b, const Vector& c) {
    Eigen::Matrix3d M;
    M.col(0) = a;
    M.col(1) = b;
    M.col(2) = c;
    return M.determinant();
  };
  if (v0.size() != 3) throw BadConfiguration("tetra_face_areas needs d = 3");
  std::array<const Vector*, 4> v{&v0, &v1, &v2, &v3};
  // Coefficients of the positive dependency lambda_0 v_0 + ... = 0, up to
  // sign the alternating cofactor determinants.
  std::array<double, 4> lam{det3(v1, v2, v3), -det3(v0, v2, v3), det3(v0, v1, v3),
                            -det3(v0, v1, v2)};
  double norm3 = std::max({v0.norm(), v1.norm(), v2.norm(), v3.norm()});
  double tol = epsilon() * norm3 * norm3 * norm3;
  if (lam[0] < 0)
    for (double& l : lam) l = -l;
  for (double l : lam)
    if (l <= tol) throw NotSpanning();
  double a0 = h0scale * h0scale * std::pow(v0.norm(), 3) * lam[0] * lam[0] /
              (2 * std::abs(det3(v0, v1, v2) * det3(v0, v2, v3) * det3(v0, v1, v3)));
  std::array<double, 4> area;
  for (int i = 0; i < 4; ++i) area[i] = a0 * (v[i]->norm() * lam[i]) / (v0.norm() * lam[0]);
  return area;
}

QuadraticForm area_form_from_angles(const VectorConfiguration& cfg, const GaleDiagram& G,
                                    const AbstractFan& fan) {
  if (cfg.d() != 3) throw BadConfiguration("angle form needs d = 3");
  if (!fan.simplicial) throw NotSimplicial();
  if (!fan.complete) throw BadConfiguration("fan is not complete");
  const int n = cfg.n();
  Matrix U = cfg.V;
  for (int i = 0; i < n; ++i) U.row(i).normalize();
  auto phi = [&](int a, int b) {
    Eigen::Vector3d x = U.row(a).transpose(), y = U.row(b).transpose();
    return std::atan2(x.cross(y).norm(), x.dot(y));
  };
  // Angle at i between the in-face edge normals of edges ij and ik of the
  // face F_i, i.e. between the projections of u_j, u_k onto u_i^perp.
  auto phiv = [&](int i, int j, int k) {
    Eigen::Vector3d ui = U.row(i).transpose();
    Eigen::Vector3d pj = U.row(j).transpose() - U.row(j).dot(U.row(i)) * ui;
    Eigen::Vector3d pk = U.row(k).transpose() - U.row(k).dot(U.row(i)) * ui;
    return std::atan2(pj.cross(pk).norm(), pj.dot(pk));
  };
  auto csc = [](double x) { return 1.0 / std::sin(x); };
  auto cot = [](double x) { return std::cos(x) / std::sin(x); };
  Matrix A = Matrix::Zero(n, n);
  auto walls = fan_walls(cfg, fan);
  auto extra = [](const std::vector<int>& rho, int i, int j) {
    for (int t : rho)
      if (t != i && t != j) return t;
    throw NotAWall();
  };
  // Second derivatives of the surface area: off-diagonal entries from the
  // side of face i, diagonal entries accumulated over the incident walls.
  auto off = [&](int i, int j, int k, int l) {
    return (std::tan(phi(i, k) / 2) * csc(phi(i, j)) * csc(phiv(i, j, k)) +
            std::tan(phi(i, l) / 2) * csc(phi(i, j)) * csc(phiv(i, j, l)) -
            std::tan(phi(i, j) / 2) * csc(phi(i, j)) * (cot(phiv(i, j, k)) + cot(phiv(i, j, l)))) /
           2;
  };
  for (const Wall& w : walls) {
    int i = w.sigma[0], j = w.sigma[1];
    int k = extra(w.rho1, i, j), l = extra(w.rho2, i, j);
    double aij = (off(i, j, k, l) + off(j, i, k, l)) / 2;
    A(i, j) = aij;
    A(j, i) = aij;
    A(i, i) += -std::tan(phi(i, j) / 2) * csc(phi(i, j)) * (cot(phiv(j, i, k)) + cot(phiv(j, i, l))) / 2;
    A(j, j) += -std::tan(phi(i, j) / 2) * csc(phi(i, j)) * (cot(phiv(i, j, k)) + cot(phiv(i, j, l))) / 2;
  }
  QuadraticForm q;
  q.gram_full = A / 3;  // area(h) = h^T A h and vol(P, P, B) = area / 3
  Matrix L(n, G.m());
  for (int t = 0; t < G.m(); ++t) L.col(t) = G.lift(Vector::Unit(G.m(), t));
  q.gram = L.transpose() * q.gram_full * L;
  q.fan = fan;
  q.bodies = {BodySpec::ball()};
  q.signature = symmetric_signature(q.gram);
  return q;
}

}  // namespace shapecone
