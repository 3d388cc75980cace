#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shapecone/builtins.hpp"
#include "shapecone/domains.hpp"

#include <random>
#include <set>

using namespace shapecone;

namespace {

Vector random_unit(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = g(rng);
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

// Every ray/lineality generator must satisfy the H-description and the
// inequalities must be tight on enough rays to cut facets.
void check_cross_representation(const PolyCone& c) {
  for (int r = 0; r < c.rays.rows(); ++r) {
    CHECK(c.contains(c.rays.row(r).transpose(), -1e-9));
    if (c.eqs.rows() > 0) CHECK((c.eqs * c.rays.row(r).transpose()).norm() < 1e-9);
  }
  for (int l = 0; l < c.lineality.rows(); ++l) {
    Vector v = c.lineality.row(l).transpose();
    if (c.ineqs.rows() > 0) CHECK((c.ineqs * v).cwiseAbs().maxCoeff() < 1e-9);
    if (c.eqs.rows() > 0) CHECK((c.eqs * v).norm() < 1e-9);
  }
}

}  // namespace

TEST_CASE("octant round trip") {
  PolyCone c = PolyCone::from_inequalities(Matrix::Identity(3, 3), Matrix(0, 3));
  CHECK(c.dim() == 3);
  CHECK(c.pointed());
  CHECK(c.rays.rows() == 3);
  PolyCone d = PolyCone::from_rays(c.rays);
  CHECK(d.ineqs.rows() == 3);
  check_cross_representation(c);
  check_cross_representation(d);
}

TEST_CASE("halfspace and subspace cones") {
  Matrix a(1, 3);
  a << 0, 0, 1;
  PolyCone half = PolyCone::from_inequalities(a, Matrix(0, 3));
  CHECK(half.dim() == 3);
  CHECK(half.lineality.rows() == 2);
  CHECK(!half.pointed());

  PolyCone plane = PolyCone::from_inequalities(Matrix(0, 3), a);
  CHECK(plane.dim() == 2);
  CHECK(plane.lineality.rows() == 2);
  CHECK(plane.rays.rows() == 0);
}

TEST_CASE("double description on random systems") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int dim = 2 + static_cast<int>(rng() % 3);
    int m = 2 + static_cast<int>(rng() % 5);
    Matrix A(m, dim);
    for (int i = 0; i < m; ++i) A.row(i) = random_unit(rng, dim).transpose();
    PolyCone c = PolyCone::from_inequalities(A, Matrix(0, dim));
    check_cross_representation(c);
    // V-rep regenerates the same cone: containment both ways on samples
    PolyCone back = c.rays.rows() + c.lineality.rows() > 0
                        ? PolyCone::from_rays((Matrix(c.rays.rows() + 2 * c.lineality.rows(), dim)
                                                   << c.rays,
                                               c.lineality, -c.lineality)
                                                  .finished())
                        : c;
    for (int s = 0; s < 20; ++s) {
      Vector x = random_unit(rng, dim);
      bool in_h = (A * x).minCoeff() >= -1e-9;
      if (in_h != c.contains(x, -1e-9)) continue;  // boundary jitter
      CHECK(c.contains(x, -1e-9) == back.contains(x, -1e-9));
    }
  }
}

TEST_CASE("relint membership") {
  PolyCone c = PolyCone::from_inequalities(Matrix::Identity(2, 2), Matrix(0, 2));
  Vector x(2);
  x << 1, 1;
  CHECK(c.relint_contains(x));
  x << 1, 0;
  CHECK(c.contains(x));
  CHECK(!c.relint_contains(x));
  CHECK(c.relint_contains(c.relint_point()));
}

TEST_CASE("parallelepiped domains coincide") {
  auto cfg = builtins::parallelepiped();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  PolyCone co = compatibility_domain(cfg, G, cs);
  DomainPair dp = irredundancy_domain(cfg, G, cs);
  CHECK(co.dim() == 3);
  CHECK(dp.clir.dim() == 3);
  // monotypic: every dual vector is doubled, so co = clir
  std::mt19937 rng(3);
  for (int s = 0; s < 200; ++s) {
    Vector y = random_unit(rng, 3);
    CHECK(co.contains(y, -1e-9) == dp.clir.contains(y, -1e-9));
  }
}

TEST_CASE("bipyramid domains") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  PolyCone co = compatibility_domain(cfg, G, cs);
  DomainPair dp = irredundancy_domain(cfg, G, cs);

  CHECK(co.dim() == 3);
  CHECK(co.ineqs.rows() == 6);
  CHECK(dp.clir.dim() == 3);
  CHECK(dp.clir.pointed());
  CHECK(dp.clir.ineqs.rows() == 6);
  REQUIRE(dp.facet_circuits.size() == 6);
  for (const auto& [facet, c] : dp.facet_circuits)
    CHECK(c.kind == CircuitKind::Hyperbolic);
  check_cross_representation(co);
  check_cross_representation(dp.clir);

  // clir is the 2-core of the dual vectors
  PolyCone core = k_core(G.Vbar, 2);
  std::mt19937 rng(5);
  for (int s = 0; s < 1000; ++s) {
    Vector y = random_unit(rng, 3);
    CHECK(dp.clir.contains(y, -1e-9) == core.contains(y, -1e-9));
  }

  // every co facet comes from a positive circuit functional
  int matched = 0;
  for (int f = 0; f < co.ineqs.rows(); ++f) {
    for (const auto& c : cs) {
      if (c.kind != CircuitKind::Positive) continue;
      Vector w = c.mu / c.mu.norm();
      Vector a = co.ineqs.row(f).transpose().normalized();
      if ((w - a).norm() < 1e-7 || (w + a).norm() < 1e-7) {
        ++matched;
        break;
      }
    }
  }
  CHECK(matched == 6);
}

TEST_CASE("membership classification") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  DomainPair dp = irredundancy_domain(cfg, G, cs);

  Vector center = G.project(Vector::Ones(6));
  CHECK(interior_membership(center, dp) == Membership::IntIr);
  CHECK(interior_membership(-center, dp) == Membership::Outside);
  Vector edge = dp.clir.rays.row(0).transpose();
  auto m = interior_membership(edge, dp);
  CHECK((m == Membership::BoundaryIr || m == Membership::BoundaryCo));
}

TEST_CASE("bipyramid chambers form a 6-cycle") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  ChamberComplex cc = enumerate_type_cones(cfg, G, cs);
  REQUIRE(cc.chambers.size() == 6);
  CHECK(cc.flips.size() == 6);
  std::vector<int> deg(6, 0);
  for (auto [a, b] : cc.flips) {
    ++deg[static_cast<size_t>(a)];
    ++deg[static_cast<size_t>(b)];
  }
  for (int d : deg) CHECK(d == 2);
  // connected 2-regular graph on 6 nodes = 6-cycle
  std::set<int> seen{0};
  for (int step = 0; step < 6; ++step)
    for (auto [a, b] : cc.flips) {
      if (seen.count(a)) seen.insert(b);
      if (seen.count(b)) seen.insert(a);
    }
  CHECK(seen.size() == 6);
  for (const auto& tc : cc.chambers) {
    CHECK(tc.fan.simplicial);
    CHECK(tc.fan.complete);
    CHECK(tc.fan.maximal.size() == 8);
  }
}

TEST_CASE("single-chamber configurations") {
  for (const char* name : {"parallelepiped", "prism"}) {
    auto cfg = builtins::by_name(name);
    GaleDiagram G = gale_dual(cfg);
    auto cs = enumerate_circuits(cfg, G);
    ChamberComplex cc = enumerate_type_cones(cfg, G, cs);
    CHECK(cc.chambers.size() == 1);
    CHECK(cc.flips.empty());
  }
}

TEST_CASE("arrangement slicing validates the flip search") {
  for (const char* name : {"parallelepiped", "bipyramid"}) {
    auto cfg = builtins::by_name(name);
    GaleDiagram G = gale_dual(cfg);
    auto cs = enumerate_circuits(cfg, G);
    ChamberComplex bfs = enumerate_type_cones(cfg, G, cs);
    std::vector<AbstractFan> arr = arrangement_chambers(cfg, G, cs);
    REQUIRE(arr.size() == bfs.chambers.size());
    std::set<std::string> a, b;
    for (const auto& f : arr) a.insert(f.hash());
    for (const auto& tc : bfs.chambers) b.insert(tc.fan.hash());
    CHECK(a == b);
  }
}

TEST_CASE("random interior points land in exactly one chamber") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  DomainPair dp = irredundancy_domain(cfg, G, cs);
  ChamberComplex cc = enumerate_type_cones(cfg, G, cs);
  SubconeCache cache{&G, {}};
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  int tested = 0;
  for (int s = 0; s < 400 && tested < 100; ++s) {
    Vector y = Vector::Zero(3);
    for (int r = 0; r < dp.clir.rays.rows(); ++r)
      y += u(rng) * dp.clir.rays.row(r).transpose();
    if (interior_membership(y, dp) != Membership::IntIr) continue;
    int hits = 0, hit = -1;
    for (size_t i = 0; i < cc.chambers.size(); ++i)
      if (cc.chambers[i].cone.relint_contains(y)) {
        ++hits;
        hit = static_cast<int>(i);
      }
    if (hits != 1) continue;  // wall hit
    AbstractFan f = chamber_of(y, cfg, cache, dp);
    CHECK(f.hash() == cc.chambers[static_cast<size_t>(hit)].fan.hash());
    ++tested;
  }
  CHECK(tested == 100);
}

TEST_CASE("wall crossing flips and boundary circuits") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  DomainPair dp = irredundancy_domain(cfg, G, cs);
  ChamberComplex cc = enumerate_type_cones(cfg, G, cs);
  int flips = 0, boundary = 0;
  const TypeCone& tc = cc.chambers[0];
  for (int f = 0; f < tc.cone.ineqs.rows(); ++f) {
    WallCrossResult r = wall_cross(cfg, G, cs, tc, f);
    if (r.flip) {
      ++flips;
      // a flip exchanges one diagonal of a quadrilateral
      REQUIRE(r.gained.size() == 1);
      REQUIRE(r.lost.size() == 1);
      CHECK(r.gained[0].size() == 2);
      CHECK(r.lost[0].size() == 2);
      CHECK(r.to.hash() != tc.fan.hash());
    } else {
      ++boundary;
      CHECK(r.circuit.kind == CircuitKind::Hyperbolic);
    }
  }
  CHECK(flips == 2);
  CHECK(boundary == 2);

  // parallelepiped: every chamber facet lies on the clir boundary
  auto pcfg = builtins::parallelepiped();
  GaleDiagram pG = gale_dual(pcfg);
  auto pcs = enumerate_circuits(pcfg, pG);
  DomainPair pdp = irredundancy_domain(pcfg, pG, pcs);
  ChamberComplex pcc = enumerate_type_cones(pcfg, pG, pcs);
  const TypeCone& ptc = pcc.chambers[0];
  for (int f = 0; f < ptc.cone.ineqs.rows(); ++f) {
    WallCrossResult r = wall_cross(pcfg, pG, pcs, ptc, f);
    CHECK(!r.flip);
    CHECK(r.circuit.kind == CircuitKind::Positive);
  }
}

TEST_CASE("checkerboard subdivisions of the bipyramid fan are not polytopal") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  SubconeCache cache{&G, {}};
  AbstractFan bad1 = fan_from_maximal(
      cfg, {{0, 1, 2}, {3, 4, 5}, {0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {0, 2, 5}, {0, 3, 5}});
  AbstractFan bad2 = fan_from_maximal(
      cfg, {{0, 1, 2}, {3, 4, 5}, {0, 1, 4}, {0, 3, 4}, {1, 2, 5}, {1, 4, 5}, {0, 2, 3}, {2, 3, 5}});
  CHECK(!is_polytopal(bad1, cache));
  CHECK(!is_polytopal(bad2, cache));

  // while each chamber fan is
  auto cs = enumerate_circuits(cfg, G);
  for (const auto& tc : enumerate_type_cones(cfg, G, cs).chambers)
    CHECK(is_polytopal(tc.fan, cache));
}
