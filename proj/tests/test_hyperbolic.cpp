#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shapecone/builtins.hpp"
#include "shapecone/hyperbolic.hpp"

#include <random>

using namespace shapecone;

namespace {

constexpr double kPi = 3.14159265358979323846;

double polygon_area(const VectorConfiguration& cfg, const Vector& h) {
  return volume(solve_polytope(cfg, h));
}

// area of the circumscribed polygon with edge i removed: drop the i-th
// normal from the configuration and keep unit support numbers
double dropped_edge_area(const VectorConfiguration& cfg, int drop) {
  Matrix W(cfg.n() - 1, cfg.d());
  int r = 0;
  for (int i = 0; i < cfg.n(); ++i)
    if (i != drop) W.row(r++) = cfg.V.row(i);
  auto sub = VectorConfiguration::make(W);
  return polygon_area(sub, Vector::Ones(W.rows()));
}

}  // namespace

TEST_CASE("make_minkowski wants a hyperbolic form") {
  auto cfg = builtins::parallelepiped();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  ChamberComplex cc = enumerate_type_cones(cfg, G, cs);
  QuadraticForm q = q_form(cfg, G, cc.chambers[0], {BodySpec::ball()});
  MinkowskiSpace space = make_minkowski(q, G);
  CHECK(space.q(space.time) == doctest::Approx(1.0).epsilon(1e-9));

  QuadraticForm bad = q;
  bad.gram = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(make_minkowski(bad, G), WrongSignature);
}

TEST_CASE("parallelepiped cell is an ideal triangle") {
  auto cfg = builtins::parallelepiped();
  ShapeComplex M = build_shape_complex(cfg);
  REQUIRE(M.cells.size() == 1);
  const HyperbolicCell& cell = M.cells[0];
  REQUIRE(cell.rays.rows() == 3);
  for (auto k : cell.ray_class) CHECK(k == RayClass::Ideal);
  for (int r = 0; r < 3; ++r) {
    Vector y = cell.rays.row(r).transpose();
    CHECK(std::abs(cell.space.q(y)) <= 1e-9 * y.squaredNorm());
    CHECK(ideal_ray_is_segment(cfg, M.G, y));
  }
  // the circumscribed direction is not an ideal vertex
  CHECK(!ideal_ray_is_segment(cfg, M.G, M.G.project(Vector::Ones(6))));
  // no interior gluings: a single cell
  CHECK(M.gluings.empty());
}

TEST_CASE("regular pentagon cell is the right-angled pentagon") {
  auto cfg = builtins::regular_ngon(5);
  ShapeComplex M = build_shape_complex(cfg);
  REQUIRE(M.cells.size() == 1);
  const HyperbolicCell& cell = M.cells[0];
  REQUIRE(cell.facet_normals.rows() == 5);
  int right = 0, diverging = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) {
      const FacetRelation& r = cell.angles[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (r.kind == PairKind::Angle) {
        CHECK(r.value == doctest::Approx(kPi / 2).epsilon(1e-6));
        ++right;
      } else {
        CHECK(r.kind == PairKind::Diverge);
        // golden ratio: cosh of the distance between non-meeting sides
        CHECK(r.value == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-6));
        ++diverging;
      }
    }
  CHECK(right == 5);
  CHECK(diverging == 5);

  // distance from the circumscribed point to the facets: eq. for cosh
  double a1 = polygon_area(cfg, Vector::Ones(5));
  for (int f = 0; f < cell.facet_normals.rows(); ++f) {
    Vector n = cell.facet_normals.row(f).transpose();
    double sinh_d = std::abs(cell.space.inner(cell.space.time, n));
    double cosh_d = std::sqrt(1 + sinh_d * sinh_d);
    // facet f of the cell corresponds to a vanishing edge; identify it by
    // scanning which edge drop reproduces the distance (by symmetry all
    // five drops coincide here, but keep the scan for clarity)
    bool matched = false;
    for (int i = 0; i < 5 && !matched; ++i) {
      double target = std::sqrt(dropped_edge_area(cfg, i) / a1);
      matched = std::abs(cosh_d - target) < 1e-8;
    }
    CHECK(matched);
  }
}

TEST_CASE("orthoscheme table against the cell for random polygon angles") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.8, 1.2);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 5 + static_cast<int>(rng() % 2);
    std::vector<double> alpha(static_cast<size_t>(n));
    double sum = 0;
    for (auto& a : alpha) sum += (a = u(rng));
    for (auto& a : alpha) a *= 2 * kPi / sum;
    auto cfg = builtins::ngon(alpha);
    ShapeComplex M = build_shape_complex(cfg);
    REQUIRE(M.cells.size() == 1);
    const HyperbolicCell& cell = M.cells[0];
    auto table = orthoscheme_angles(alpha);
    // both tables are indexed by vanishing edges, but the cell's facet order
    // comes from the cone's H-description; match by sorted angle multisets
    std::vector<double> cell_vals, ref_vals;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const auto& r = cell.angles[static_cast<size_t>(a)][static_cast<size_t>(b)];
        cell_vals.push_back(r.kind == PairKind::Angle ? std::cos(r.value) : r.value);
        const auto& s = table[static_cast<size_t>(a)][static_cast<size_t>(b)];
        ref_vals.push_back(s.kind == PairKind::Angle ? std::cos(s.value) : s.value);
      }
    auto key = [](double x) { return std::abs(x); };
    std::sort(cell_vals.begin(), cell_vals.end(),
              [&](double x, double y) { return key(x) < key(y); });
    std::sort(ref_vals.begin(), ref_vals.end(),
              [&](double x, double y) { return key(x) < key(y); });
    REQUIRE(cell_vals.size() == ref_vals.size());
    for (size_t i = 0; i < cell_vals.size(); ++i)
      CHECK(key(cell_vals[i]) == doctest::Approx(key(ref_vals[i])).epsilon(1e-8));
  }
  CHECK_THROWS_AS(orthoscheme_angles({1.0, 1.0, 1.0, 1.0}), BadAngles);
  CHECK_THROWS_AS(orthoscheme_angles({2.0, 2.0, 2.0, 2.0, 2.0}), BadAngles);
}

TEST_CASE("prism cell is a pyramid with the stated base angles") {
  auto cfg = builtins::prism(std::vector<double>(5, 2 * kPi / 5));
  ShapeComplex M = build_shape_complex(cfg);
  REQUIRE(M.cells.size() == 1);
  const HyperbolicCell& cell = M.cells[0];

  // exactly one ideal ray: the apex (prisms degenerating to a segment)
  int ideal = 0, apex = -1;
  for (int r = 0; r < cell.rays.rows(); ++r)
    if (cell.ray_class[static_cast<size_t>(r)] == RayClass::Ideal) {
      ++ideal;
      apex = r;
    }
  REQUIRE(ideal == 1);
  CHECK(cell.rays.rows() == 6);
  REQUIRE(cell.facet_normals.rows() == 6);

  // base facet: the one the apex ray is not tight on
  const PolyCone& cone = M.chambers.chambers[0].cone;
  Vector apex_ray = cell.tc.rays.row(apex).transpose();
  int base = -1;
  for (int f = 0; f < cone.ineqs.rows(); ++f)
    if (std::abs(cone.ineqs.row(f).dot(apex_ray)) > 1e-6 * apex_ray.norm()) {
      CHECK(base == -1);
      base = f;
    }
  REQUIRE(base >= 0);

  // 2D polygon areas with one edge dropped
  auto pcfg = builtins::regular_ngon(5);
  double a1 = polygon_area(pcfg, Vector::Ones(5));
  double target = std::sqrt(a1 / dropped_edge_area(pcfg, 0));
  for (int f = 0; f < 6; ++f) {
    if (f == base) continue;
    const auto& r = cell.angles[static_cast<size_t>(std::min(f, base))]
                               [static_cast<size_t>(std::max(f, base))];
    REQUIRE(r.kind == PairKind::Angle);
    CHECK(std::sin(r.value) == doctest::Approx(target).epsilon(1e-8));
  }
}

TEST_CASE("bipyramid complex is a right-angled hexagon") {
  auto cfg = builtins::bipyramid();
  ShapeComplex M = build_shape_complex(cfg);
  REQUIRE(M.cells.size() == 6);
  REQUIRE(M.gluings.size() == 6);
  for (const auto& g : M.gluings) CHECK(g.form_mismatch <= 1e-9);

  // boundary circuits pair into 6 groups of facets
  CHECK(M.boundary_facets.size() == 6);

  // all boundary vertices are right angles with non-positive coefficients
  std::vector<Circuit> hyp;
  for (const auto& c : M.circuits)
    if (c.kind == CircuitKind::Hyperbolic) hyp.push_back(c);
  int measured = 0;
  for (size_t i = 0; i < hyp.size(); ++i)
    for (size_t j = i + 1; j < hyp.size(); ++j) {
      std::vector<BoundaryAngle> angles;
      try {
        angles = boundary_right_angle_check(cfg, M, hyp[i], hyp[j]);
      } catch (const HypothesisFail&) {
        continue;
      }
      for (const auto& a : angles) {
        CHECK(a.angle == doctest::Approx(kPi / 2).epsilon(1e-6));
        CHECK(a.c1 <= 1e-9);
        CHECK(a.c2 <= 1e-9);
        CHECK(a.decomposition_residual <= 1e-7);
        ++measured;
      }
    }
  CHECK(measured >= 6);

  // the center is the single interior stratum, flat, with constant form
  REQUIRE(M.strata.size() == 1);
  ConeAngleVerdict v = interior_cone_angle(M, 0);
  CHECK(v.angle == doctest::Approx(2 * kPi).epsilon(1e-6));
  CHECK(v.flat);
  CHECK(v.form_constant);
}

TEST_CASE("bipyramid symmetries preserve the form") {
  auto cfg = builtins::bipyramid();
  GaleDiagram G = gale_dual(cfg);
  auto cs = enumerate_circuits(cfg, G);
  ChamberComplex cc = enumerate_type_cones(cfg, G, cs);
  QuadraticForm q = q_form(cfg, G, cc.chambers[0], {BodySpec::ball()});
  // swapping u2 <-> u3 on both levels and swapping the two levels are
  // isometries of the configuration
  auto permute = [&](const std::vector<int>& p) {
    Matrix P = Matrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) P(p[static_cast<size_t>(i)], i) = 1;
    return P;
  };
  double scale = q.gram_full.cwiseAbs().maxCoeff();
  for (const auto& p :
       {std::vector<int>{0, 2, 1, 3, 5, 4}, std::vector<int>{3, 4, 5, 0, 1, 2}}) {
    Matrix P = permute(p);
    // all six chamber forms coincide, so conjugation fixes gram_full
    CHECK((P.transpose() * q.gram_full * P - q.gram_full).cwiseAbs().maxCoeff() < 1e-6 * scale);
  }
}

TEST_CASE("perturbed bipyramid develops a cone point") {
  // seed fixed to a generic draw: some seeds land close to a symmetric
  // configuration where the defect stays below the detection threshold
  auto cfg = builtins::perturbed_bipyramid(2, 0.05);
  ShapeComplex M = build_shape_complex(cfg);
  REQUIRE(!M.strata.empty());
  bool nonflat = false;
  for (size_t s = 0; s < M.strata.size(); ++s) {
    ConeAngleVerdict v = interior_cone_angle(M, static_cast<int>(s));
    if (std::abs(v.angle - 2 * kPi) > 1e-3) nonflat = true;
  }
  CHECK(nonflat);
  // gluings still match along walls
  for (const auto& g : M.gluings) CHECK(g.form_mismatch <= 1e-9);
}

TEST_CASE("hyperbolic distance basics") {
  auto cfg = builtins::bipyramid();
  ShapeComplex M = build_shape_complex(cfg);
  const MinkowskiSpace& sp = M.cells[0].space;
  Vector t = sp.time;
  CHECK(hyperbolic_distance(sp, t, t) == doctest::Approx(0.0));
  // pick another timelike point from a finite cell ray; the cell may have
  // the reference direction itself among its rays (distance zero), so
  // insist on at least one ray at positive distance
  int positive = 0;
  for (int r = 0; r < M.cells[0].rays.rows(); ++r) {
    if (M.cells[0].ray_class[static_cast<size_t>(r)] != RayClass::Finite) continue;
    Vector y = M.cells[0].rays.row(r).transpose();
    double d1 = hyperbolic_distance(sp, t, y);
    CHECK(d1 >= 0);
    if (d1 < 1e-9) continue;
    ++positive;
    Vector mid = (t + y) / 2;
    mid /= std::sqrt(sp.q(mid));
    CHECK(hyperbolic_distance(sp, t, mid) + hyperbolic_distance(sp, mid, y) ==
          doctest::Approx(d1).epsilon(1e-9));
  }
  CHECK(positive >= 1);
  Vector space_like = t;
  CHECK_THROWS_AS(hyperbolic_distance(sp, t, Vector(0.0 * space_like)), NotTimelike);
}
