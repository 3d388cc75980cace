#ifndef SHAPECONE_HYPERBOLIC_HPP
#define SHAPECONE_HYPERBOLIC_HPP

#include "shapecone/forms.hpp"

#include <map>

namespace shapecone {

struct WrongSignature : std::runtime_error {
  WrongSignature() : std::runtime_error("form does not have hyperbolic signature on the cone") {}
};
struct NotTimelike : std::runtime_error {
  NotTimelike() : std::runtime_error("point is not inside the light cone") {}
};
struct BadAngles : std::runtime_error {
  BadAngles() : std::runtime_error("angles must lie in (0, pi) and sum to 2 pi") {}
};
struct HypothesisFail : std::runtime_error {
  explicit HypothesisFail(const std::string& what) : std::runtime_error(what) {}
};

// Quotient coordinates with a signature (+, -, ..., -) scalar product; the
// time orientation is the component of the hyperboloid containing pi(1).
struct MinkowskiSpace {
  Matrix gram;
  Vector time;

  double inner(const Vector& a, const Vector& b) const { return a.dot(gram * b); }
  double q(const Vector& a) const { return inner(a, a); }
};

MinkowskiSpace make_minkowski(const QuadraticForm& q, const GaleDiagram& G);

enum class RayClass { Finite, Ideal };
enum class PairKind { Angle, Parallel, Diverge };
struct FacetRelation {
  PairKind kind = PairKind::Angle;
  double value = 0;  // dihedral angle, or cosh of the distance for Diverge
};

// H = cl T(Delta) intersected with the unit hyperboloid: rays classified
// as Finite (normalized to q = 1) or Ideal (light-like), facet normals
// normalized to q = -1 and pointing inward, and the facet-pair table.
struct HyperbolicCell {
  MinkowskiSpace space;
  TypeCone tc;
  Matrix rays;
  std::vector<RayClass> ray_class;
  Matrix facet_normals;
  std::vector<bool> facet_spacelike;
  std::vector<std::vector<FacetRelation>> angles;
};

HyperbolicCell build_cell(const TypeCone& tc, const QuadraticForm& q, const GaleDiagram& G);

// Closed-form facet-pair table of the polygon orthoscheme with exterior
// angles alpha (n >= 5, sum 2 pi); non-neighboring facets are orthogonal.
std::vector<std::vector<FacetRelation>> orthoscheme_angles(const std::vector<double>& alpha);

double hyperbolic_distance(const MinkowskiSpace& space, const Vector& p1, const Vector& p2);

struct WallGluing {
  int cell1 = 0, facet1 = 0;
  int cell2 = 0, facet2 = 0;
  double form_mismatch = 0;  // gram difference restricted to the wall span
};
struct BoundaryFacet {
  int cell = 0, facet = 0;
};
struct InteriorStratum {
  Vector ray;  // unit direction of the codimension-2 stratum
  std::vector<std::pair<int, int>> incident;  // (cell, facet pair omitted) cells around it
  double total_angle = 0;
  bool flat = false;
};

struct ShapeComplex {
  GaleDiagram G;
  DomainPair dp;
  std::vector<Circuit> circuits;
  ChamberComplex chambers;
  std::vector<QuadraticForm> forms;
  std::vector<HyperbolicCell> cells;
  std::vector<WallGluing> gluings;
  std::map<std::vector<int>, std::vector<BoundaryFacet>> boundary_facets;  // by circuit support
  std::vector<InteriorStratum> strata;  // computed for n - d = 3
};

// Default bodies: the unit ball for d = 3, the empty list for d = 2.
ShapeComplex build_shape_complex(const VectorConfiguration& cfg);
ShapeComplex build_shape_complex(const VectorConfiguration& cfg,
                                 const std::vector<BodySpec>& bodies);

// Measured dihedral angle of M along the codimension-2 intersection of the
// boundary facets of two hyperbolic circuits, one entry per incident cell,
// with the coefficients of the orthogonal decomposition
// q = q_tilde + c1 f1^2 + c2 f2^2 for cross-checking.
struct BoundaryAngle {
  int cell = 0;
  double angle = 0;
  double c1 = 0, c2 = 0;
  double decomposition_residual = 0;
};
std::vector<BoundaryAngle> boundary_right_angle_check(const VectorConfiguration& cfg,
                                                      const ShapeComplex& M, const Circuit& C1,
                                                      const Circuit& C2);

struct ConeAngleVerdict {
  double angle = 0;
  bool flat = false;
  bool form_constant = false;      // some wall hyperplane never changes the form
  bool right_angle_present = false;  // some incident cell has angle pi/2
};
ConeAngleVerdict interior_cone_angle(const ShapeComplex& M, int stratum);

// A ray is a legitimate ideal vertex iff P(lift(y)) degenerates to a
// segment whose orthogonal complement is positively spanned by the normals
// lying in it.
bool ideal_ray_is_segment(const VectorConfiguration& cfg, const GaleDiagram& G, const Vector& y);

}  // namespace shapecone

#endif
