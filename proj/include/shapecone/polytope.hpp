#ifndef SHAPECONE_POLYTOPE_HPP
#define SHAPECONE_POLYTOPE_HPP

#include "shapecone/fan.hpp"

#include <map>

namespace shapecone {

struct Unbounded : std::runtime_error {
  Unbounded() : std::runtime_error("polyhedron is unbounded") {}
};
struct LowDimensional : std::runtime_error {
  LowDimensional() : std::runtime_error("polytope is not full-dimensional") {}
};
struct NotAWall : std::runtime_error {
  NotAWall() : std::runtime_error("index set is not a wall of the fan") {}
};
struct NotPolytopal : std::runtime_error {
  NotPolytopal() : std::runtime_error("fan is not polytopal") {}
};
struct TooDeep : std::runtime_error {
  TooDeep() : std::runtime_error("truncation depth cuts vertices outside the face") {}
};
struct SupportMismatch : std::runtime_error {
  SupportMismatch() : std::runtime_error("fans do not share a support") {}
};
struct NotSimple : std::runtime_error {
  NotSimple() : std::runtime_error("polytope is not simple") {}
};
struct NotAWeight : std::runtime_error {
  NotAWeight() : std::runtime_error("weights violate the closure condition") {}
};
struct NonConvex : std::runtime_error {
  NonConvex() : std::runtime_error("reconstructed support vector leaves the type cone") {}
};

// P(V,h) = { x : V x <= h } with vertex/facet incidences.
struct ConcretePolytope {
  Matrix V;        // the defining configuration (n x d)
  Vector h;        // support vector in R^n
  Matrix vertices; // one vertex per row
  std::vector<std::vector<int>> vertex_facets;  // sorted tight sets
  int dim = 0;
  bool empty = false;
  bool bounded = true;
  Matrix recession;  // rays of { V x <= 0 } when unbounded

  int n() const { return static_cast<int>(V.rows()); }
  int d() const { return static_cast<int>(V.cols()); }
};

// Edge lengths indexed by the walls sigma of a simplicial fan.
struct WeightVector {
  std::map<std::vector<int>, double> a;
};

ConcretePolytope solve_polytope(const VectorConfiguration& cfg, const Vector& h);
double support_function(const ConcretePolytope& P, const Vector& v);
AbstractFan normal_fan(const VectorConfiguration& cfg, const ConcretePolytope& P);

// The linear edge-length functional of a wall, as a coefficient vector on
// R^n (it annihilates im V, so it descends to quotient coordinates).
Vector edge_length_functional(const VectorConfiguration& cfg, const AbstractFan& fan,
                              const std::vector<int>& sigma);
// Same functional pushed to quotient coordinates via Vbar w = c.
Vector quotient_functional(const GaleDiagram& G, const Vector& c);

TypeCone type_cone_inequalities(const VectorConfiguration& cfg, const GaleDiagram& G,
                                const AbstractFan& fan);
// Refinement equations for a non-simplicial fan, in quotient coordinates
// (empty for simplicial fans); also used by type_cone_inequalities.
std::vector<Vector> span_equations(const VectorConfiguration& cfg, const GaleDiagram& G,
                                   const AbstractFan& fan);

ConcretePolytope truncate_face(const VectorConfiguration& cfg, const ConcretePolytope& P,
                               const std::vector<int>& sigma, double depth);
AbstractFan minkowski_refinement(const VectorConfiguration& cfg, const AbstractFan& fan1,
                                 const AbstractFan& fan2);
WeightVector edge_weights(const VectorConfiguration& cfg, const ConcretePolytope& P);
ConcretePolytope christoffel_reconstruct(const VectorConfiguration& cfg,
                                         const AbstractFan& fan, const WeightVector& a);
double volume(const ConcretePolytope& P);
// Facet areas ((d-1)-volumes), zero for absent facets.
Vector facet_volumes(const ConcretePolytope& P);

}  // namespace shapecone

#endif
